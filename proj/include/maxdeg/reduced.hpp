#ifndef MAXDEG_REDUCED_HPP
#define MAXDEG_REDUCED_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "maxdeg/chain.hpp"
#include "maxdeg/degree_stats.hpp"
#include "maxdeg/graph.hpp"

namespace maxdeg {

enum class DegreeMatrixKind { Averaged, Approximate };

/// delta x delta row-stochastic matrix over the sorted degree set.
struct DegreeTransitionMatrix {
    std::vector<int> degrees;
    Matrix rows;
    DegreeMatrixKind kind = DegreeMatrixKind::Averaged;
    double beta = 0.0;
};

/// Degree-biased next-degree distribution from a neighborhood count vector:
/// p_l proportional to n_l * l^beta. `counts[i]` pairs with `degrees[i]`.
std::vector<double> biased_degree_distribution(const std::vector<int>& counts,
                                               const std::vector<int>& degrees, double beta);

/// Entry (k,l) = mean over degree-k nodes of their per-node biased
/// next-degree probability of landing on degree l.
DegreeTransitionMatrix averaged_matrix(const Graph& g, const DegreeProfile& dp, double beta);

/// Number of nonnegative integer vectors over `parts` slots summing to k.
/// Returns -1 on overflow.
long long composition_count(int k, int parts);

/// Visits every composition of k over `parts` slots (stars and bars).
/// The callback receives the current count vector; it must not retain it.
void for_each_composition(int k, int parts, const std::function<void(const std::vector<int>&)>& fn);

struct ApproxOptions {
    // cap on the total number of enumerated compositions across all rows
    long long term_budget = 100'000'000;
};

/// Expectation of the biased next-degree distribution under a multinomial
/// neighborhood N ~ mult(k, Jt(k,.)), enumerated exactly over the support of
/// each row. Throws when the enumeration exceeds the term budget.
DegreeTransitionMatrix approximate_matrix(const ConditionalDegreeMatrix& jt, double beta,
                                          const DegreeProfile& dp,
                                          const ApproxOptions& opt = {});

/// Total enumeration size for a graph's conditional matrix; -1 on overflow.
long long approximate_term_count(const ConditionalDegreeMatrix& jt);

/// delta-state chain with the single absorbing state d_max.
AbsorbingChain build_reduced_chain(const DegreeTransitionMatrix& p, const DegreeProfile& dp);

struct ModelResult {
    double mean = 0.0;
    double stddev = 0.0;
    bool no_transient = false;  // all nodes share d_max; T = 0 by convention
    long long term_count = 0;
};

/// End-to-end analytic absorption time of the reduced chain, aggregated under
/// the degree distribution restricted to transient degrees.
ModelResult model_absorption(const Graph& g, double beta, const ApproxOptions& opt = {});

std::string model_json(double beta, const ModelResult& r);
std::string degree_matrix_csv(const DegreeTransitionMatrix& m);

}  // namespace maxdeg

#endif
