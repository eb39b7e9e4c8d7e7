#ifndef MAXDEG_WALKER_HPP
#define MAXDEG_WALKER_HPP

#include <cstdint>
#include <vector>

#include "maxdeg/chain.hpp"
#include "maxdeg/degree_stats.hpp"
#include "maxdeg/graph.hpp"

namespace maxdeg {

enum class InitialMode { UniformTransient, Custom };

struct WalkConfig {
    double beta = 0.0;                // bias exponent, >= 0
    std::uint64_t seed = 0;           // master seed; trial i derives from (seed, i)
    std::uint64_t trials = 500;
    std::uint64_t step_cap = 10'000'000;
    InitialMode initial = InitialMode::UniformTransient;
    std::vector<double> custom_initial;  // over all nodes, used when Custom
};

struct TrialSummary {
    std::uint64_t count = 0;
    double mean = 0.0;
    double stddev = 0.0;
    double stderr_mean = 0.0;  // stddev / sqrt(count)
};

TrialSummary summarize(const std::vector<std::uint64_t>& times);

struct BrwResult {
    TrialSummary summary;
    std::vector<std::uint64_t> times;        // per completed trial
    std::vector<int> start_nodes;
    std::vector<std::uint64_t> first_observed;  // step when a max-degree node first
                                                // entered the closed neighborhood
    std::uint64_t capped_trials = 0;         // hit the step cap; excluded from summary
};

/// Transition distribution out of u: probability of neighbor v proportional
/// to d(v)^beta. Computed with a log-shift so large beta cannot overflow.
std::vector<double> walk_transition_row(const Graph& g, int u, double beta);

/// The n-state absorbing chain of the walk; absorbing states are exactly the
/// max-degree nodes. Requires a connected graph.
AbsorbingChain build_full_chain(const Graph& g, double beta);

BrwResult simulate_brw(const Graph& g, const WalkConfig& cfg);

enum class SamplingMode { NoReplacement, NoReplacementNeighbors };

struct SamplingConfig {
    SamplingMode mode = SamplingMode::NoReplacement;
    std::uint64_t seed = 0;
    std::uint64_t trials = 500;
    // NoReplacementNeighbors: observed neighbors also leave the pool unless
    // this flag is cleared (then only the drawn node is removed).
    bool remove_neighbors = true;
};

struct SamplingResult {
    TrialSummary summary;
    std::vector<std::uint64_t> times;
};

/// Random-sampling baselines: draw nodes uniformly without replacement until
/// a max-degree node is seen. NoReplacement succeeds only when the drawn node
/// itself has max degree; NoReplacementNeighbors also checks its neighbors.
SamplingResult simulate_sampling(const Graph& g, const SamplingConfig& cfg);

std::string trials_csv(const BrwResult& r);
std::string summary_json(double beta, const BrwResult& r);

}  // namespace maxdeg

#endif
