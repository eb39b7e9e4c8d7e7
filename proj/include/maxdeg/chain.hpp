#ifndef MAXDEG_CHAIN_HPP
#define MAXDEG_CHAIN_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "maxdeg/linalg.hpp"
#include "maxdeg/rng.hpp"

namespace maxdeg {

/// Absorbing DTMC split into its transient-to-transient block Q and
/// transient-to-absorbing block R, with the state ordering retained.
struct AbsorbingChain {
    std::vector<std::string> labels;       // all states, original order
    std::vector<int> transient_states;     // indices into labels
    std::vector<int> absorbing_states;
    Matrix q;                              // n_t x n_t
    Matrix r;                              // n_t x n_a

    std::size_t num_transient() const { return transient_states.size(); }
    std::size_t num_absorbing() const { return absorbing_states.size(); }
};

struct AbsorptionStats {
    std::vector<double> mean;      // per transient state, in steps
    std::vector<double> variance;  // steps^2
};

/// How the per-state variance is computed. `Standard` is the Kemeny-Snell
/// elementwise form (2N - I)mu - mu.^2. `InnerProduct` subtracts the scalar
/// mu'mu from every state instead; it does not agree with simulation and
/// exists only as a side-by-side diagnostic.
enum class VarianceFormula { Standard, InnerProduct };

/// Same split for aggregation under an initial distribution: `Standard` is
/// the law of total variance; `WithinOnly` drops the between-state term.
enum class AggregateFormula { Standard, WithinOnly };

AbsorbingChain partition_chain(const std::vector<std::string>& labels, const Matrix& p,
                               const std::function<bool(int)>& is_absorbing);

AbsorptionStats absorption_stats(const AbsorbingChain& c,
                                 VarianceFormula vf = VarianceFormula::Standard);

struct AggregateResult {
    double mean;
    double variance;
    double stddev;
};

AggregateResult aggregate(const AbsorptionStats& stats, const std::vector<double>& initial,
                          AggregateFormula af = AggregateFormula::Standard);

/// Monte Carlo oracle: walks the chain from `start` (an index into
/// transient_states) until absorption, inverse-CDF sampling each row.
std::uint64_t simulate_chain(const AbsorbingChain& c, int start, Rng& rng,
                             std::uint64_t step_cap = 10'000'000);

/// Precomputed cumulative rows for repeated chain simulation. Row layout per
/// transient state: absorbing targets first, then transient targets.
class ChainSampler {
public:
    explicit ChainSampler(const AbsorbingChain& c);
    // steps to absorption from transient index `start`; throws past step_cap
    std::uint64_t run(int start, Rng& rng, std::uint64_t step_cap = 10'000'000) const;

private:
    std::size_t num_absorbing_;
    std::vector<std::vector<double>> cumulative_;  // per transient state
};

/// Full transition-matrix CSV with state labels.
std::string chain_csv(const AbsorbingChain& c);

/// CSV of (state, mu, var) rows.
std::string stats_csv(const AbsorbingChain& c, const AbsorptionStats& s);

}  // namespace maxdeg

#endif
