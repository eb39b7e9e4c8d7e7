#ifndef MAXDEG_REWIRE_HPP
#define MAXDEG_REWIRE_HPP

#include <cstdint>
#include <optional>

#include "maxdeg/graph.hpp"

namespace maxdeg {

struct RewireConfig {
    double target_alpha = 0.0;       // in [-1, 1]
    double eps = 0.01;               // stop when |alpha - target| <= eps
    std::uint64_t max_proposals = 5'000'000;
    std::uint64_t seed = 0;
    bool reconnect = false;          // run reconnect_components afterwards
    // evaluate both reconnections of a proposed edge pair and take the one
    // closest to target; false tries a single random reconnection instead
    bool try_both_candidates = true;
};

struct RewireResult {
    Graph graph;
    double achieved_alpha = 0.0;        // before any reconnection
    std::optional<double> alpha_post_connect;  // set when reconnect ran
    std::uint64_t proposals = 0;
    bool converged = false;
};

/// Degree-preserving 2-edge swaps accepted only when they move the
/// assortativity strictly closer to the target. Budget exhaustion returns the
/// best-so-far graph with converged = false.
RewireResult rewire_to_target(const Graph& g, const RewireConfig& cfg);

/// Wires every non-giant component to the giant component with one random
/// bridge edge each; output is connected.
Graph reconnect_components(const Graph& g, std::uint64_t seed);

/// Running-sum assortativity over edge endpoint degrees, updatable in O(1)
/// per 2-edge degree-preserving swap.
class AssortativityState {
public:
    explicit AssortativityState(const Graph& g);

    std::optional<double> alpha() const;

    // change in the cross-moment if edges {a,b},{c,d} become {a,c},{b,d}
    long long swap_delta(int da, int db, int dc, int dd) const {
        return static_cast<long long>(da) * dc + static_cast<long long>(db) * dd -
               static_cast<long long>(da) * db - static_cast<long long>(dc) * dd;
    }

    std::optional<double> alpha_after(long long delta) const;
    void apply(long long delta) { sxy_ += 2 * delta; }

private:
    long long sx_ = 0, sxx_ = 0, sxy_ = 0;
    long long m2_ = 0;  // 2m orientation pairs
};

}  // namespace maxdeg

#endif
