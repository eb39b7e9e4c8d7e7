#include "maxdeg/rewire.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "maxdeg/degree_stats.hpp"
#include "maxdeg/generators.hpp"
#include "maxdeg/rng.hpp"

namespace maxdeg {

namespace {
std::uint64_t edge_key(int u, int v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
}
}  // namespace

AssortativityState::AssortativityState(const Graph& g) {
    for (const auto& [u, v] : g.edges()) {
        long long du = g.degree(u), dv = g.degree(v);
        sx_ += du + dv;
        sxx_ += du * du + dv * dv;
        sxy_ += 2 * du * dv;
    }
    m2_ = 2 * static_cast<long long>(g.num_edges());
}

std::optional<double> AssortativityState::alpha() const { return alpha_after(0); }

std::optional<double> AssortativityState::alpha_after(long long delta) const {
    if (m2_ == 0) return std::nullopt;
    double m2 = static_cast<double>(m2_);
    double mean = static_cast<double>(sx_) / m2;
    double var = static_cast<double>(sxx_) / m2 - mean * mean;
    double cov = static_cast<double>(sxy_ + 2 * delta) / m2 - mean * mean;
    if (var <= 1e-12 * static_cast<double>(sxx_)) return std::nullopt;
    return cov / var;
}

RewireResult rewire_to_target(const Graph& g, const RewireConfig& cfg) {
    if (std::abs(cfg.target_alpha) > 1.0)
        throw std::invalid_argument("rewire_to_target: target outside [-1,1]");
    if (!(cfg.eps > 0.0)) throw std::invalid_argument("rewire_to_target: eps must be > 0");
    if (g.num_edges() < 2) throw std::invalid_argument("rewire_to_target: need at least 2 edges");

    AssortativityState state(g);
    if (!state.alpha())
        throw std::invalid_argument("rewire_to_target: assortativity undefined for input");

    std::vector<std::pair<int, int>> edges = g.edges();
    std::vector<int> degree(g.num_nodes());
    for (std::size_t v = 0; v < g.num_nodes(); ++v) degree[v] = g.degree(static_cast<int>(v));
    std::unordered_set<std::uint64_t> present;
    present.reserve(edges.size() * 2);
    for (const auto& [u, v] : edges) present.insert(edge_key(u, v));

    Rng rng(child_seed(cfg.seed, 0));
    double dist = std::abs(*state.alpha() - cfg.target_alpha);
    std::uint64_t proposals = 0;
    while (dist > cfg.eps && proposals < cfg.max_proposals) {
        ++proposals;
        std::size_t i = rng.uniform_int(edges.size());
        std::size_t j = rng.uniform_int(edges.size());
        if (i == j) continue;
        auto [a, b] = edges[i];
        auto [c, d] = edges[j];
        if (a == c || a == d || b == c || b == d) continue;

        struct Candidate {
            int e1u, e1v, e2u, e2v;
            long long delta;
        };
        // candidate A: {a,c},{b,d}; candidate B: {a,d},{b,c}
        Candidate cands[2] = {
            {a, c, b, d, state.swap_delta(degree[a], degree[b], degree[c], degree[d])},
            {a, d, b, c, state.swap_delta(degree[a], degree[b], degree[d], degree[c])},
        };
        int n_cands = cfg.try_both_candidates ? 2 : 1;
        int pick = cfg.try_both_candidates ? 0 : static_cast<int>(rng.uniform_int(2));

        int best = -1;
        double best_dist = dist;
        for (int ci = 0; ci < n_cands; ++ci) {
            const Candidate& cand = cands[cfg.try_both_candidates ? ci : pick];
            if (present.count(edge_key(cand.e1u, cand.e1v)) ||
                present.count(edge_key(cand.e2u, cand.e2v)))
                continue;
            auto na = state.alpha_after(cand.delta);
            if (!na) continue;
            double nd = std::abs(*na - cfg.target_alpha);
            if (nd < best_dist) {  // strict improvement only
                best_dist = nd;
                best = cfg.try_both_candidates ? ci : pick;
            }
        }
        if (best < 0) continue;
        const Candidate& cand = cands[best];
        present.erase(edge_key(a, b));
        present.erase(edge_key(c, d));
        present.insert(edge_key(cand.e1u, cand.e1v));
        present.insert(edge_key(cand.e2u, cand.e2v));
        edges[i] = {std::min(cand.e1u, cand.e1v), std::max(cand.e1u, cand.e1v)};
        edges[j] = {std::min(cand.e2u, cand.e2v), std::max(cand.e2u, cand.e2v)};
        state.apply(cand.delta);
        dist = best_dist;
    }

    RewireResult out;
    out.graph = Graph(g.num_nodes());
    out.graph.set_external_ids(g.external_ids());
    for (const auto& [u, v] : edges) out.graph.add_edge(u, v);
    out.achieved_alpha = *AssortativityState(out.graph).alpha();
    out.proposals = proposals;
    out.converged = dist <= cfg.eps;
    if (cfg.reconnect) {
        out.graph = reconnect_components(out.graph, child_seed(cfg.seed, 1));
        auto a = assortativity(out.graph);
        out.alpha_post_connect = a ? *a : 0.0;
    }
    return out;
}

Graph reconnect_components(const Graph& g, std::uint64_t seed) {
    auto comps = g.connected_components();
    if (comps.size() <= 1) return g;
    std::size_t giant = 0;
    for (std::size_t i = 1; i < comps.size(); ++i)
        if (comps[i].size() > comps[giant].size()) giant = i;

    Graph out(g.num_nodes());
    out.set_external_ids(g.external_ids());
    for (const auto& [u, v] : g.edges()) out.add_edge(u, v);
    Rng rng(child_seed(seed, 0));
    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (i == giant) continue;
        int from = comps[i][rng.uniform_int(comps[i].size())];
        int to = comps[giant][rng.uniform_int(comps[giant].size())];
        out.add_edge(from, to);
    }
    return out;
}

}  // namespace maxdeg
