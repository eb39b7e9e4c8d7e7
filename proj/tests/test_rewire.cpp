#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "maxdeg/degree_stats.hpp"
#include "maxdeg/generators.hpp"
#include "maxdeg/graph.hpp"
#include "maxdeg/rewire.hpp"
#include "maxdeg/rng.hpp"

using namespace maxdeg;

namespace {

std::multiset<int> degree_multiset(const Graph& g) {
    std::multiset<int> out;
    for (int v = 0; v < static_cast<int>(g.num_nodes()); ++v) out.insert(g.degree(v));
    return out;
}

Graph rebuild(std::size_t n, const std::vector<std::pair<int, int>>& edges) {
    Graph g(n);
    for (auto& [u, v] : edges) g.add_edge(u, v);
    return g;
}

}  // namespace

TEST_CASE("incremental assortativity") {
    SUBCASE("swap and swap back is an involution") {
        auto g = load_edge_list_string("0 1\n0 2\n1 2\n2 3\n");
        AssortativityState st(g);
        double before = *st.alpha();
        long long d = st.swap_delta(g.degree(0), g.degree(1), g.degree(2), g.degree(3));
        st.apply(d);
        st.apply(-d);
        CHECK(*st.alpha() == doctest::Approx(before).epsilon(1e-12));
    }
    SUBCASE("single swap matches full recomputation on the lollipop") {
        // a graph with degree variance where the swap {0,1},{2,3} -> {0,2},{1,3}
        // is legal (no duplicates, four distinct endpoints)
        auto h = load_edge_list_string("0 1\n2 3\n1 4\n2 4\n4 5\n");
        AssortativityState st(h);
        // swap {0,1} and {2,3} into {0,2},{1,3}
        long long d = st.swap_delta(h.degree(0), h.degree(1), h.degree(2), h.degree(3));
        st.apply(d);
        auto edges = h.edges();
        edges[0] = {0, 2};
        edges[1] = {1, 3};
        auto full = assortativity(rebuild(h.num_nodes(), edges));
        REQUIRE(full.has_value());
        CHECK(*st.alpha() == doctest::Approx(*full).epsilon(1e-9));
    }
    SUBCASE("ten thousand random legal swaps track the oracle") {
        auto g = extract_giant_component(generate_er({100, 0.05, 3}));
        auto edges = g.edges();
        AssortativityState st(g);
        std::vector<int> deg(g.num_nodes());
        for (int v = 0; v < static_cast<int>(g.num_nodes()); ++v) deg[v] = g.degree(v);
        std::set<std::pair<int, int>> present(edges.begin(), edges.end());
        Rng rng(55);
        int applied = 0;
        double max_dev = 0.0;
        for (int it = 0; it < 100000 && applied < 10000; ++it) {
            std::size_t i = rng.uniform_int(edges.size());
            std::size_t j = rng.uniform_int(edges.size());
            if (i == j) continue;
            auto [a, b] = edges[i];
            auto [c, d] = edges[j];
            if (a == c || a == d || b == c || b == d) continue;
            std::pair<int, int> e1{std::min(a, c), std::max(a, c)};
            std::pair<int, int> e2{std::min(b, d), std::max(b, d)};
            if (present.count(e1) || present.count(e2)) continue;
            long long delta = st.swap_delta(deg[a], deg[b], deg[c], deg[d]);
            st.apply(delta);
            present.erase(edges[i]);
            present.erase(edges[j]);
            present.insert(e1);
            present.insert(e2);
            edges[i] = e1;
            edges[j] = e2;
            ++applied;
            if (applied % 1000 == 0) {
                auto full = assortativity(rebuild(g.num_nodes(), edges));
                REQUIRE(full.has_value());
                max_dev = std::max(max_dev, std::abs(*full - *st.alpha()));
            }
        }
        REQUIRE(applied == 10000);
        CHECK(max_dev <= 1e-9);
    }
}

TEST_CASE("rewire_to_target") {
    SUBCASE("already within tolerance: zero proposals") {
        auto g = extract_giant_component(generate_er({100, 0.05, 9}));
        RewireConfig cfg;
        cfg.target_alpha = *assortativity(g);
        cfg.eps = 0.05;
        auto r = rewire_to_target(g, cfg);
        CHECK(r.proposals == 0);
        CHECK(r.converged);
        CHECK(r.graph.edges() == g.edges());
    }
    SUBCASE("star cannot be rewired") {
        auto g = load_edge_list_string("0 1\n0 2\n0 3\n0 4\n");
        RewireConfig cfg;
        cfg.target_alpha = 0.5;
        cfg.max_proposals = 2000;
        auto r = rewire_to_target(g, cfg);
        CHECK_FALSE(r.converged);
        CHECK(r.achieved_alpha == doctest::Approx(-1.0));
    }
    SUBCASE("reaches moderate targets on ER graphs") {
        for (double target : {0.5, -0.5}) {
            auto g = extract_giant_component(generate_er({100, 0.05, 42}));
            RewireConfig cfg;
            cfg.target_alpha = target;
            cfg.eps = 0.02;
            cfg.seed = 7;
            auto r = rewire_to_target(g, cfg);
            CHECK(r.converged);
            CHECK(std::abs(r.achieved_alpha - target) <= 0.02);
            CHECK(degree_multiset(r.graph) == degree_multiset(g));
            CHECK(r.graph.num_edges() == g.num_edges());  // simplicity preserved
        }
    }
    SUBCASE("deterministic per seed") {
        auto g = extract_giant_component(generate_er({80, 0.06, 10}));
        RewireConfig cfg;
        cfg.target_alpha = 0.3;
        cfg.eps = 0.02;
        cfg.seed = 12;
        auto a = rewire_to_target(g, cfg);
        auto b = rewire_to_target(g, cfg);
        CHECK(a.graph.edges() == b.graph.edges());
        CHECK(a.proposals == b.proposals);
    }
    SUBCASE("single-candidate mode still converges on easy targets") {
        auto g = extract_giant_component(generate_er({100, 0.05, 13}));
        RewireConfig cfg;
        cfg.target_alpha = 0.3;
        cfg.eps = 0.02;
        cfg.try_both_candidates = false;
        auto r = rewire_to_target(g, cfg);
        CHECK(r.converged);
    }
}

TEST_CASE("reconnect_components") {
    SUBCASE("connected input unchanged") {
        auto g = load_edge_list_string("0 1\n1 2\n");
        auto h = reconnect_components(g, 4);
        CHECK(h.edges() == g.edges());
    }
    SUBCASE("giant plus two isolated nodes gains exactly two edges") {
        Graph g(7);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(2, 3);
        g.add_edge(3, 4);
        // nodes 5, 6 isolated
        auto h = reconnect_components(g, 8);
        CHECK(h.num_edges() == g.num_edges() + 2);
        CHECK(h.is_connected());
    }
    SUBCASE("rewired graph reconnection barely moves alpha") {
        auto g = generate_er({1090, 2.8 / 1090, 77});
        RewireConfig cfg;
        cfg.target_alpha = 0.4;
        cfg.eps = 0.02;
        cfg.seed = 3;
        cfg.max_proposals = 2'000'000;
        auto r = rewire_to_target(g, cfg);  // full graph, still disconnected
        auto connected = reconnect_components(r.graph, 5);
        CHECK(connected.is_connected());
        auto before = assortativity(r.graph);
        auto after = assortativity(connected);
        REQUIRE(before.has_value());
        REQUIRE(after.has_value());
        CHECK(std::abs(*before - *after) <= 0.1);
    }
}
