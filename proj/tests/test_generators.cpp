#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "maxdeg/generators.hpp"
#include "maxdeg/graph.hpp"
#include "maxdeg/stats_util.hpp"

using namespace maxdeg;

TEST_CASE("generate_er") {
    SUBCASE("p=0 empty") {
        auto g = generate_er({100, 0.0, 1});
        CHECK(g.num_edges() == 0);
    }
    SUBCASE("p=1 complete") {
        auto g = generate_er({20, 1.0, 1});
        CHECK(g.num_edges() == 190);
    }
    SUBCASE("edge count near its binomial expectation") {
        const std::size_t n = 1000;
        const double p = 0.0024;
        auto g = generate_er({n, p, 31});
        double pairs = 0.5 * n * (n - 1);
        double expect = pairs * p;
        double sd = std::sqrt(pairs * p * (1 - p));
        CHECK(std::abs(static_cast<double>(g.num_edges()) - expect) <= 4.0 * sd);
    }
    SUBCASE("deterministic per seed") {
        auto a = generate_er({200, 0.03, 77});
        auto b = generate_er({200, 0.03, 77});
        CHECK(a.edges() == b.edges());
        auto c = generate_er({200, 0.03, 78});
        CHECK(a.edges() != c.edges());
    }
    SUBCASE("degree distribution passes a chi-squared fit over 20 seeds") {
        const std::size_t n = 300;
        const double p = 0.02;
        // aggregate observed degree counts over seeds, bin tail together
        const int bins = 12;
        std::vector<double> observed(bins + 1, 0.0);
        int seeds = 20;
        for (int s = 0; s < seeds; ++s) {
            auto g = generate_er({n, p, static_cast<std::uint64_t>(1000 + s)});
            for (int v = 0; v < static_cast<int>(n); ++v) {
                int d = g.degree(v);
                observed[std::min(d, bins)] += 1.0;
            }
        }
        // bin(n-1, p) pmf
        double total = static_cast<double>(seeds) * n;
        std::vector<double> expected(bins + 1, 0.0);
        double logp = std::log(p), logq = std::log1p(-p);
        for (int d = 0; d <= static_cast<int>(n) - 1; ++d) {
            double lp = std::lgamma(n) - std::lgamma(d + 1.0) - std::lgamma(n - d) + d * logp +
                        (n - 1.0 - d) * logq;
            expected[std::min(d, bins)] += std::exp(lp) * total;
        }
        double stat = 0.0;
        int df = 0;
        for (int b = 0; b <= bins; ++b) {
            if (expected[b] < 5.0) continue;  // collapse sparse cells out
            stat += (observed[b] - expected[b]) * (observed[b] - expected[b]) / expected[b];
            ++df;
        }
        REQUIRE(df > 1);
        CHECK(chi_square_sf(stat, df - 1) > 0.001);
    }
}

TEST_CASE("expected_max_degree_bound") {
    SUBCASE("published reference value") {
        CHECK(std::abs(expected_max_degree_bound(1090, 2.8) - 11.1041) <= 1e-3);
    }
    SUBCASE("bound exceeds the mean degree") {
        for (double lambda : {1.5, 2.0, 3.0, 4.5}) CHECK(expected_max_degree_bound(2000, lambda) >= lambda);
    }
    SUBCASE("matches a dense grid search over the Chernoff parameter") {
        // the bound is min over t>0 of (log n + lambda (e^t - 1)) / t
        for (auto [n, lambda] : {std::pair<std::size_t, double>{1090, 2.8}, {5000, 2.0}, {300, 1.3}}) {
            double best = 1e300;
            for (double t = 1e-4; t < 12.0; t += 1e-4) {
                double v = (std::log(static_cast<double>(n)) + lambda * (std::exp(t) - 1.0)) / t;
                best = std::min(best, v);
            }
            CHECK(expected_max_degree_bound(n, lambda) == doctest::Approx(best).epsilon(1e-5));
        }
    }
    SUBCASE("domain errors") {
        CHECK_THROWS_AS(expected_max_degree_bound(10, 5.0), std::domain_error);
        CHECK_THROWS_AS(expected_max_degree_bound(1000, 0.0), std::domain_error);
    }
}

TEST_CASE("lambert_w0") {
    for (double x : {1e-8, 0.1, 0.5, 1.0, 2.718281828459045, 10.0, 1e4}) {
        double w = lambert_w0(x);
        CHECK(std::abs(w * std::exp(w) - x) <= 1e-11);
    }
    CHECK(lambert_w0(0.0) == 0.0);
}

TEST_CASE("giant_component_fraction") {
    SUBCASE("published reference value") {
        double g = giant_component_fraction(2.8);
        CHECK(std::abs(g - 0.924975) <= 1e-4);
        CHECK(static_cast<int>(std::lround(1090 * g)) == 1008);
    }
    SUBCASE("vanishes toward criticality") {
        CHECK(giant_component_fraction(1.001) < 0.01);
    }
    SUBCASE("back-substitution residual") {
        double g = giant_component_fraction(2.0);
        CHECK(std::abs(-std::log1p(-g) / g - 2.0) <= 1e-9);
    }
    SUBCASE("subcritical rejected") {
        CHECK_THROWS_AS(giant_component_fraction(1.0), std::domain_error);
        CHECK_THROWS_AS(giant_component_fraction(0.5), std::domain_error);
    }
}

TEST_CASE("extract_giant_component") {
    SUBCASE("connected graph unchanged") {
        auto g = load_edge_list_string("0 1\n1 2\n");
        auto h = extract_giant_component(g);
        CHECK(h.num_nodes() == 3);
        CHECK(h.num_edges() == 2);
    }
    SUBCASE("tie broken toward the smallest original id") {
        // two triangles of equal size plus an isolated edge
        auto g = load_edge_list_string("0 1\n1 2\n2 0\n3 4\n4 5\n5 3\n6 7\n");
        auto h = extract_giant_component(g);
        REQUIRE(h.num_nodes() == 3);
        CHECK(h.external_ids() == std::vector<long long>{0, 1, 2});
    }
    SUBCASE("ER giant component near its predicted size") {
        const std::size_t n = 1090;
        const double lambda = 2.8;
        auto g = generate_er({n, lambda / n, 1234});
        auto h = extract_giant_component(g);
        double predicted = n * giant_component_fraction(lambda);
        CHECK(static_cast<double>(h.num_nodes()) >= 0.95 * predicted);
        CHECK(static_cast<double>(h.num_nodes()) <= 1.05 * predicted);
    }
}

TEST_CASE("max-degree bound dominates simulation") {
    const std::size_t n = 1090;
    const double lambda = 2.8;
    double bound = expected_max_degree_bound(n, lambda);
    double sum_max = 0.0;
    const int seeds = 100;
    for (int s = 0; s < seeds; ++s) {
        auto g = generate_er({n, lambda / n, static_cast<std::uint64_t>(50 + s)});
        int dmax = 0;
        for (int v = 0; v < static_cast<int>(n); ++v) dmax = std::max(dmax, g.degree(v));
        sum_max += dmax;
    }
    CHECK(sum_max / seeds <= bound);
}
