#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "maxdeg/generators.hpp"
#include "maxdeg/graph.hpp"
#include "maxdeg/reduced.hpp"
#include "maxdeg/rng.hpp"

using namespace maxdeg;

namespace {

Graph lollipop() { return load_edge_list_string("0 1\n0 2\n1 2\n2 3\n"); }
Graph star5() { return load_edge_list_string("0 1\n0 2\n0 3\n0 4\n"); }

ConditionalDegreeMatrix synthetic_row(int k_degree, const std::vector<int>& degrees,
                                      const std::vector<double>& probs) {
    // single meaningful row (for degree k_degree); other rows are point masses
    ConditionalDegreeMatrix jt;
    jt.degrees = degrees;
    std::size_t delta = degrees.size();
    jt.rows = Matrix(delta, delta);
    jt.support.resize(delta);
    std::size_t ki = 0;
    while (degrees[ki] != k_degree) ++ki;
    for (std::size_t r = 0; r < delta; ++r) {
        if (r == ki) {
            for (std::size_t l = 0; l < delta; ++l) {
                jt.rows(r, l) = probs[l];
                if (probs[l] > 0) jt.support[r].push_back(static_cast<int>(l));
            }
        } else {
            jt.rows(r, r) = 1.0;
            jt.support[r].push_back(static_cast<int>(r));
        }
    }
    return jt;
}

// direct Monte Carlo of E[p_l(N)], N ~ mult(k, probs)
std::vector<double> mc_expectation(int k, const std::vector<int>& degrees,
                                   const std::vector<double>& probs, double beta, int samples,
                                   Rng& rng) {
    std::vector<double> acc(degrees.size(), 0.0);
    std::vector<int> n(degrees.size());
    for (int s = 0; s < samples; ++s) {
        std::fill(n.begin(), n.end(), 0);
        for (int i = 0; i < k; ++i) {
            double u = rng.uniform();
            double c = 0.0;
            std::size_t j = 0;
            for (; j + 1 < probs.size(); ++j) {
                c += probs[j];
                if (u < c) break;
            }
            n[j]++;
        }
        auto p = biased_degree_distribution(n, degrees, beta);
        for (std::size_t l = 0; l < p.size(); ++l) acc[l] += p[l];
    }
    for (auto& x : acc) x /= samples;
    return acc;
}

}  // namespace

TEST_CASE("biased_degree_distribution") {
    SUBCASE("beta=0 proportional to counts") {
        auto p = biased_degree_distribution({2, 1}, {2, 3}, 0.0);
        CHECK(p[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
        CHECK(p[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    }
    SUBCASE("beta=1 weights by degree") {
        auto p = biased_degree_distribution({1, 1}, {2, 4}, 1.0);
        CHECK(p[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
        CHECK(p[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    }
    SUBCASE("single support is a point mass") {
        auto p = biased_degree_distribution({0, 3}, {2, 5}, 17.0);
        CHECK(p[0] == 0.0);
        CHECK(p[1] == doctest::Approx(1.0));
    }
    SUBCASE("all-zero neighborhood rejected") {
        CHECK_THROWS_AS(biased_degree_distribution({0, 0}, {2, 3}, 1.0), std::invalid_argument);
    }
}

TEST_CASE("averaged_matrix") {
    SUBCASE("beta=0 equals the conditional degree matrix") {
        for (std::uint64_t seed : {4u, 9u}) {
            auto g = extract_giant_component(generate_er({60, 0.08, seed}));
            auto dp = degree_profile(g);
            auto jt = conditional_degree_matrix(joint_degree_matrix(g, dp));
            auto avg = averaged_matrix(g, dp, 0.0);
            for (std::size_t k = 0; k < dp.num_degrees(); ++k)
                for (std::size_t l = 0; l < dp.num_degrees(); ++l)
                    CHECK(std::abs(avg.rows(k, l) - jt.rows(k, l)) <= 1e-10);
        }
    }
    SUBCASE("regular graph gives an identity row") {
        auto g = load_edge_list_string("0 1\n1 2\n2 3\n3 0\n");
        auto dp = degree_profile(g);
        auto avg = averaged_matrix(g, dp, 3.0);
        CHECK(avg.rows(0, 0) == doctest::Approx(1.0));
    }
    SUBCASE("lollipop degree-2 row at beta=0") {
        auto g = lollipop();
        auto dp = degree_profile(g);
        auto avg = averaged_matrix(g, dp, 0.0);
        int i2 = dp.index_of(2), i3 = dp.index_of(3);
        CHECK(avg.rows(i2, i2) == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(avg.rows(i2, i3) == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("composition enumeration") {
    SUBCASE("k=2 over two slots") {
        std::vector<std::vector<int>> seen;
        for_each_composition(2, 2, [&](const std::vector<int>& n) { seen.push_back(n); });
        REQUIRE(seen.size() == 3);
        CHECK(seen[0] == std::vector<int>{0, 2});
        CHECK(seen[1] == std::vector<int>{1, 1});
        CHECK(seen[2] == std::vector<int>{2, 0});
    }
    SUBCASE("single slot") {
        int calls = 0;
        for_each_composition(1, 1, [&](const std::vector<int>& n) {
            ++calls;
            CHECK(n == std::vector<int>{1});
        });
        CHECK(calls == 1);
    }
    SUBCASE("count formula") {
        CHECK(composition_count(4, 3) == 15);
        CHECK(composition_count(2, 2) == 3);
        int calls = 0;
        for_each_composition(4, 3, [&](const std::vector<int>&) { ++calls; });
        CHECK(calls == 15);
    }
}

TEST_CASE("approximate_matrix") {
    SUBCASE("beta=0 collapse to the conditional matrix") {
        for (std::uint64_t seed : {1u, 6u}) {
            auto g = extract_giant_component(generate_er({50, 0.1, seed}));
            auto dp = degree_profile(g);
            auto jt = conditional_degree_matrix(joint_degree_matrix(g, dp));
            auto pw = approximate_matrix(jt, 0.0, dp);
            for (std::size_t k = 0; k < dp.num_degrees(); ++k)
                for (std::size_t l = 0; l < dp.num_degrees(); ++l)
                    CHECK(std::abs(pw.rows(k, l) - jt.rows(k, l)) <= 1e-10);
        }
    }
    SUBCASE("hand-enumerated lollipop entry at beta=1") {
        auto g = lollipop();
        auto dp = degree_profile(g);
        auto jt = conditional_degree_matrix(joint_degree_matrix(g, dp));
        auto pw = approximate_matrix(jt, 1.0, dp);
        int i2 = dp.index_of(2), i3 = dp.index_of(3);
        CHECK(std::abs(pw.rows(i2, i3) - 0.55) <= 1e-12);
        CHECK(std::abs(pw.rows(i2, i2) - 0.45) <= 1e-12);
    }
    SUBCASE("star degree-1 row is a point mass") {
        auto g = star5();
        auto dp = degree_profile(g);
        auto jt = conditional_degree_matrix(joint_degree_matrix(g, dp));
        for (double beta : {0.0, 2.0, 9.0}) {
            auto pw = approximate_matrix(jt, beta, dp);
            CHECK(pw.rows(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("rows stay stochastic across beta for random rows") {
        Rng rng(31);
        std::vector<int> degrees{2, 3, 5, 7};
        for (int rep = 0; rep < 5; ++rep) {
            std::vector<double> probs(4);
            double total = 0;
            for (auto& p : probs) {
                p = 0.05 + rng.uniform();
                total += p;
            }
            for (auto& p : probs) p /= total;
            auto jt = synthetic_row(5, degrees, probs);
            DegreeProfile dp;
            dp.degrees = degrees;
            for (double beta : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0}) {
                auto pw = approximate_matrix(jt, beta, dp);
                std::size_t ki = 2;  // degree 5
                double s = 0;
                for (std::size_t l = 0; l < degrees.size(); ++l) s += pw.rows(ki, l);
                CHECK(std::abs(s - 1.0) <= 1e-10);
            }
        }
    }
    SUBCASE("matches direct multinomial Monte Carlo") {
        Rng rng(88);
        std::vector<int> degrees{2, 4, 6};
        std::vector<double> probs{0.3, 0.5, 0.2};
        const int k = 6;
        auto jt = synthetic_row(k, degrees, probs);
        DegreeProfile dp;
        dp.degrees = degrees;
        auto pw = approximate_matrix(jt, 1.5, dp);
        auto mc = mc_expectation(k, degrees, probs, 1.5, 200000, rng);
        for (std::size_t l = 0; l < degrees.size(); ++l) {
            double se = std::sqrt(0.25 / 200000.0);
            CHECK(std::abs(pw.rows(2, l) - mc[l]) <= 4.0 * se);
        }
    }
    SUBCASE("budget exceeded is an explicit error") {
        auto g = star5();
        auto dp = degree_profile(g);
        auto jt = conditional_degree_matrix(joint_degree_matrix(g, dp));
        ApproxOptions opt;
        opt.term_budget = 1;
        CHECK_THROWS_WITH_AS(approximate_matrix(jt, 1.0, dp, opt),
                             doctest::Contains("infeasible"), std::runtime_error);
    }
}

TEST_CASE("build_reduced_chain and model_absorption") {
    SUBCASE("star reduces to a 2-state chain with mu=1") {
        auto g = star5();
        auto dp = degree_profile(g);
        auto jt = conditional_degree_matrix(joint_degree_matrix(g, dp));
        auto pw = approximate_matrix(jt, 0.7, dp);
        auto chain = build_reduced_chain(pw, dp);
        REQUIRE(chain.num_transient() == 1);
        auto s = absorption_stats(chain);
        CHECK(s.mean[0] == doctest::Approx(1.0));
        auto m = model_absorption(g, 0.7);
        CHECK(m.mean == doctest::Approx(1.0));
        CHECK(m.stddev == doctest::Approx(0.0));
    }
    SUBCASE("regular graph flagged as already absorbed") {
        auto g = load_edge_list_string("0 1\n1 2\n2 0\n");
        auto m = model_absorption(g, 1.0);
        CHECK(m.no_transient);
        CHECK(m.mean == doctest::Approx(0.0));
    }
    SUBCASE("lollipop model matches chain Monte Carlo") {
        auto g = lollipop();
        auto dp = degree_profile(g);
        auto jt = conditional_degree_matrix(joint_degree_matrix(g, dp));
        auto pw = approximate_matrix(jt, 0.0, dp);
        auto chain = build_reduced_chain(pw, dp);
        auto stats = absorption_stats(chain);
        ChainSampler sampler(chain);
        const int trials = 50000;
        for (std::size_t st = 0; st < chain.num_transient(); ++st) {
            Rng rng(child_seed(9, st));
            double sum = 0, sum2 = 0;
            for (int i = 0; i < trials; ++i) {
                auto t = static_cast<double>(sampler.run(static_cast<int>(st), rng));
                sum += t;
                sum2 += t * t;
            }
            double mean = sum / trials;
            double var = (sum2 - trials * mean * mean) / (trials - 1);
            double se = std::sqrt(var / trials);
            CHECK(std::abs(mean - stats.mean[st]) <= 4.0 * se);
        }
    }
    SUBCASE("model summary serialization") {
        auto m = model_absorption(star5(), 1.0);
        auto js = model_json(1.0, m);
        CHECK(js.find("\"E_T\":1.0") != std::string::npos);
    }
}
