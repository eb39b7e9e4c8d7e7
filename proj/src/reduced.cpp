#include "maxdeg/reduced.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace maxdeg {

std::vector<double> biased_degree_distribution(const std::vector<int>& counts,
                                               const std::vector<int>& degrees, double beta) {
    if (counts.size() != degrees.size())
        throw std::invalid_argument("biased_degree_distribution: size mismatch");
    double max_log = -1.0;
    bool any = false;
    std::vector<double> logs(degrees.size());
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        logs[i] = std::log(static_cast<double>(degrees[i]));
        if (counts[i] > 0) {
            max_log = any ? std::max(max_log, logs[i]) : logs[i];
            any = true;
        }
    }
    if (!any) throw std::invalid_argument("biased_degree_distribution: all-zero neighborhood");
    std::vector<double> p(degrees.size(), 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        if (counts[i] == 0) continue;
        p[i] = static_cast<double>(counts[i]) * std::exp(beta * (logs[i] - max_log));
        total += p[i];
    }
    for (auto& x : p) x /= total;
    return p;
}

DegreeTransitionMatrix averaged_matrix(const Graph& g, const DegreeProfile& dp, double beta) {
    const std::size_t delta = dp.num_degrees();
    DegreeTransitionMatrix m;
    m.degrees = dp.degrees;
    m.kind = DegreeMatrixKind::Averaged;
    m.beta = beta;
    m.rows = Matrix(delta, delta);
    for (std::size_t k = 0; k < delta; ++k) {
        const auto& nodes = dp.nodes_by_degree[k];
        for (int v : nodes) {
            auto p = biased_degree_distribution(dp.neighborhood[v], dp.degrees, beta);
            for (std::size_t l = 0; l < delta; ++l) m.rows(k, l) += p[l];
        }
        for (std::size_t l = 0; l < delta; ++l) m.rows(k, l) /= static_cast<double>(nodes.size());
    }
    return m;
}

long long composition_count(int k, int parts) {
    // C(k + parts - 1, parts - 1)
    long long c = 1;
    for (int i = 1; i < parts; ++i) {
        c = c * (k + i);
        if (c < 0) return -1;
        c /= i;
    }
    return c;
}

void for_each_composition(int k, int parts,
                          const std::function<void(const std::vector<int>&)>& fn) {
    if (k < 1 || parts < 1) throw std::invalid_argument("for_each_composition: bad arguments");
    std::vector<int> n(parts, 0);
    // odometer over the first parts-1 slots; the last takes the remainder
    std::function<void(int, int)> rec = [&](int slot, int remaining) {
        if (slot == parts - 1) {
            n[slot] = remaining;
            fn(n);
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            n[slot] = v;
            rec(slot + 1, remaining - v);
        }
    };
    rec(0, k);
}

long long approximate_term_count(const ConditionalDegreeMatrix& jt) {
    long long total = 0;
    for (std::size_t k = 0; k < jt.degrees.size(); ++k) {
        long long c = composition_count(jt.degrees[k], static_cast<int>(jt.support[k].size()));
        if (c < 0) return -1;
        total += c;
        if (total < 0) return -1;
    }
    return total;
}

DegreeTransitionMatrix approximate_matrix(const ConditionalDegreeMatrix& jt, double beta,
                                          const DegreeProfile& dp, const ApproxOptions& opt) {
    if (beta < 0.0) throw std::invalid_argument("approximate_matrix: beta must be >= 0");
    const std::size_t delta = jt.degrees.size();
    long long terms = approximate_term_count(jt);
    if (terms < 0 || terms > opt.term_budget)
        throw std::runtime_error("approximate_matrix: model infeasible, enumeration of " +
                                 (terms < 0 ? std::string("(overflow)") : std::to_string(terms)) +
                                 " terms exceeds budget " + std::to_string(opt.term_budget));

    DegreeTransitionMatrix m;
    m.degrees = jt.degrees;
    m.kind = DegreeMatrixKind::Approximate;
    m.beta = beta;
    m.rows = Matrix(delta, delta);

    for (std::size_t ki = 0; ki < delta; ++ki) {
        const int k = jt.degrees[ki];
        const auto& support = jt.support[ki];
        const int s = static_cast<int>(support.size());
        std::vector<double> log_p(s), log_deg(s);
        double max_log_deg = -1.0;
        for (int i = 0; i < s; ++i) {
            log_p[i] = std::log(jt.rows(ki, support[i]));
            log_deg[i] = std::log(static_cast<double>(jt.degrees[support[i]]));
            max_log_deg = std::max(max_log_deg, log_deg[i]);
        }
        std::vector<double> bias(s);  // exp(beta (log l - shift)), per support slot
        for (int i = 0; i < s; ++i) bias[i] = std::exp(beta * (log_deg[i] - max_log_deg));
        const double log_k_fact = std::lgamma(k + 1.0);

        // Kahan accumulators per destination slot
        std::vector<double> acc(s, 0.0), comp(s, 0.0);
        for_each_composition(k, s, [&](const std::vector<int>& n) {
            double log_w = log_k_fact;
            double denom = 0.0;
            for (int i = 0; i < s; ++i) {
                if (n[i] == 0) continue;
                log_w += n[i] * log_p[i] - std::lgamma(n[i] + 1.0);
                denom += n[i] * bias[i];
            }
            const double w = std::exp(log_w);
            for (int i = 0; i < s; ++i) {
                if (n[i] == 0) continue;
                double term = w * (n[i] * bias[i] / denom);
                double y = term - comp[i];
                double t = acc[i] + y;
                comp[i] = (t - acc[i]) - y;
                acc[i] = t;
            }
        });
        for (int i = 0; i < s; ++i) m.rows(ki, support[i]) = acc[i];
    }
    (void)dp;
    return m;
}

AbsorbingChain build_reduced_chain(const DegreeTransitionMatrix& p, const DegreeProfile& dp) {
    const std::size_t delta = p.degrees.size();
    if (p.degrees != dp.degrees)
        throw std::invalid_argument("build_reduced_chain: degree set mismatch");
    const std::size_t max_i = delta - 1;  // degrees sorted ascending
    Matrix t(delta, delta);
    for (std::size_t k = 0; k < delta; ++k) {
        if (k == max_i) {
            t(k, k) = 1.0;
        } else {
            for (std::size_t l = 0; l < delta; ++l) t(k, l) = p.rows(k, l);
        }
    }
    std::vector<std::string> labels(delta);
    for (std::size_t k = 0; k < delta; ++k) labels[k] = std::to_string(p.degrees[k]);
    auto chain = partition_chain(labels, t, [&](int i) { return static_cast<std::size_t>(i) == max_i; });

    // d_max must be reachable from every transient degree over the support
    const std::size_t nt = chain.num_transient();
    std::vector<char> reaches(nt, 0);
    std::deque<std::size_t> q;
    for (std::size_t i = 0; i < nt; ++i)
        if (chain.r(i, 0) > 0.0) {
            reaches[i] = 1;
            q.push_back(i);
        }
    while (!q.empty()) {
        std::size_t j = q.front();
        q.pop_front();
        for (std::size_t i = 0; i < nt; ++i)
            if (!reaches[i] && chain.q(i, j) > 0.0) {
                reaches[i] = 1;
                q.push_back(i);
            }
    }
    for (std::size_t i = 0; i < nt; ++i)
        if (!reaches[i])
            throw std::runtime_error("build_reduced_chain: max degree unreachable from degree " +
                                     chain.labels[chain.transient_states[i]]);
    return chain;
}

ModelResult model_absorption(const Graph& g, double beta, const ApproxOptions& opt) {
    auto dp = degree_profile(g);
    ModelResult out;
    if (dp.num_degrees() == 1) {
        out.no_transient = true;
        return out;
    }
    auto j = joint_degree_matrix(g, dp);
    auto jt = conditional_degree_matrix(j);
    out.term_count = approximate_term_count(jt);
    auto pw = approximate_matrix(jt, beta, dp, opt);
    auto chain = build_reduced_chain(pw, dp);
    auto stats = absorption_stats(chain);
    // initial distribution: degree distribution over transient degrees, renormalized
    std::vector<double> init(chain.num_transient());
    double total = 0.0;
    for (std::size_t i = 0; i < init.size(); ++i) {
        init[i] = dp.degree_prob[chain.transient_states[i]];
        total += init[i];
    }
    for (auto& x : init) x /= total;
    auto agg = aggregate(stats, init);
    out.mean = agg.mean;
    out.stddev = agg.stddev;
    return out;
}

std::string model_json(double beta, const ModelResult& r) {
    nlohmann::ordered_json j;
    j["beta"] = beta;
    j["E_T"] = r.mean;
    j["Std_T"] = r.stddev;
    j["feasible"] = true;
    j["no_transient"] = r.no_transient;
    j["term_count"] = r.term_count;
    return j.dump();
}

std::string degree_matrix_csv(const DegreeTransitionMatrix& m) {
    std::vector<std::vector<double>> v(m.degrees.size(), std::vector<double>(m.degrees.size()));
    for (std::size_t a = 0; a < m.degrees.size(); ++a)
        for (std::size_t b = 0; b < m.degrees.size(); ++b) v[a][b] = m.rows(a, b);
    std::ostringstream out;
    write_matrix_csv(out, m.degrees, v);
    return out.str();
}

}  // namespace maxdeg
