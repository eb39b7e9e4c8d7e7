#include "maxdeg/walker.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace maxdeg {

TrialSummary summarize(const std::vector<std::uint64_t>& times) {
    TrialSummary s;
    s.count = times.size();
    if (s.count == 0) return s;
    double sum = 0.0;
    for (auto t : times) sum += static_cast<double>(t);
    s.mean = sum / static_cast<double>(s.count);
    if (s.count > 1) {
        double ss = 0.0;
        for (auto t : times) {
            double d = static_cast<double>(t) - s.mean;
            ss += d * d;
        }
        s.stddev = std::sqrt(ss / static_cast<double>(s.count - 1));
        s.stderr_mean = s.stddev / std::sqrt(static_cast<double>(s.count));
    }
    return s;
}

std::vector<double> walk_transition_row(const Graph& g, int u, double beta) {
    const auto& nbrs = g.neighbors(u);
    if (nbrs.empty()) throw std::runtime_error("walk_transition_row: isolated node");
    // shift by the row max in log space so large beta stays finite
    double max_log = -1.0;
    std::vector<double> logs(nbrs.size());
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
        logs[i] = std::log(static_cast<double>(g.degree(nbrs[i])));
        max_log = std::max(max_log, logs[i]);
    }
    std::vector<double> w(nbrs.size());
    double total = 0.0;
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
        w[i] = std::exp(beta * (logs[i] - max_log));
        total += w[i];
    }
    for (auto& x : w) x /= total;
    return w;
}

AbsorbingChain build_full_chain(const Graph& g, double beta) {
    if (!g.is_connected()) throw std::runtime_error("build_full_chain: graph is disconnected");
    const int n = static_cast<int>(g.num_nodes());
    int d_max = 0;
    for (int v = 0; v < n; ++v) d_max = std::max(d_max, g.degree(v));
    Matrix p(n, n);
    for (int v = 0; v < n; ++v) {
        if (g.degree(v) == d_max) {
            p(v, v) = 1.0;
        } else {
            auto row = walk_transition_row(g, v, beta);
            const auto& nbrs = g.neighbors(v);
            for (std::size_t i = 0; i < nbrs.size(); ++i) p(v, nbrs[i]) = row[i];
        }
    }
    std::vector<std::string> labels(n);
    for (int v = 0; v < n; ++v) labels[v] = std::to_string(g.external_ids()[v]);
    return partition_chain(labels, p, [&](int v) { return g.degree(v) == d_max; });
}

namespace {

// Per-node cumulative transition rows, built once per (graph, beta).
std::vector<std::vector<double>> cumulative_rows(const Graph& g, double beta, int d_max) {
    std::vector<std::vector<double>> cum(g.num_nodes());
    for (int v = 0; v < static_cast<int>(g.num_nodes()); ++v) {
        if (g.degree(v) == d_max) continue;
        auto row = walk_transition_row(g, v, beta);
        auto& c = cum[v];
        c.resize(row.size());
        double acc = 0.0;
        for (std::size_t i = 0; i < row.size(); ++i) {
            acc += row[i];
            c[i] = acc;
        }
        c.back() = 1.0;
    }
    return cum;
}

int sample_row(const std::vector<double>& cum, const std::vector<int>& nbrs, Rng& rng) {
    double u = rng.uniform();
    std::size_t k = 0;
    while (cum[k] <= u) ++k;
    return nbrs[k];
}

}  // namespace

BrwResult simulate_brw(const Graph& g, const WalkConfig& cfg) {
    if (!g.is_connected()) throw std::runtime_error("simulate_brw: graph is disconnected");
    if (cfg.beta < 0.0) throw std::invalid_argument("simulate_brw: beta must be >= 0");
    if (cfg.trials < 1) throw std::invalid_argument("simulate_brw: trials must be >= 1");
    const int n = static_cast<int>(g.num_nodes());
    int d_max = 0;
    for (int v = 0; v < n; ++v) d_max = std::max(d_max, g.degree(v));

    std::vector<int> transient;
    for (int v = 0; v < n; ++v)
        if (g.degree(v) < d_max) transient.push_back(v);
    if (cfg.initial == InitialMode::UniformTransient && transient.empty())
        throw std::runtime_error("simulate_brw: no transient nodes");

    std::vector<char> sees_max(n, 0);
    for (int v = 0; v < n; ++v) {
        if (g.degree(v) == d_max) {
            sees_max[v] = 1;
            continue;
        }
        for (int u : g.neighbors(v))
            if (g.degree(u) == d_max) {
                sees_max[v] = 1;
                break;
            }
    }

    std::vector<double> custom_cum;
    if (cfg.initial == InitialMode::Custom) {
        if (cfg.custom_initial.size() != static_cast<std::size_t>(n))
            throw std::invalid_argument("simulate_brw: custom initial distribution size mismatch");
        double acc = 0.0;
        custom_cum.resize(n);
        for (int v = 0; v < n; ++v) {
            acc += cfg.custom_initial[v];
            custom_cum[v] = acc;
        }
        if (std::abs(acc - 1.0) > 1e-9)
            throw std::invalid_argument("simulate_brw: custom initial distribution must sum to 1");
        custom_cum.back() = 1.0;
    }

    auto cum = cumulative_rows(g, cfg.beta, d_max);

    BrwResult r;
    r.times.reserve(cfg.trials);
    r.start_nodes.reserve(cfg.trials);
    r.first_observed.reserve(cfg.trials);
    for (std::uint64_t i = 0; i < cfg.trials; ++i) {
        Rng rng(child_seed(cfg.seed, i));
        int v;
        if (cfg.initial == InitialMode::UniformTransient) {
            v = transient[rng.uniform_int(transient.size())];
        } else {
            double u = rng.uniform();
            int k = 0;
            while (custom_cum[k] <= u) ++k;
            v = k;
        }
        const int start = v;
        std::uint64_t observed = sees_max[v] ? 0 : UINT64_MAX;
        std::uint64_t t = 0;
        bool capped = false;
        while (g.degree(v) != d_max) {
            if (t >= cfg.step_cap) {
                capped = true;
                break;
            }
            v = sample_row(cum[v], g.neighbors(v), rng);
            ++t;
            if (observed == UINT64_MAX && sees_max[v]) observed = t;
        }
        if (capped) {
            ++r.capped_trials;
            continue;
        }
        r.times.push_back(t);
        r.start_nodes.push_back(start);
        r.first_observed.push_back(observed);
    }
    r.summary = summarize(r.times);
    return r;
}

SamplingResult simulate_sampling(const Graph& g, const SamplingConfig& cfg) {
    const int n = static_cast<int>(g.num_nodes());
    if (n == 0) throw std::invalid_argument("simulate_sampling: empty graph");
    int d_max = 0;
    for (int v = 0; v < n; ++v) d_max = std::max(d_max, g.degree(v));
    std::vector<char> sees_max(n, 0);
    for (int v = 0; v < n; ++v) {
        if (g.degree(v) == d_max) {
            sees_max[v] = 1;
            continue;
        }
        for (int u : g.neighbors(v))
            if (g.degree(u) == d_max) {
                sees_max[v] = 1;
                break;
            }
    }

    SamplingResult r;
    r.times.reserve(cfg.trials);
    std::vector<int> order(n);
    std::vector<char> removed(n);
    for (std::uint64_t i = 0; i < cfg.trials; ++i) {
        Rng rng(child_seed(cfg.seed, i));
        for (int v = 0; v < n; ++v) order[v] = v;
        rng.shuffle(order);
        std::fill(removed.begin(), removed.end(), 0);
        std::uint64_t draws = 0;
        bool found = false;
        for (int v : order) {
            if (removed[v]) continue;
            ++draws;
            if (cfg.mode == SamplingMode::NoReplacement) {
                if (g.degree(v) == d_max) {
                    found = true;
                    break;
                }
            } else {
                if (sees_max[v]) {
                    found = true;
                    break;
                }
                if (cfg.remove_neighbors)
                    for (int u : g.neighbors(v)) removed[u] = 1;
            }
            removed[v] = 1;
        }
        if (!found) throw std::runtime_error("simulate_sampling: pool exhausted without success");
        r.times.push_back(draws);
    }
    r.summary = summarize(r.times);
    return r;
}

std::string trials_csv(const BrwResult& r) {
    std::ostringstream out;
    out << "trial,start_node,T\n";
    for (std::size_t i = 0; i < r.times.size(); ++i)
        out << i << ',' << r.start_nodes[i] << ',' << r.times[i] << '\n';
    return out.str();
}

std::string summary_json(double beta, const BrwResult& r) {
    nlohmann::ordered_json j;
    j["beta"] = beta;
    j["mean"] = r.summary.mean;
    j["std"] = r.summary.stddev;
    j["stderr"] = r.summary.stderr_mean;
    j["trials"] = r.summary.count;
    j["capped_trials"] = r.capped_trials;
    return j.dump();
}

}  // namespace maxdeg
