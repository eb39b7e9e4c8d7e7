#include "maxdeg/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "maxdeg/degree_stats.hpp"
#include "maxdeg/generators.hpp"
#include "maxdeg/rewire.hpp"
#include "maxdeg/rng.hpp"

namespace maxdeg {

namespace {

std::string fmt_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            body(i);
        }
    };
    std::vector<std::thread> pool;
    int use = std::min<int>(threads, static_cast<int>(count));
    pool.reserve(use);
    for (int t = 0; t < use; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace

std::vector<double> default_beta_grid() {
    std::vector<double> b;
    for (int i = 0; i <= 32; ++i) b.push_back(i * 0.25);
    return b;
}

std::vector<double> default_alpha_targets() {
    return {-1.0, -0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75, 1.0};
}

std::uint64_t graph_hash(const Graph& g) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&](std::uint64_t v) {
        h ^= v;
        h *= 0x100000001b3ULL;
    };
    mix(g.num_nodes());
    for (const auto& [u, v] : g.edges()) {
        mix(static_cast<std::uint64_t>(u));
        mix(static_cast<std::uint64_t>(v));
    }
    return h;
}

SweepResult sweep_beta(const Graph& g, const SweepPlan& plan) {
    if (plan.betas.empty()) throw std::invalid_argument("sweep_beta: empty beta grid");
    if (!g.is_connected()) throw std::runtime_error("sweep_beta: graph is disconnected");

    SweepResult out;
    out.n = g.num_nodes();
    out.seed = plan.seed;
    out.graph_hash = graph_hash(g);
    if (auto a = assortativity(g)) {
        out.alpha = *a;
        out.alpha_defined = true;
    }

    int d_max = 0;
    bool any_transient = false;
    for (std::size_t v = 0; v < g.num_nodes(); ++v) d_max = std::max(d_max, g.degree(static_cast<int>(v)));
    for (std::size_t v = 0; v < g.num_nodes(); ++v)
        if (g.degree(static_cast<int>(v)) < d_max) any_transient = true;
    out.degenerate = !any_transient;

    out.cells.resize(plan.betas.size());
    if (!out.degenerate) {
        parallel_for(plan.betas.size(), plan.threads, [&](std::size_t i) {
            BetaCell& cell = out.cells[i];
            cell.beta = plan.betas[i];
            WalkConfig cfg;
            cfg.beta = cell.beta;
            cfg.trials = plan.trials;
            cfg.step_cap = plan.step_cap;
            cfg.seed = child_seed(plan.seed, 1000 + i);
            auto brw = simulate_brw(g, cfg);
            cell.brw = brw.summary;
            cell.times = std::move(brw.times);
            cell.capped_trials = brw.capped_trials;
            if (plan.include_model) {
                try {
                    ApproxOptions opt;
                    opt.term_budget = plan.model_budget;
                    auto m = model_absorption(g, cell.beta, opt);
                    cell.model_available = true;
                    cell.model_mean = m.mean;
                    cell.model_std = m.stddev;
                } catch (const std::exception&) {
                    cell.model_available = false;
                }
            }
        });
    } else {
        for (std::size_t i = 0; i < plan.betas.size(); ++i) out.cells[i].beta = plan.betas[i];
    }

    SamplingConfig sc;
    sc.trials = plan.trials;
    sc.mode = SamplingMode::NoReplacement;
    sc.seed = child_seed(plan.seed, 1);
    out.no_r = simulate_sampling(g, sc);
    sc.mode = SamplingMode::NoReplacementNeighbors;
    sc.seed = child_seed(plan.seed, 2);
    out.no_r_n = simulate_sampling(g, sc);

    if (!out.degenerate) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < out.cells.size(); ++i)
            if (out.cells[i].brw.mean < out.cells[best].brw.mean) best = i;
        out.beta_star = out.cells[best].beta;
        out.min_mean = out.cells[best].brw.mean;
        double threshold = 1.1 * out.min_mean;
        out.beta_min = out.beta_star;
        out.beta_max = out.beta_star;
        for (const auto& c : out.cells) {
            if (c.brw.mean <= threshold) {
                out.beta_min = std::min(out.beta_min, c.beta);
                out.beta_max = std::max(out.beta_max, c.beta);
            }
        }
    }
    return out;
}

AlphaStudyResult alpha_study(const ExperimentPlan& plan) {
    AlphaStudyResult out;
    for (std::size_t ti = 0; ti < plan.alpha_targets.size(); ++ti) {
        for (int gi = 0; gi < plan.graphs_per_target; ++gi) {
            std::uint64_t gseed = child_seed(plan.seed, ti * 10007ULL + static_cast<std::uint64_t>(gi));
            ErSpec es{plan.n, plan.p, gseed};
            Graph base = extract_giant_component(generate_er(es));

            RewireConfig rc;
            rc.target_alpha = plan.alpha_targets[ti];
            rc.eps = plan.rewire_eps;
            rc.max_proposals = plan.rewire_budget;
            rc.seed = child_seed(gseed, 1);
            rc.reconnect = true;
            auto rw = rewire_to_target(base, rc);

            AlphaStudyRow row;
            row.alpha_t = plan.alpha_targets[ti];
            row.graph_index = gi;
            row.achieved_alpha = rw.achieved_alpha;
            row.alpha_post_connect = rw.alpha_post_connect.value_or(rw.achieved_alpha);
            row.converged = rw.converged;

            SweepPlan sp = plan.sweep;
            sp.seed = child_seed(gseed, 2);
            row.sweep = sweep_beta(rw.graph, sp);
            out.rows.push_back(std::move(row));
        }
    }
    return out;
}

std::vector<ModelComparePoint> compare_model(const Graph& g, const std::vector<double>& betas,
                                             std::uint64_t trials, std::uint64_t seed,
                                             long long model_budget) {
    std::vector<ModelComparePoint> pts;
    for (std::size_t i = 0; i < betas.size(); ++i) {
        ModelComparePoint p;
        p.beta = betas[i];
        WalkConfig cfg;
        cfg.beta = p.beta;
        cfg.trials = trials;
        cfg.seed = child_seed(seed, 1000 + i);
        auto brw = simulate_brw(g, cfg);
        p.empirical_mean = brw.summary.mean;
        p.empirical_stderr = brw.summary.stderr_mean;
        ApproxOptions opt;
        opt.term_budget = model_budget;
        auto m = model_absorption(g, p.beta, opt);
        p.model_mean = m.mean;
        p.rel_error = p.empirical_mean != 0.0
                          ? (p.model_mean - p.empirical_mean) / p.empirical_mean
                          : 0.0;
        pts.push_back(p);
    }
    return pts;
}

std::string sweep_report(const SweepResult& r, ReportFormat fmt) {
    if (r.cells.empty()) throw std::invalid_argument("sweep_report: empty result");
    if (fmt == ReportFormat::Csv) {
        std::ostringstream out;
        out << "beta,brw_mean,brw_std,brw_stderr,trials,capped_trials,"
               "model_mean,model_std,no_r_mean,no_r_std,no_r_n_mean,no_r_n_std\n";
        for (const auto& c : r.cells) {
            out << fmt_num(c.beta) << ',' << fmt_num(c.brw.mean) << ',' << fmt_num(c.brw.stddev)
                << ',' << fmt_num(c.brw.stderr_mean) << ',' << c.brw.count << ','
                << c.capped_trials << ',';
            if (c.model_available)
                out << fmt_num(c.model_mean) << ',' << fmt_num(c.model_std);
            else
                out << ',';
            out << ',' << fmt_num(r.no_r.summary.mean) << ',' << fmt_num(r.no_r.summary.stddev)
                << ',' << fmt_num(r.no_r_n.summary.mean) << ',' << fmt_num(r.no_r_n.summary.stddev)
                << '\n';
        }
        return out.str();
    }
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["alpha"] = r.alpha_defined ? nlohmann::json(r.alpha) : nlohmann::json(nullptr);
    j["graph_hash"] = r.graph_hash;
    j["seed"] = r.seed;
    j["degenerate"] = r.degenerate;
    j["beta_star"] = r.beta_star;
    j["beta_min"] = r.beta_min;
    j["beta_max"] = r.beta_max;
    j["cells"] = nlohmann::json::array();
    for (const auto& c : r.cells) {
        nlohmann::ordered_json cj;
        cj["beta"] = c.beta;
        cj["brw_mean"] = c.brw.mean;
        cj["brw_std"] = c.brw.stddev;
        cj["brw_stderr"] = c.brw.stderr_mean;
        cj["trials"] = c.brw.count;
        cj["capped_trials"] = c.capped_trials;
        if (c.model_available) {
            cj["model_mean"] = c.model_mean;
            cj["model_std"] = c.model_std;
        }
        j["cells"].push_back(cj);
    }
    j["no_r"] = {{"mean", r.no_r.summary.mean}, {"std", r.no_r.summary.stddev}};
    j["no_r_n"] = {{"mean", r.no_r_n.summary.mean}, {"std", r.no_r_n.summary.stddev}};
    return j.dump(2) + "\n";
}

std::string alpha_targets_report(const AlphaStudyResult& r, ReportFormat fmt) {
    if (r.rows.empty()) throw std::invalid_argument("alpha_targets_report: empty result");
    if (fmt == ReportFormat::Csv) {
        std::ostringstream out;
        out << "alpha_t,graph,alpha_disconnected,alpha_connected,converged\n";
        for (const auto& row : r.rows)
            out << fmt_num(row.alpha_t) << ',' << row.graph_index << ','
                << fmt_num(row.achieved_alpha) << ',' << fmt_num(row.alpha_post_connect) << ','
                << (row.converged ? 1 : 0) << '\n';
        return out.str();
    }
    nlohmann::ordered_json j = nlohmann::json::array();
    for (const auto& row : r.rows)
        j.push_back({{"alpha_t", row.alpha_t},
                     {"graph", row.graph_index},
                     {"alpha_disconnected", row.achieved_alpha},
                     {"alpha_connected", row.alpha_post_connect},
                     {"converged", row.converged}});
    return j.dump(2) + "\n";
}

namespace {

struct TargetAggregate {
    double beta_star_mean = 0.0;
    double beta_min = 0.0;
    double beta_max = 0.0;
    double e_t_star = 0.0;  // pooled over graphs
    double no_r = 0.0;
    double no_r_n = 0.0;
    int graphs = 0;
};

std::map<double, TargetAggregate> aggregate_targets(const AlphaStudyResult& r) {
    std::map<double, TargetAggregate> by_target;
    for (const auto& row : r.rows) {
        auto& agg = by_target[row.alpha_t];
        agg.beta_star_mean += row.sweep.beta_star;
        if (agg.graphs == 0) {
            agg.beta_min = row.sweep.beta_min;
            agg.beta_max = row.sweep.beta_max;
        } else {
            agg.beta_min = std::min(agg.beta_min, row.sweep.beta_min);
            agg.beta_max = std::max(agg.beta_max, row.sweep.beta_max);
        }
        agg.e_t_star += row.sweep.min_mean;
        agg.no_r += row.sweep.no_r.summary.mean;
        agg.no_r_n += row.sweep.no_r_n.summary.mean;
        agg.graphs += 1;
    }
    for (auto& [t, agg] : by_target) {
        agg.beta_star_mean /= agg.graphs;
        agg.e_t_star /= agg.graphs;
        agg.no_r /= agg.graphs;
        agg.no_r_n /= agg.graphs;
    }
    return by_target;
}

}  // namespace

std::string beta_star_report(const AlphaStudyResult& r, ReportFormat fmt) {
    if (r.rows.empty()) throw std::invalid_argument("beta_star_report: empty result");
    auto by_target = aggregate_targets(r);
    if (fmt == ReportFormat::Csv) {
        std::ostringstream out;
        out << "alpha_t,beta_star,beta_min,beta_max\n";
        for (const auto& [t, agg] : by_target)
            out << fmt_num(t) << ',' << fmt_num(agg.beta_star_mean) << ','
                << fmt_num(agg.beta_min) << ',' << fmt_num(agg.beta_max) << '\n';
        return out.str();
    }
    nlohmann::ordered_json j = nlohmann::json::array();
    for (const auto& [t, agg] : by_target)
        j.push_back({{"alpha_t", t},
                     {"beta_star", agg.beta_star_mean},
                     {"beta_min", agg.beta_min},
                     {"beta_max", agg.beta_max}});
    return j.dump(2) + "\n";
}

std::string optimal_time_report(const AlphaStudyResult& r, ReportFormat fmt) {
    if (r.rows.empty()) throw std::invalid_argument("optimal_time_report: empty result");
    auto by_target = aggregate_targets(r);
    if (fmt == ReportFormat::Csv) {
        std::ostringstream out;
        out << "alpha_t,e_t_star,no_r_mean,no_r_n_mean,graphs\n";
        for (const auto& [t, agg] : by_target)
            out << fmt_num(t) << ',' << fmt_num(agg.e_t_star) << ',' << fmt_num(agg.no_r) << ','
                << fmt_num(agg.no_r_n) << ',' << agg.graphs << '\n';
        return out.str();
    }
    nlohmann::ordered_json j = nlohmann::json::array();
    for (const auto& [t, agg] : by_target)
        j.push_back({{"alpha_t", t},
                     {"e_t_star", agg.e_t_star},
                     {"no_r_mean", agg.no_r},
                     {"no_r_n_mean", agg.no_r_n},
                     {"graphs", agg.graphs}});
    return j.dump(2) + "\n";
}

std::string model_compare_report(const std::vector<ModelComparePoint>& pts, ReportFormat fmt) {
    if (pts.empty()) throw std::invalid_argument("model_compare_report: empty result");
    if (fmt == ReportFormat::Csv) {
        std::ostringstream out;
        out << "beta,empirical_mean,empirical_stderr,model_mean,rel_error\n";
        for (const auto& p : pts)
            out << fmt_num(p.beta) << ',' << fmt_num(p.empirical_mean) << ','
                << fmt_num(p.empirical_stderr) << ',' << fmt_num(p.model_mean) << ','
                << fmt_num(p.rel_error) << '\n';
        return out.str();
    }
    nlohmann::ordered_json j = nlohmann::json::array();
    for (const auto& p : pts)
        j.push_back({{"beta", p.beta},
                     {"empirical_mean", p.empirical_mean},
                     {"empirical_stderr", p.empirical_stderr},
                     {"model_mean", p.model_mean},
                     {"rel_error", p.rel_error}});
    return j.dump(2) + "\n";
}

void emit_report(const AlphaStudyResult& r, const std::string& out_dir, ReportFormat fmt) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const char* ext = fmt == ReportFormat::Csv ? "csv" : "json";
    auto write = [&](const std::string& name, const std::string& content) {
        std::ofstream f(fs::path(out_dir) / (name + "." + ext), std::ios::binary);
        if (!f) throw std::runtime_error("emit_report: cannot write to " + out_dir);
        f << content;
    };
    write("alpha_targets", alpha_targets_report(r, fmt));
    write("beta_star", beta_star_report(r, fmt));
    write("optimal_times", optimal_time_report(r, fmt));
    // per-graph sweep curves, one file per (target, graph)
    for (const auto& row : r.rows) {
        char name[64];
        std::snprintf(name, sizeof name, "sweep_a%+.2f_g%02d", row.alpha_t, row.graph_index);
        write(name, sweep_report(row.sweep, fmt));
    }
}

}  // namespace maxdeg
