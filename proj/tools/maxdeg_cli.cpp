// Command-line front end: graph generation, rewiring, degree statistics,
// beta sweeps, the alpha study, and model-vs-simulation comparison.
//
// Exit codes: 0 success, 2 partial (e.g. rewiring did not converge), 1 failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "maxdeg/degree_stats.hpp"
#include "maxdeg/experiments.hpp"
#include "maxdeg/generators.hpp"
#include "maxdeg/graph.hpp"
#include "maxdeg/reduced.hpp"
#include "maxdeg/rewire.hpp"

namespace fs = std::filesystem;
using namespace maxdeg;

namespace {

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << content;
}

std::vector<double> make_grid(double lo, double hi, double step) {
    std::vector<double> out;
    for (int i = 0;; ++i) {
        double b = lo + i * step;
        if (b > hi + 1e-9) break;
        out.push_back(b);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"biased random walk max-degree search toolkit"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    int threads = 1;
    std::string out_dir = ".";
    std::string format = "csv";
    app.add_option("--seed", seed, "master seed")->capture_default_str();
    app.add_option("--threads", threads, "worker threads for sweeps")->capture_default_str();
    app.add_option("--out-dir", out_dir, "output directory")->capture_default_str();
    app.add_option("--format", format, "report format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    // generate
    auto* gen = app.add_subcommand("generate", "generate an Erdos-Renyi graph");
    std::size_t gen_n = 1090;
    std::optional<double> gen_p, gen_lambda;
    bool gen_giant = false;
    std::string gen_out = "graph.edges";
    gen->add_option("--n", gen_n, "number of nodes")->capture_default_str();
    auto* popt = gen->add_option("--p", gen_p, "edge probability");
    auto* lopt = gen->add_option("--lambda", gen_lambda, "mean degree; p = lambda/n");
    popt->excludes(lopt);
    gen->add_flag("--giant-only", gen_giant, "keep only the giant component");
    gen->add_option("--out", gen_out, "output edge-list path")->capture_default_str();

    // rewire
    auto* rew = app.add_subcommand("rewire", "rewire a graph toward a target assortativity");
    std::string rew_in, rew_out = "rewired.edges";
    double rew_target = 0.0, rew_eps = 0.01;
    std::uint64_t rew_budget = 5'000'000;
    bool rew_reconnect = false;
    rew->add_option("--in", rew_in, "input edge-list path")->required();
    rew->add_option("--target-alpha", rew_target, "target assortativity")->required();
    rew->add_option("--eps", rew_eps, "convergence tolerance")->capture_default_str();
    rew->add_option("--max-proposals", rew_budget, "proposal budget")->capture_default_str();
    rew->add_flag("--reconnect", rew_reconnect, "bridge non-giant components afterwards");
    rew->add_option("--out", rew_out, "output edge-list path")->capture_default_str();

    // stats
    auto* st = app.add_subcommand("stats", "degree statistics: J, J-tilde, assortativity");
    std::string st_in;
    st->add_option("--in", st_in, "input edge-list path")->required();

    // sweep
    auto* sw = app.add_subcommand("sweep", "sweep beta on one graph: BRW, model, baselines");
    std::string sw_in;
    double sw_bmin = 0.0, sw_bmax = 8.0, sw_bstep = 0.25;
    std::uint64_t sw_trials = 500;
    bool sw_no_model = false;
    sw->add_option("--in", sw_in, "input edge-list path")->required();
    sw->add_option("--beta-min", sw_bmin, "")->capture_default_str();
    sw->add_option("--beta-max", sw_bmax, "")->capture_default_str();
    sw->add_option("--beta-step", sw_bstep, "")->capture_default_str();
    sw->add_option("--trials", sw_trials, "trials per beta")->capture_default_str();
    sw->add_flag("--no-model", sw_no_model, "skip the reduced-model column");

    // alpha-study
    auto* as = app.add_subcommand("alpha-study", "generate/rewire/sweep over alpha targets");
    std::vector<double> as_targets = default_alpha_targets();
    int as_graphs = 10;
    std::size_t as_n = 100;
    double as_p = 0.05;
    std::uint64_t as_trials = 500;
    double as_bmin = 0.0, as_bmax = 8.0, as_bstep = 0.25;
    double as_eps = 0.01;
    bool as_model = false;
    as->add_option("--alpha-targets", as_targets, "target assortativities")->capture_default_str();
    as->add_option("--graphs", as_graphs, "graphs per target")->capture_default_str();
    as->add_option("--n", as_n, "ER node count")->capture_default_str();
    as->add_option("--p", as_p, "ER edge probability")->capture_default_str();
    as->add_option("--trials", as_trials, "trials per beta")->capture_default_str();
    as->add_option("--beta-min", as_bmin, "")->capture_default_str();
    as->add_option("--beta-max", as_bmax, "")->capture_default_str();
    as->add_option("--beta-step", as_bstep, "")->capture_default_str();
    as->add_option("--eps", as_eps, "rewiring tolerance")->capture_default_str();
    as->add_flag("--model", as_model, "also compute the reduced model per beta");

    // model-compare
    auto* mc = app.add_subcommand("model-compare", "empirical vs reduced-model absorption time");
    std::string mc_in;
    double mc_bmin = 0.0, mc_bmax = 8.0, mc_bstep = 0.25;
    std::uint64_t mc_trials = 500;
    mc->add_option("--in", mc_in, "input edge-list path")->required();
    mc->add_option("--beta-min", mc_bmin, "")->capture_default_str();
    mc->add_option("--beta-max", mc_bmax, "")->capture_default_str();
    mc->add_option("--beta-step", mc_bstep, "")->capture_default_str();
    mc->add_option("--trials", mc_trials, "trials per beta")->capture_default_str();

    CLI11_PARSE(app, argc, argv);
    ReportFormat fmt = format == "csv" ? ReportFormat::Csv : ReportFormat::Json;

    try {
        if (gen->parsed()) {
            double p;
            if (gen_p)
                p = *gen_p;
            else if (gen_lambda)
                p = *gen_lambda / static_cast<double>(gen_n);
            else
                throw std::runtime_error("generate: need --p or --lambda");
            Graph g = generate_er({gen_n, p, seed});
            if (gen_giant) g = extract_giant_component(g);
            write_file(fs::path(out_dir) / gen_out, [&] {
                std::ostringstream os;
                save_edge_list(g, os);
                return os.str();
            }());
            std::cout << "nodes=" << g.num_nodes() << " edges=" << g.num_edges() << "\n";
            return 0;
        }

        if (rew->parsed()) {
            Graph g = load_edge_list_file(rew_in);
            RewireConfig cfg;
            cfg.target_alpha = rew_target;
            cfg.eps = rew_eps;
            cfg.max_proposals = rew_budget;
            cfg.seed = seed;
            cfg.reconnect = rew_reconnect;
            auto res = rewire_to_target(g, cfg);
            write_file(fs::path(out_dir) / rew_out, [&] {
                std::ostringstream os;
                save_edge_list(res.graph, os);
                return os.str();
            }());
            nlohmann::ordered_json j;
            j["target"] = rew_target;
            j["achieved_pre_connect"] = res.achieved_alpha;
            if (res.alpha_post_connect) j["achieved_post_connect"] = *res.alpha_post_connect;
            j["proposals"] = res.proposals;
            j["converged"] = res.converged;
            std::cout << j.dump(2) << "\n";
            return res.converged ? 0 : 2;
        }

        if (st->parsed()) {
            Graph g = load_edge_list_file(st_in);
            auto dp = degree_profile(g);
            auto j = joint_degree_matrix(g, dp);
            auto jt = conditional_degree_matrix(j);
            write_file(fs::path(out_dir) / "joint_degree.csv", joint_matrix_csv(j));
            write_file(fs::path(out_dir) / "conditional_degree.csv", conditional_matrix_csv(jt));
            auto a = assortativity(g);
            std::cout << "n=" << g.num_nodes() << " m=" << g.num_edges() << " d_max=" << dp.d_max
                      << " alpha=" << (a ? std::to_string(*a) : std::string("undefined")) << "\n";
            return 0;
        }

        if (sw->parsed()) {
            Graph g = load_edge_list_file(sw_in);
            SweepPlan plan;
            plan.betas = make_grid(sw_bmin, sw_bmax, sw_bstep);
            plan.trials = sw_trials;
            plan.seed = seed;
            plan.threads = threads;
            plan.include_model = !sw_no_model;
            auto res = sweep_beta(g, plan);
            const char* ext = fmt == ReportFormat::Csv ? "csv" : "json";
            write_file(fs::path(out_dir) / (std::string("sweep.") + ext), sweep_report(res, fmt));
            std::cout << "beta_star=" << res.beta_star << " interval=[" << res.beta_min << ","
                      << res.beta_max << "] min_mean=" << res.min_mean
                      << (res.degenerate ? " (degenerate: no transient states)" : "") << "\n";
            return res.degenerate ? 2 : 0;
        }

        if (as->parsed()) {
            ExperimentPlan plan;
            plan.alpha_targets = as_targets;
            plan.graphs_per_target = as_graphs;
            plan.n = as_n;
            plan.p = as_p;
            plan.rewire_eps = as_eps;
            plan.seed = seed;
            plan.sweep.betas = make_grid(as_bmin, as_bmax, as_bstep);
            plan.sweep.trials = as_trials;
            plan.sweep.threads = threads;
            plan.sweep.include_model = as_model;
            auto res = alpha_study(plan);
            emit_report(res, out_dir, fmt);
            bool all_converged = true;
            for (const auto& row : res.rows) all_converged = all_converged && row.converged;
            std::cout << "rows=" << res.rows.size() << " out_dir=" << out_dir << "\n";
            return all_converged ? 0 : 2;
        }

        if (mc->parsed()) {
            Graph g = load_edge_list_file(mc_in);
            auto pts = compare_model(g, make_grid(mc_bmin, mc_bmax, mc_bstep), mc_trials, seed);
            const char* ext = fmt == ReportFormat::Csv ? "csv" : "json";
            write_file(fs::path(out_dir) / (std::string("model_compare.") + ext),
                       model_compare_report(pts, fmt));
            std::cout << "points=" << pts.size() << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
