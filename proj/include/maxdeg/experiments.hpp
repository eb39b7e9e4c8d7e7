#ifndef MAXDEG_EXPERIMENTS_HPP
#define MAXDEG_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "maxdeg/graph.hpp"
#include "maxdeg/reduced.hpp"
#include "maxdeg/walker.hpp"

namespace maxdeg {

struct SweepPlan {
    std::vector<double> betas;  // default grid 0..8 step 0.25
    std::uint64_t trials = 500;
    std::uint64_t seed = 0;
    std::uint64_t step_cap = 10'000'000;
    bool include_model = true;
    long long model_budget = 100'000'000;
    int threads = 1;
};

std::vector<double> default_beta_grid();

struct BetaCell {
    double beta = 0.0;
    TrialSummary brw;
    std::vector<std::uint64_t> times;  // per-trial absorption times
    std::uint64_t capped_trials = 0;
    bool model_available = false;
    double model_mean = 0.0;
    double model_std = 0.0;
};

struct SweepResult {
    std::vector<BetaCell> cells;
    SamplingResult no_r;    // beta-independent baselines, computed once
    SamplingResult no_r_n;
    double beta_star = 0.0;
    double beta_min = 0.0;  // 10%-of-optimum interval bounds
    double beta_max = 0.0;
    double min_mean = 0.0;
    bool degenerate = false;  // no transient states (regular graph)
    // metadata
    std::uint64_t graph_hash = 0;
    double alpha = 0.0;
    bool alpha_defined = false;
    std::size_t n = 0;
    std::uint64_t seed = 0;
};

std::uint64_t graph_hash(const Graph& g);

SweepResult sweep_beta(const Graph& g, const SweepPlan& plan);

struct ExperimentPlan {
    std::vector<double> alpha_targets;  // default the nine values -1..+1 step 0.25... see ctor
    int graphs_per_target = 10;
    std::size_t n = 100;
    double p = 0.05;
    SweepPlan sweep;
    double rewire_eps = 0.01;
    std::uint64_t rewire_budget = 5'000'000;
    std::uint64_t seed = 0;
};

std::vector<double> default_alpha_targets();

struct AlphaStudyRow {
    double alpha_t = 0.0;
    int graph_index = 0;
    double achieved_alpha = 0.0;       // after rewiring, before reconnection
    double alpha_post_connect = 0.0;
    bool converged = false;
    SweepResult sweep;
};

struct AlphaStudyResult {
    std::vector<AlphaStudyRow> rows;
};

AlphaStudyResult alpha_study(const ExperimentPlan& plan);

struct ModelComparePoint {
    double beta = 0.0;
    double empirical_mean = 0.0;
    double empirical_stderr = 0.0;
    double model_mean = 0.0;
    double rel_error = 0.0;
};

std::vector<ModelComparePoint> compare_model(const Graph& g, const std::vector<double>& betas,
                                             std::uint64_t trials, std::uint64_t seed,
                                             long long model_budget = 100'000'000);

enum class ReportFormat { Csv, Json };

/// Plot-ready per-beta sweep table.
std::string sweep_report(const SweepResult& r, ReportFormat fmt);
/// (alpha_t, achieved, post-connect) triples per rewired graph.
std::string alpha_targets_report(const AlphaStudyResult& r, ReportFormat fmt);
/// (alpha_t, beta_star, beta_min, beta_max) aggregated per target.
std::string beta_star_report(const AlphaStudyResult& r, ReportFormat fmt);
/// (alpha_t, E[T*], baselines) aggregated per target.
std::string optimal_time_report(const AlphaStudyResult& r, ReportFormat fmt);
std::string model_compare_report(const std::vector<ModelComparePoint>& pts, ReportFormat fmt);

/// Writes the four summary tables into out_dir; byte-stable per seed.
void emit_report(const AlphaStudyResult& r, const std::string& out_dir, ReportFormat fmt);

}  // namespace maxdeg

#endif
