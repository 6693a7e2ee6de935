#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chemostat/analysis.hpp"
#include "chemostat/integrate.hpp"
#include "chemostat/model.hpp"

namespace chemostat {

/// One experiment campaign: parameters, initial pair, horizon, step,
/// seed list, output location.
struct CampaignConfig {
    ChemostatParams params{1.0, 0.6, 3.0, 1.5, 0.5};
    StochState initial{2.5, 5.0};
    double horizon = 100.0;
    double dt = 1e-2;             // output step
    std::size_t refinement = 1;   // path step = dt / refinement
    std::vector<std::uint64_t> seeds;
    std::string output_dir = ".";
    ClassifyThresholds thresholds;
    double burn_in = 20.0;

    void validate() const;
};

/// Per-seed classification of Euler-Maruyama runs; seeds processed in a
/// worker pool, results returned in seed order.
std::vector<ClassificationReport> run_ensemble(const CampaignConfig& config);

void write_reports_csv(const std::string& path,
                       const std::vector<std::uint64_t>& seeds,
                       const std::vector<ClassificationReport>& reports);

/// The five figure campaigns: (D, alpha-left, alpha-right).
struct FigureCampaign {
    int number;  // 1..5
    double d;
    double alpha_left;
    double alpha_right;
};
const std::vector<FigureCampaign>& figure_campaigns();

/// Reproduce the figure campaigns: per-seed trajectory CSVs, a phase-plane
/// SVG overlaying the deterministic (alpha = 0) solution as a dashed curve,
/// and a classification-report CSV, per (campaign, alpha). `only` restricts
/// to one campaign number; 0 runs all five. Returns the emitted directories.
std::vector<std::string> run_figures(const CampaignConfig& config, int only = 0);

struct ConvergenceRow {
    double dt;
    double strong_error;
    double observed_order;  // between this level and the previous one
};

struct ConvergenceResult {
    std::vector<ConvergenceRow> rows;
    double fitted_order;  // least-squares slope of log2(error) vs log2(dt)
};

/// Strong self-convergence study: Euler-Maruyama at `levels` halved steps
/// against a 64x-finer reference on the same paths, errors averaged over
/// the seed list at the final time.
ConvergenceResult run_convergence(const ChemostatParams& p,
                                  const StochState& v0, double horizon,
                                  double dt_coarse, std::size_t levels,
                                  const std::vector<std::uint64_t>& seeds);

void write_convergence_csv(const std::string& path,
                           const ConvergenceResult& result);

}  // namespace chemostat
