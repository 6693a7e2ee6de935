#include "chemostat/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "chemostat/io.hpp"
#include "chemostat/svg.hpp"

namespace chemostat {

namespace {

namespace fs = std::filesystem;

// Runs fn(i) for i in [0, n) on a small worker pool. Exceptions are
// rethrown on the caller thread.
void parallel_for_index(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers =
        std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

Trajectory simulate_seed(const CampaignConfig& c, std::uint64_t seed) {
    const double path_dt = c.dt / static_cast<double>(c.refinement);
    const WienerPath path = WienerPath::generate(seed, 0.0, c.horizon, path_dt);
    return euler_maruyama(c.params, path, c.initial, 0.0, c.horizon, c.dt,
                          c.refinement);
}

// Deterministic (alpha = 0) solution of the chemostat, RK4 at the campaign
// step; used as the dashed overlay in the phase-plane figures.
std::vector<std::array<double, 2>> deterministic_curve(
    const CampaignConfig& c) {
    ChemostatParams p = c.params;
    p.alpha = 0.0;
    StochState v = c.initial;
    const auto n = static_cast<std::size_t>(std::round(c.horizon / c.dt));
    std::vector<std::array<double, 2>> pts;
    pts.reserve(n + 1);
    pts.push_back({v.s, v.x});
    auto rhs = [&](const StochState& s) { return ito_fields(p, s).drift; };
    for (std::size_t j = 0; j < n; ++j) {
        const auto k1 = rhs(v);
        const auto k2 = rhs({v.s + 0.5 * c.dt * k1[0], v.x + 0.5 * c.dt * k1[1]});
        const auto k3 = rhs({v.s + 0.5 * c.dt * k2[0], v.x + 0.5 * c.dt * k2[1]});
        const auto k4 = rhs({v.s + c.dt * k3[0], v.x + c.dt * k3[1]});
        v.s += c.dt / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
        v.x += c.dt / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
        pts.push_back({v.s, v.x});
    }
    return pts;
}

const char* kRealizationColors[] = {"#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2"};

}  // namespace

void CampaignConfig::validate() const {
    params.validate();
    if (!(horizon > 0.0)) {
        throw std::invalid_argument("campaign: horizon must be positive");
    }
    if (!(dt > 0.0)) {
        throw std::invalid_argument("campaign: dt must be positive");
    }
    if (refinement == 0) {
        throw std::invalid_argument("campaign: refinement must be >= 1");
    }
    if (seeds.empty()) {
        throw std::invalid_argument("campaign: seed list must be non-empty");
    }
    if (!(initial.x >= 0.0)) {
        throw std::invalid_argument("campaign: initial biomass must be >= 0");
    }
}

std::vector<ClassificationReport> run_ensemble(const CampaignConfig& config) {
    config.validate();
    std::vector<ClassificationReport> reports(config.seeds.size());
    parallel_for_index(config.seeds.size(), [&](std::size_t i) {
        const Trajectory traj = simulate_seed(config, config.seeds[i]);
        reports[i] = classify(config.params, traj, config.thresholds);
    });
    return reports;
}

void write_reports_csv(const std::string& path,
                       const std::vector<std::uint64_t>& seeds,
                       const std::vector<ClassificationReport>& reports) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::invalid_argument("cannot write report CSV: " + path);
    }
    out << ClassificationReport::csv_header() << "\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        out << reports[i].to_csv_row(seeds[i]) << "\n";
    }
}

const std::vector<FigureCampaign>& figure_campaigns() {
    static const std::vector<FigureCampaign> campaigns = {
        {1, 3.0, 0.1, 0.5}, {2, 3.0, 1.0, 1.5}, {3, 1.5, 0.1, 0.5},
        {4, 1.5, 1.0, 1.5}, {5, 0.8, 0.1, 0.5},
    };
    return campaigns;
}

std::vector<std::string> run_figures(const CampaignConfig& config, int only) {
    config.validate();
    if (only < 0 || only > 5) {
        throw std::invalid_argument("figures: campaign key must be 1..5 (0 = all)");
    }
    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec || !fs::is_directory(config.output_dir)) {
        throw std::invalid_argument("figures: cannot create output dir " +
                                    config.output_dir);
    }

    std::vector<std::string> emitted;
    for (const FigureCampaign& fc : figure_campaigns()) {
        if (only != 0 && fc.number != only) continue;
        for (double alpha : {fc.alpha_left, fc.alpha_right}) {
            CampaignConfig c = config;
            c.params.d = fc.d;
            c.params.alpha = alpha;

            const std::string dir = config.output_dir + "/fig" +
                                    std::to_string(fc.number) + "_D" +
                                    format_double(fc.d) + "_alpha" +
                                    format_double(alpha);
            fs::create_directories(dir);

            std::vector<Trajectory> trajectories(c.seeds.size());
            parallel_for_index(c.seeds.size(), [&](std::size_t i) {
                trajectories[i] = simulate_seed(c, c.seeds[i]);
            });

            std::vector<ClassificationReport> reports;
            reports.reserve(c.seeds.size());
            for (std::size_t i = 0; i < c.seeds.size(); ++i) {
                reports.push_back(classify(c.params, trajectories[i], c.thresholds));
                std::ofstream out(dir + "/seed_" + std::to_string(c.seeds[i]) +
                                      ".csv",
                                  std::ios::binary);
                trajectories[i].write_csv(out, "euler-maruyama");
            }
            write_reports_csv(dir + "/reports.csv", c.seeds, reports);

            SvgPlot plot("D=" + format_double(fc.d) +
                             ", alpha=" + format_double(alpha),
                         "S", "x");
            plot.add_series("deterministic (alpha=0)", deterministic_curve(c),
                            "#1f77b4", /*dashed=*/true);
            const std::size_t shown = std::min<std::size_t>(c.seeds.size(), 6);
            for (std::size_t i = 0; i < shown; ++i) {
                plot.add_series(i == 0 ? "stochastic realizations" : "",
                                trajectories[i].states,
                                kRealizationColors[i % 6]);
            }
            plot.write_file(dir + "/phase_plane.svg");
            emitted.push_back(dir);
        }
    }
    return emitted;
}

ConvergenceResult run_convergence(const ChemostatParams& p,
                                  const StochState& v0, double horizon,
                                  double dt_coarse, std::size_t levels,
                                  const std::vector<std::uint64_t>& seeds) {
    p.validate();
    if (levels < 2) {
        throw std::invalid_argument("convergence: at least 2 levels required");
    }
    if (seeds.empty()) {
        throw std::invalid_argument("convergence: seed list must be non-empty");
    }
    // Reference runs 64x finer than the finest level, all on one fine path.
    const std::size_t finest_factor = std::size_t{1} << (levels - 1);
    const double dt_ref = dt_coarse / static_cast<double>(finest_factor) / 64.0;

    std::vector<std::vector<double>> per_seed_errors(seeds.size());
    parallel_for_index(seeds.size(), [&](std::size_t si) {
        const WienerPath path =
            WienerPath::generate(seeds[si], 0.0, horizon, dt_ref);
        const Trajectory ref =
            euler_maruyama(p, path, v0, 0.0, horizon, dt_ref, 1);
        per_seed_errors[si].resize(levels);
        for (std::size_t l = 0; l < levels; ++l) {
            const std::size_t r = (finest_factor >> l) * 64;
            const double dt = dt_ref * static_cast<double>(r);
            const Trajectory traj =
                euler_maruyama(p, path, v0, 0.0, horizon, dt, r);
            per_seed_errors[si][l] =
                std::hypot(traj.back()[0] - ref.back()[0],
                           traj.back()[1] - ref.back()[1]);
        }
    });

    ConvergenceResult result;
    double prev_err = 0.0;
    for (std::size_t l = 0; l < levels; ++l) {
        double err = 0.0;
        for (const auto& e : per_seed_errors) err += e[l];
        err /= static_cast<double>(seeds.size());
        const double dt =
            dt_coarse / static_cast<double>(std::size_t{1} << l);
        ConvergenceRow row{dt, err, 0.0};
        if (l > 0 && err > 0.0) {
            row.observed_order = std::log2(prev_err / err);
        }
        result.rows.push_back(row);
        prev_err = err;
    }
    // Least-squares slope of log2(error) against log2(dt).
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& row : result.rows) {
        const double x = std::log2(row.dt);
        const double y = std::log2(row.strong_error);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const auto n = static_cast<double>(result.rows.size());
    result.fitted_order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return result;
}

void write_convergence_csv(const std::string& path,
                           const ConvergenceResult& result) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::invalid_argument("cannot write convergence CSV: " + path);
    }
    out << "dt,strong_error,observed_order\n";
    for (const auto& row : result.rows) {
        out << format_double(row.dt) << "," << format_double(row.strong_error)
            << "," << format_double(row.observed_order) << "\n";
    }
}

}  // namespace chemostat
