// Command-line front end for the stochastic chemostat simulator.
//
// Exit codes: 0 success, 2 validation/usage error, 3 numerical failure
// (pole overshoot or non-finite state).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chemostat/analysis.hpp"
#include "chemostat/campaign.hpp"
#include "chemostat/integrate.hpp"
#include "chemostat/io.hpp"

namespace {

using namespace chemostat;

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

std::string default_output_dir() {
    const char* env = std::getenv("CHEMOSTAT_OUTPUT_DIR");
    return env != nullptr ? env : ".";
}

void add_param_options(CLI::App* cmd, ChemostatParams& p,
                       std::string& config_path) {
    cmd->add_option("--config", config_path,
                    "flat key-value parameter file (flags take precedence)");
    cmd->add_option("--s0", p.s0, "input nutrient concentration")
        ->capture_default_str();
    cmd->add_option("--a", p.a, "half-saturation constant")
        ->capture_default_str();
    cmd->add_option("--m", p.m, "maximal consumption rate")
        ->capture_default_str();
    cmd->add_option("--d", p.d, "dilution rate")->capture_default_str();
    cmd->add_option("--alpha", p.alpha, "noise intensity")
        ->capture_default_str();
}

// Parameter file keys are s0, a, m, d, alpha; command-line flags win.
void apply_config(const CLI::App* cmd, const std::string& path,
                  ChemostatParams& p) {
    const auto values = load_config(path);
    const std::pair<const char*, double*> keys[] = {
        {"s0", &p.s0}, {"a", &p.a}, {"m", &p.m}, {"d", &p.d},
        {"alpha", &p.alpha},
    };
    for (const auto& [key, value] : values) {
        bool known = false;
        for (const auto& [name, slot] : keys) {
            if (key == name) {
                known = true;
                if (cmd->count(std::string("--") + name) == 0) {
                    *slot = std::stod(value);
                }
                break;
            }
        }
        if (!known) {
            throw std::invalid_argument("unknown config key: " + key);
        }
    }
}

std::vector<std::uint64_t> seed_range(std::uint64_t base, std::size_t count) {
    std::vector<std::uint64_t> seeds(count);
    std::iota(seeds.begin(), seeds.end(), base);
    return seeds;
}

std::ostream& open_sink(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") {
        return std::cout;
    }
    file.open(path, std::ios::binary);
    if (!file) {
        throw std::invalid_argument("cannot open output file: " + path);
    }
    return file;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stochastic chemostat simulator: Wiener/OU noise, "
                 "Euler-Maruyama and conjugated random-system integration, "
                 "absorbing-set and pullback diagnostics"};
    app.require_subcommand(1);

    ChemostatParams params{1.0, 0.6, 3.0, 1.5, 0.5};
    std::string config_path;

    // check -----------------------------------------------------------------
    auto* check = app.add_subcommand(
        "check", "print dbar, mu(S0) and the extinction condition verdict");
    add_param_options(check, params, config_path);

    // simulate --------------------------------------------------------------
    auto* simulate = app.add_subcommand(
        "simulate", "integrate one seeded trajectory and emit its CSV");
    add_param_options(simulate, params, config_path);
    std::uint64_t seed = 1;
    double horizon = 100.0;
    double dt = 1e-2;
    std::size_t refinement = 1;
    double burn_in = 20.0;
    StochState initial{2.5, 5.0};
    std::string method = "em";
    std::string output;
    simulate->add_option("--seed", seed, "path seed")->capture_default_str();
    simulate->add_option("--horizon", horizon, "simulation horizon T")
        ->capture_default_str();
    simulate->add_option("--dt", dt, "output step")->capture_default_str();
    simulate->add_option("--refinement", refinement,
                         "inner path steps per output step (EM only)")
        ->capture_default_str();
    simulate->add_option("--burn-in", burn_in, "OU burn-in duration")
        ->capture_default_str();
    simulate->add_option("--S", initial.s, "initial nutrient")
        ->capture_default_str();
    simulate->add_option("--x", initial.x, "initial biomass")
        ->capture_default_str();
    simulate
        ->add_option("--method", method,
                     "integration route: em | conjugated | random")
        ->check(CLI::IsMember({"em", "conjugated", "random"}))
        ->capture_default_str();
    simulate->add_option("-o,--output", output, "output CSV file (- = stdout)");

    // ensemble --------------------------------------------------------------
    auto* ensemble = app.add_subcommand(
        "ensemble", "classify an ensemble of seeded runs (worker pool)");
    add_param_options(ensemble, params, config_path);
    std::size_t n_seeds = 100;
    std::uint64_t seed_base = 1;
    ClassifyThresholds thresholds;
    std::string out_dir = default_output_dir();
    ensemble->add_option("--seeds", n_seeds, "number of seeds")
        ->capture_default_str();
    ensemble->add_option("--seed-base", seed_base, "first seed")
        ->capture_default_str();
    ensemble->add_option("--horizon", horizon, "simulation horizon T")
        ->capture_default_str();
    ensemble->add_option("--dt", dt, "output step")->capture_default_str();
    ensemble->add_option("--refinement", refinement,
                         "inner path steps per output step")
        ->capture_default_str();
    ensemble->add_option("--S", initial.s, "initial nutrient")
        ->capture_default_str();
    ensemble->add_option("--x", initial.x, "initial biomass")
        ->capture_default_str();
    ensemble->add_option("--ext-tol", thresholds.ext_tol,
                         "terminal biomass below this -> extinction")
        ->capture_default_str();
    ensemble->add_option("--persist-floor", thresholds.persist_floor,
                         "late minimum above this -> persistence")
        ->capture_default_str();
    ensemble->add_option("--late-window", thresholds.late_window,
                         "trailing fraction of the horizon examined")
        ->capture_default_str();
    ensemble->add_option("--output-dir", out_dir,
                         "report directory (env CHEMOSTAT_OUTPUT_DIR)")
        ->capture_default_str();

    // pullback --------------------------------------------------------------
    auto* pullback = app.add_subcommand(
        "pullback",
        "pullback experiment: integrate from -t to 0 on one fixed realization");
    add_param_options(pullback, params, config_path);
    std::vector<double> t_list{5.0, 10.0, 20.0, 40.0};
    std::vector<std::string> u0_specs;
    pullback->add_option("--seed", seed, "realization seed")
        ->capture_default_str();
    pullback->add_option("--dt", dt, "integration step")->capture_default_str();
    pullback->add_option("--burn-in", burn_in, "OU burn-in duration")
        ->capture_default_str();
    pullback
        ->add_option("--t", t_list,
                     "pullback times (increasing)")
        ->capture_default_str();
    pullback->add_option(
        "--u0", u0_specs,
        "initial conditions as sigma,kappa pairs (default: transform of (2.5,5))");
    pullback->add_option("-o,--output", output, "output CSV file (- = stdout)");

    // convergence -----------------------------------------------------------
    auto* convergence = app.add_subcommand(
        "convergence", "Euler-Maruyama strong self-convergence study");
    add_param_options(convergence, params, config_path);
    std::size_t levels = 4;
    double dt_coarse = 1e-2;
    double conv_horizon = 1.0;
    std::size_t conv_seeds = 10;
    convergence->add_option("--levels", levels, "number of halved step levels")
        ->capture_default_str();
    convergence->add_option("--dt-coarse", dt_coarse, "coarsest step")
        ->capture_default_str();
    convergence->add_option("--horizon", conv_horizon, "comparison horizon")
        ->capture_default_str();
    convergence->add_option("--seeds", conv_seeds, "number of seeds averaged")
        ->capture_default_str();
    convergence->add_option("--seed-base", seed_base, "first seed")
        ->capture_default_str();
    convergence->add_option("--S", initial.s, "initial nutrient")
        ->capture_default_str();
    convergence->add_option("--x", initial.x, "initial biomass")
        ->capture_default_str();
    convergence->add_option("-o,--output", output,
                            "output CSV file (- = stdout)");

    // figures ---------------------------------------------------------------
    auto* figures = app.add_subcommand(
        "figures", "run the five (D, alpha) phase-plane campaigns");
    add_param_options(figures, params, config_path);
    int campaign_key = 0;
    std::size_t fig_seeds = 10;
    figures->add_option("--campaign", campaign_key, "campaign 1..5 (0 = all)")
        ->capture_default_str();
    figures->add_option("--seeds", fig_seeds, "seeds per campaign")
        ->capture_default_str();
    figures->add_option("--seed-base", seed_base, "first seed")
        ->capture_default_str();
    figures->add_option("--horizon", horizon, "simulation horizon T")
        ->capture_default_str();
    figures->add_option("--dt", dt, "output step")->capture_default_str();
    figures->add_option("--refinement", refinement,
                        "inner path steps per output step")
        ->capture_default_str();
    figures->add_option("--output-dir", out_dir,
                        "artifact directory (env CHEMOSTAT_OUTPUT_DIR)")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (!config_path.empty()) {
            apply_config(app.get_subcommands().front(), config_path, params);
        }
        params.validate();
        if (*check) {
            const ExtinctionCheck c = extinction_condition(params);
            std::cout << "dbar = " << format_double(c.dbar) << "\n"
                      << "mu_s0 = " << format_double(c.mu_s0) << "\n"
                      << "condition_ce = " << (c.holds ? "true" : "false")
                      << (c.holds ? "  (extinction guaranteed)"
                                  : "  (extinction not guaranteed)")
                      << "\n";
        } else if (*simulate) {
            Trajectory traj;
            if (method == "em") {
                const double path_dt = dt / static_cast<double>(refinement);
                const auto path =
                    WienerPath::generate(seed, 0.0, horizon, path_dt);
                traj = euler_maruyama(params, path, initial, 0.0, horizon, dt,
                                      refinement);
            } else {
                const auto path =
                    WienerPath::generate(seed, -burn_in, horizon, dt);
                const OUPath ou = OUPath::from_wiener(path, burn_in);
                if (method == "conjugated") {
                    traj = simulate_conjugated(params, ou, initial, 0.0,
                                               horizon, dt, seed);
                } else {
                    const RandomState u0 =
                        transform(params, ou.value_at(0.0), initial);
                    traj = rk4_random(params, ou, u0, 0.0, horizon, dt);
                    traj.seed = seed;
                }
            }
            std::ofstream file;
            traj.write_csv(open_sink(file, output), method.c_str());
        } else if (*ensemble) {
            CampaignConfig config;
            config.params = params;
            config.initial = initial;
            config.horizon = horizon;
            config.dt = dt;
            config.refinement = refinement;
            config.seeds = seed_range(seed_base, n_seeds);
            config.thresholds = thresholds;
            config.output_dir = out_dir;
            const auto reports = run_ensemble(config);
            std::filesystem::create_directories(out_dir);
            write_reports_csv(out_dir + "/reports.csv", config.seeds, reports);
            std::size_t ext = 0, per = 0, und = 0;
            for (const auto& r : reports) {
                if (r.verdict == Verdict::extinction) ++ext;
                else if (r.verdict == Verdict::persistence) ++per;
                else ++und;
            }
            std::cout << "seeds = " << reports.size() << "\n"
                      << "extinction = " << ext << "\n"
                      << "persistence = " << per << "\n"
                      << "undetermined = " << und << "\n"
                      << "reports = " << out_dir << "/reports.csv\n";
        } else if (*pullback) {
            std::vector<RandomState> u0_set;
            for (const auto& spec : u0_specs) {
                const auto fields = split_csv_line(spec);
                if (fields.size() != 2) {
                    throw std::invalid_argument(
                        "--u0 expects sigma,kappa pairs");
                }
                u0_set.push_back(
                    {std::stod(fields[0]), std::stod(fields[1])});
            }
            if (u0_set.empty()) {
                // Default: image of the standard initial pair at the fiber.
                const auto path = WienerPath::generate(
                    seed, -t_list.back() - burn_in, 0.0, dt);
                const OUPath ou = OUPath::from_wiener(path, burn_in);
                u0_set.push_back(transform(params, ou.value_at(-t_list.back()),
                                           {2.5, 5.0}));
            }
            const auto results = pullback_experiment(params, seed, u0_set,
                                                     t_list, dt, burn_in);
            std::ofstream file;
            std::ostream& os = open_sink(file, output);
            os << "u0_sigma,u0_kappa,t,sigma,kappa,distance\n";
            for (const auto& r : results) {
                for (std::size_t i = 0; i < r.pullback_times.size(); ++i) {
                    os << format_double(r.u0.sigma) << ","
                       << format_double(r.u0.kappa) << ","
                       << format_double(r.pullback_times[i]) << ","
                       << format_double(r.states_at_zero[i].sigma) << ","
                       << format_double(r.states_at_zero[i].kappa) << ","
                       << format_double(r.distances_to_washout[i]) << "\n";
                }
            }
        } else if (*convergence) {
            const auto result =
                run_convergence(params, initial, conv_horizon, dt_coarse,
                                levels, seed_range(seed_base, conv_seeds));
            std::ofstream file;
            std::ostream& os = open_sink(file, output);
            os << "dt,strong_error,observed_order\n";
            for (const auto& row : result.rows) {
                os << format_double(row.dt) << ","
                   << format_double(row.strong_error) << ","
                   << format_double(row.observed_order) << "\n";
            }
            std::cerr << "fitted order = " << format_double(result.fitted_order)
                      << "\n";
        } else if (*figures) {
            CampaignConfig config;
            config.params = params;
            config.horizon = horizon;
            config.dt = dt;
            config.refinement = refinement;
            config.seeds = seed_range(seed_base, fig_seeds);
            config.output_dir = out_dir;
            const auto dirs = run_figures(config, campaign_key);
            for (const auto& d : dirs) {
                std::cout << d << "\n";
            }
        }
    } catch (const numerical_failure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
