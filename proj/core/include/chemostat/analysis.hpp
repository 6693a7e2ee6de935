#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "chemostat/integrate.hpp"
#include "chemostat/model.hpp"
#include "chemostat/ou.hpp"

namespace chemostat {

/// Fiber data for absorbing-set membership tests: the half-width epsilon
/// and the OU value z*(w) at the fiber.
struct AbsorbingSpec {
    double epsilon;
    double z_at_fiber;
    ChemostatParams params;
};

enum class Verdict { extinction, persistence, undetermined };

const char* verdict_name(Verdict v);

struct ClassificationReport {
    Verdict verdict;
    double dbar;
    double mu_s0;
    bool condition_ce;         // dbar > mu(S0)
    double terminal_biomass;   // x at the final time
    double min_late_biomass;   // min x over the trailing window

    /// Flat key-value text block.
    std::string to_text() const;
    static const char* csv_header();
    std::string to_csv_row(std::uint64_t seed) const;
};

struct ClassifyThresholds {
    double ext_tol = 1e-3;       // terminal biomass below -> extinction
    double persist_floor = 0.05; // late minimum above -> persistence
    double late_window = 0.5;    // trailing fraction of the horizon
};

/// Pullback sweep result for one initial condition: state at time 0 after
/// integrating from -t, per t, and its distance to the wash-out point.
struct PullbackResult {
    RandomState u0;
    std::vector<double> pullback_times;
    std::vector<RandomState> states_at_zero;
    std::vector<double> distances_to_washout;
};

/// Closed-form solution of the sum dynamics:
///   Q(t) = Q0 * exp(-dbar*t - alpha * int_0^t z*(theta_s w) ds),
/// the integral taken by trapezoid on the OU grid.
double q_closed_form(const ChemostatParams& p, const OUPath& ou, double q0,
                     double t);

/// Membership in the closed absorbing set
///   B_eps = { -eps <= sigma+kappa <= eps, sigma >= -(a+S0) e^{alpha z} - eps }
/// intersected with the upper half-plane kappa >= 0.
bool in_absorbing_set(const RandomState& u, const AbsorbingSpec& spec);

/// First grid time after which every subsequent point of a random-kind
/// trajectory stays in the absorbing set; nullopt if there is none.
std::optional<double> absorption_time(const Trajectory& traj,
                                      const AbsorbingSpec& spec);

/// For each initial condition, integrate the random system from -t to 0 on
/// one fixed noise realization (seed) for every t in t_list, recording the
/// state at time 0 and its distance to the origin.
std::vector<PullbackResult> pullback_experiment(
    const ChemostatParams& p, std::uint64_t seed,
    const std::vector<RandomState>& u0_set, const std::vector<double>& t_list,
    double dt, double burn_in = 20.0);

/// Extinction/persistence verdict for a stochastic trajectory.
ClassificationReport classify(const ChemostatParams& p, const Trajectory& traj,
                              const ClassifyThresholds& thresholds = {});

}  // namespace chemostat
