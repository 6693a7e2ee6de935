#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "chemostat/brownian.hpp"
#include "chemostat/model.hpp"
#include "chemostat/ou.hpp"

namespace chemostat {

enum class TrajectoryKind { stochastic, random };

/// Uniform-grid trajectory of either the stochastic pair (S, x) or the
/// random pair (sigma, kappa).
struct Trajectory {
    TrajectoryKind kind;
    double t0;
    double dt;
    std::vector<std::array<double, 2>> states;  // states[j] at t0 + j*dt
    ChemostatParams params;
    std::uint64_t seed;
    std::size_t clamp_events;  // biomass undershoots clamped to 0

    std::size_t size() const { return states.size(); }
    double time_at(std::size_t j) const {
        return t0 + dt * static_cast<double>(j);
    }
    const std::array<double, 2>& back() const { return states.back(); }

    /// CSV dump with a 3-line `#` metadata header (params, seed, scheme).
    /// Column header is `t,S,x` or `t,sigma,kappa` by kind.
    void write_csv(std::ostream& os, const char* scheme) const;
};

/// Thrown when a step leaves the admissible region (pole overshoot or a
/// non-finite state); carries the offending step index in the message.
class numerical_failure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Euler-Maruyama on the Ito system over [t0, t1] with output step
/// dt_out = refinement * path.dt(). Brownian increments over each output
/// step are aggregated from the fine path. Biomass is clamped to 0 from
/// below after every step; clamp events are counted in the result.
Trajectory euler_maruyama(const ChemostatParams& p, const WienerPath& path,
                          const StochState& v0, double t0, double t1,
                          double dt_out, std::size_t refinement);

/// Classical RK4 on the random system over [t0, t1], with z*(theta_t w)
/// sampled at the OU grid point nearest to each stage time. The OU grid
/// step must divide dt.
Trajectory rk4_random(const ChemostatParams& p, const OUPath& ou,
                      const RandomState& u0, double t0, double t1, double dt);

/// Conjugated simulation of the stochastic system: transform the initial
/// state with z*(t0), integrate the random system (RK4), and map each
/// output state back with z*(t). The OU realization must come from the
/// same Wiener path the direct scheme uses.
Trajectory simulate_conjugated(const ChemostatParams& p, const OUPath& ou,
                               const StochState& v0, double t0, double t1,
                               double dt, std::uint64_t seed = 0);

/// Convenience overload deriving the OU realization from the path itself;
/// the path window must reach back to t0 - burn_in.
Trajectory simulate_conjugated(const ChemostatParams& p, const WienerPath& path,
                               const StochState& v0, double t0, double t1,
                               double dt, double burn_in = 20.0);

}  // namespace chemostat
