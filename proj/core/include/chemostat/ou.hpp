#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "chemostat/brownian.hpp"

namespace chemostat {

struct ErgodicStats {
    double avg_z;      // (1/t) * trapezoidal integral of z on [0, t]
    double avg_abs_z;  // same with |z|
    double sup_growth; // max over grid of |z(t)| / (1 + |t|)
};

/// Stationary Ornstein-Uhlenbeck realization z*(theta_t w) driving the
/// random system, sampled on the grid of a Wiener path.
///
/// The Langevin equation dz + z dt = dw is integrated with the exact
/// exponential one-step update
///     z_{k+1} = z_k e^{-dt} + c(dt) * dW_k,   c(dt) = sqrt((1-e^{-2dt})/(2dt)),
/// starting from z = 0 at the left edge of the path. The increment scaling
/// c(dt) makes the stationary variance exactly 1/2 at any step size. The
/// leading burn_in stretch of the window absorbs the arbitrary start value
/// (truncation error e^{-burn_in}); values are only served from
/// t_start + burn_in onwards.
class OUPath {
public:
    static OUPath from_wiener(const WienerPath& path, double burn_in = 20.0);

    double valid_start() const { return t_start_ + burn_in_; }
    double t_end() const;
    double dt() const { return dt_; }
    double burn_in() const { return burn_in_; }

    /// z value at an on-grid time in [valid_start, t_end].
    double value_at(double t) const;

    /// z value at the grid point nearest to t (for integrator stage times).
    double value_near(double t) const;

    /// Ergodic statistics over [0, t]; requires 0 and t inside the served
    /// window.
    ErgodicStats ergodic_averages(double t) const;

    /// Trapezoidal integral of z over on-grid [ta, tb].
    double integrate(double ta, double tb) const;

    /// CSV dump of the served window, header `t,z`.
    void write_csv(std::ostream& os) const;

    const std::vector<double>& values() const { return values_; }
    double grid_start() const { return t_start_; }

private:
    double t_start_ = 0.0;  // grid start (= path t_start)
    double dt_ = 0.0;
    double burn_in_ = 0.0;
    std::vector<double> values_;  // one per grid point of the source path

    std::size_t index_of(double t, bool nearest = false) const;
    std::size_t first_served_index() const;
};

}  // namespace chemostat
