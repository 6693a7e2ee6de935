#pragma once

#include <array>

namespace chemostat {

/// Model constants. All strictly positive except alpha >= 0.
struct ChemostatParams {
    double s0;     // input nutrient concentration
    double a;      // half-saturation constant
    double m;      // maximal consumption rate
    double d;      // dilution rate
    double alpha;  // noise intensity

    /// Throws std::invalid_argument on a non-admissible parameter set.
    void validate() const;
};

/// Stochastic-coordinates state (S, x). S may go negative; x >= 0.
struct StochState {
    double s;
    double x;
};

/// Random-coordinates state (sigma, kappa) of the conjugated system.
struct RandomState {
    double sigma;
    double kappa;
};

struct VectorFields {
    std::array<double, 2> drift;
    std::array<double, 2> diffusion;
};

struct ExtinctionCheck {
    bool holds;     // dbar > mu(s0)
    double dbar;
    double mu_s0;
};

/// Holling type-II uptake m*S/(a+S). Throws past the pole S <= -a.
double mu(const ChemostatParams& p, double s);

/// Stratonovich-corrected dilution rate D + alpha^2/2.
double dbar(const ChemostatParams& p);

/// Drift and diffusion of the Ito system:
///   dS = [(S0-S)D - mSx/(a+S)] dt + alpha(S0-S) dW
///   dx = x(mS/(a+S) - D) dt     - alpha x     dW
/// Note the Ito drift carries D, not dbar.
VectorFields ito_fields(const ChemostatParams& p, const StochState& v);

/// Right-hand side of the random system in (sigma, kappa), with z the OU
/// value at the current time:
///   sigma' = -(dbar + alpha z) sigma - mu(S0 + sigma e^{-alpha z}) kappa
///   kappa' = -(dbar + alpha z) kappa + mu(S0 + sigma e^{-alpha z}) kappa
/// Evaluated in the pole-robust form mu(S) = m - m a/(a + S0 + sigma e^{-az}).
/// The denominator is guarded: at or below `pole_floor` the evaluation
/// throws instead of returning infinities.
std::array<double, 2> random_rhs(const ChemostatParams& p,
                                 const RandomState& u, double z,
                                 double pole_floor = 1e-12);

/// Conjugating map (S, x) -> ((S - S0) e^{alpha z}, x e^{alpha z}).
RandomState transform(const ChemostatParams& p, double z, const StochState& v);

/// Inverse map (sigma, kappa) -> (S0 + sigma e^{-alpha z}, kappa e^{-alpha z}).
StochState transform_inv(const ChemostatParams& p, double z,
                         const RandomState& u);

/// Extinction sufficiency check dbar > mu(S0), with both quantities reported.
ExtinctionCheck extinction_condition(const ChemostatParams& p);

}  // namespace chemostat
