#include "chemostat/model.hpp"

#include <cmath>
#include <stdexcept>

namespace chemostat {

void ChemostatParams::validate() const {
    if (!(s0 > 0.0) || !(a > 0.0) || !(m > 0.0) || !(d > 0.0)) {
        throw std::invalid_argument(
            "ChemostatParams: s0, a, m, d must be strictly positive");
    }
    if (!(alpha >= 0.0)) {
        throw std::invalid_argument("ChemostatParams: alpha must be >= 0");
    }
}

double mu(const ChemostatParams& p, double s) {
    if (!(s > -p.a)) {
        throw std::domain_error("mu: S is at or beyond the pole S = -a");
    }
    return p.m * s / (p.a + s);
}

double dbar(const ChemostatParams& p) { return p.d + 0.5 * p.alpha * p.alpha; }

VectorFields ito_fields(const ChemostatParams& p, const StochState& v) {
    const double uptake = mu(p, v.s);
    VectorFields f;
    f.drift = {(p.s0 - v.s) * p.d - uptake * v.x, v.x * (uptake - p.d)};
    f.diffusion = {p.alpha * (p.s0 - v.s), -p.alpha * v.x};
    return f;
}

std::array<double, 2> random_rhs(const ChemostatParams& p,
                                 const RandomState& u, double z,
                                 double pole_floor) {
    const double decay = dbar(p) + p.alpha * z;
    const double denom = p.a + p.s0 + u.sigma * std::exp(-p.alpha * z);
    if (!(denom > pole_floor)) {
        throw std::domain_error(
            "random_rhs: state at or beyond the pole a + S0 + sigma e^{-az} = 0");
    }
    const double correction = p.m * p.a / denom * u.kappa;
    return {-decay * u.sigma - p.m * u.kappa + correction,
            -decay * u.kappa + p.m * u.kappa - correction};
}

RandomState transform(const ChemostatParams& p, double z, const StochState& v) {
    const double scale = std::exp(p.alpha * z);
    return {(v.s - p.s0) * scale, v.x * scale};
}

StochState transform_inv(const ChemostatParams& p, double z,
                         const RandomState& u) {
    const double scale = std::exp(-p.alpha * z);
    return {p.s0 + u.sigma * scale, u.kappa * scale};
}

ExtinctionCheck extinction_condition(const ChemostatParams& p) {
    const double db = dbar(p);
    const double ms = mu(p, p.s0);
    return {db > ms, db, ms};
}

}  // namespace chemostat
