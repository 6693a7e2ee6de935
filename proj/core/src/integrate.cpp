#include "chemostat/integrate.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>

namespace chemostat {

namespace {

void append_double(std::string& out, double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
}

[[noreturn]] void fail_at_step(const char* what, std::size_t step) {
    throw numerical_failure(std::string(what) + " at step " +
                            std::to_string(step));
}

}  // namespace

void Trajectory::write_csv(std::ostream& os, const char* scheme) const {
    std::string head;
    head += "# params s0=";
    append_double(head, params.s0);
    head += " a=";
    append_double(head, params.a);
    head += " m=";
    append_double(head, params.m);
    head += " d=";
    append_double(head, params.d);
    head += " alpha=";
    append_double(head, params.alpha);
    head += "\n# seed ";
    head += std::to_string(seed);
    head += "\n# scheme ";
    head += scheme;
    head += "\n";
    head += kind == TrajectoryKind::stochastic ? "t,S,x\n" : "t,sigma,kappa\n";
    os << head;
    for (std::size_t j = 0; j < states.size(); ++j) {
        std::string line;
        append_double(line, time_at(j));
        line.push_back(',');
        append_double(line, states[j][0]);
        line.push_back(',');
        append_double(line, states[j][1]);
        line.push_back('\n');
        os << line;
    }
}

Trajectory euler_maruyama(const ChemostatParams& p, const WienerPath& path,
                          const StochState& v0, double t0, double t1,
                          double dt_out, std::size_t refinement) {
    p.validate();
    if (refinement == 0) {
        throw std::invalid_argument("euler_maruyama: refinement must be >= 1");
    }
    const double expected = path.dt() * static_cast<double>(refinement);
    if (std::abs(dt_out - expected) > 1e-12 * expected) {
        throw std::invalid_argument(
            "euler_maruyama: dt_out must equal refinement * path dt");
    }
    if (!(t0 < t1)) {
        throw std::invalid_argument("euler_maruyama: empty time span");
    }
    const std::size_t i0 = path.index_of(t0);
    const std::size_t i1 = path.index_of(t1);
    if ((i1 - i0) % refinement != 0) {
        fail_at_step("euler_maruyama: span is not a multiple of dt_out", 0);
    }
    const std::size_t nsteps = (i1 - i0) / refinement;

    Trajectory traj;
    traj.kind = TrajectoryKind::stochastic;
    traj.t0 = t0;
    traj.dt = dt_out;
    traj.params = p;
    traj.seed = path.seed();
    traj.clamp_events = 0;
    traj.states.reserve(nsteps + 1);
    traj.states.push_back({v0.s, v0.x});

    StochState v = v0;
    for (std::size_t j = 0; j < nsteps; ++j) {
        // W(tau_j) - W(tau_{j-1}), aggregated from the fine increments.
        const double dw = path.value_at_index(i0 + (j + 1) * refinement) -
                          path.value_at_index(i0 + j * refinement);
        VectorFields f;
        try {
            f = ito_fields(p, v);
        } catch (const std::domain_error&) {
            fail_at_step("euler_maruyama: pole overshoot", j);
        }
        v.s += f.drift[0] * dt_out + f.diffusion[0] * dw;
        v.x += f.drift[1] * dt_out + f.diffusion[1] * dw;
        if (v.x < 0.0) {
            v.x = 0.0;
            ++traj.clamp_events;
        }
        if (!std::isfinite(v.s) || !std::isfinite(v.x)) {
            fail_at_step("euler_maruyama: non-finite state", j);
        }
        traj.states.push_back({v.s, v.x});
    }
    return traj;
}

Trajectory rk4_random(const ChemostatParams& p, const OUPath& ou,
                      const RandomState& u0, double t0, double t1, double dt) {
    p.validate();
    if (!(dt > 0.0) || !(t0 < t1)) {
        throw std::invalid_argument("rk4_random: bad time span or step");
    }
    const double ratio = dt / ou.dt();
    if (std::abs(ratio - std::round(ratio)) > 1e-9) {
        throw std::invalid_argument(
            "rk4_random: OU grid step must divide dt");
    }
    const double span = (t1 - t0) / dt;
    if (std::abs(span - std::round(span)) > 1e-9) {
        throw std::invalid_argument(
            "rk4_random: span is not a multiple of dt");
    }
    const auto nsteps = static_cast<std::size_t>(std::round(span));

    Trajectory traj;
    traj.kind = TrajectoryKind::random;
    traj.t0 = t0;
    traj.dt = dt;
    traj.params = p;
    traj.seed = 0;
    traj.clamp_events = 0;
    traj.states.reserve(nsteps + 1);
    traj.states.push_back({u0.sigma, u0.kappa});

    RandomState u = u0;
    const bool kappa_axis = u0.kappa == 0.0;  // kappa = 0 is invariant
    for (std::size_t j = 0; j < nsteps; ++j) {
        const double t = t0 + dt * static_cast<double>(j);
        const double z0 = ou.value_near(t);
        const double zh = ou.value_near(t + 0.5 * dt);
        const double z1 = ou.value_near(t + dt);
        try {
            const auto k1 = random_rhs(p, u, z0);
            const auto k2 = random_rhs(
                p, {u.sigma + 0.5 * dt * k1[0], u.kappa + 0.5 * dt * k1[1]}, zh);
            const auto k3 = random_rhs(
                p, {u.sigma + 0.5 * dt * k2[0], u.kappa + 0.5 * dt * k2[1]}, zh);
            const auto k4 = random_rhs(
                p, {u.sigma + dt * k3[0], u.kappa + dt * k3[1]}, z1);
            u.sigma += dt / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
            u.kappa += dt / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
        } catch (const std::domain_error&) {
            fail_at_step("rk4_random: pole overshoot", j);
        }
        if (kappa_axis) {
            u.kappa = 0.0;
        } else if (u.kappa < 0.0) {
            u.kappa = 0.0;
            ++traj.clamp_events;
        }
        if (!std::isfinite(u.sigma) || !std::isfinite(u.kappa)) {
            fail_at_step("rk4_random: non-finite state", j);
        }
        traj.states.push_back({u.sigma, u.kappa});
    }
    return traj;
}

Trajectory simulate_conjugated(const ChemostatParams& p, const OUPath& ou,
                               const StochState& v0, double t0, double t1,
                               double dt, std::uint64_t seed) {
    const RandomState u0 = transform(p, ou.value_at(t0), v0);
    Trajectory random_traj = rk4_random(p, ou, u0, t0, t1, dt);

    Trajectory traj;
    traj.kind = TrajectoryKind::stochastic;
    traj.t0 = t0;
    traj.dt = dt;
    traj.params = p;
    traj.seed = seed;
    traj.clamp_events = random_traj.clamp_events;
    traj.states.reserve(random_traj.size());
    for (std::size_t j = 0; j < random_traj.size(); ++j) {
        const double z = ou.value_at(random_traj.time_at(j));
        const StochState v = transform_inv(
            p, z, {random_traj.states[j][0], random_traj.states[j][1]});
        traj.states.push_back({v.s, v.x});
    }
    return traj;
}

Trajectory simulate_conjugated(const ChemostatParams& p, const WienerPath& path,
                               const StochState& v0, double t0, double t1,
                               double dt, double burn_in) {
    if (path.t_start() > t0 - burn_in + 1e-12) {
        throw std::invalid_argument(
            "simulate_conjugated: path window must reach back to t0 - burn_in");
    }
    const OUPath ou = OUPath::from_wiener(path, burn_in);
    Trajectory traj = simulate_conjugated(p, ou, v0, t0, t1, dt, path.seed());
    return traj;
}

}  // namespace chemostat
