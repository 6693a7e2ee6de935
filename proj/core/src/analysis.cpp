#include "chemostat/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace chemostat {

namespace {

void append_double(std::string& out, double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
}

}  // namespace

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::extinction: return "Extinction";
        case Verdict::persistence: return "Persistence";
        default: return "Undetermined";
    }
}

std::string ClassificationReport::to_text() const {
    std::string out;
    out += "verdict = ";
    out += verdict_name(verdict);
    out += "\ndbar = ";
    append_double(out, dbar);
    out += "\nmu_s0 = ";
    append_double(out, mu_s0);
    out += "\ncondition_ce = ";
    out += condition_ce ? "true" : "false";
    out += "\nterminal_biomass = ";
    append_double(out, terminal_biomass);
    out += "\nmin_late_biomass = ";
    append_double(out, min_late_biomass);
    out += "\n";
    return out;
}

const char* ClassificationReport::csv_header() {
    return "seed,verdict,dbar,mu_s0,condition_ce,terminal_biomass,min_late_biomass";
}

std::string ClassificationReport::to_csv_row(std::uint64_t seed) const {
    std::string out = std::to_string(seed);
    out.push_back(',');
    out += verdict_name(verdict);
    out.push_back(',');
    append_double(out, dbar);
    out.push_back(',');
    append_double(out, mu_s0);
    out.push_back(',');
    out += condition_ce ? "true" : "false";
    out.push_back(',');
    append_double(out, terminal_biomass);
    out.push_back(',');
    append_double(out, min_late_biomass);
    return out;
}

double q_closed_form(const ChemostatParams& p, const OUPath& ou, double q0,
                     double t) {
    const double integral = t >= 0.0 ? ou.integrate(0.0, t) : -ou.integrate(t, 0.0);
    return q0 * std::exp(-dbar(p) * t - p.alpha * integral);
}

bool in_absorbing_set(const RandomState& u, const AbsorbingSpec& spec) {
    if (u.kappa < 0.0) {
        return false;
    }
    const double q = u.sigma + u.kappa;
    if (q < -spec.epsilon || q > spec.epsilon) {
        return false;
    }
    const double wall = -(spec.params.a + spec.params.s0) *
                            std::exp(spec.params.alpha * spec.z_at_fiber) -
                        spec.epsilon;
    return u.sigma >= wall;
}

std::optional<double> absorption_time(const Trajectory& traj,
                                      const AbsorbingSpec& spec) {
    if (traj.kind != TrajectoryKind::random) {
        throw std::invalid_argument(
            "absorption_time: trajectory must be random-kind");
    }
    // Scan backwards for the last point outside the set.
    std::size_t first_inside = 0;
    for (std::size_t j = traj.size(); j-- > 0;) {
        if (!in_absorbing_set({traj.states[j][0], traj.states[j][1]}, spec)) {
            if (j + 1 >= traj.size()) {
                return std::nullopt;  // final point is outside
            }
            first_inside = j + 1;
            break;
        }
    }
    return traj.time_at(first_inside);
}

std::vector<PullbackResult> pullback_experiment(
    const ChemostatParams& p, std::uint64_t seed,
    const std::vector<RandomState>& u0_set, const std::vector<double>& t_list,
    double dt, double burn_in) {
    if (t_list.empty() || !std::is_sorted(t_list.begin(), t_list.end())) {
        throw std::invalid_argument(
            "pullback_experiment: t_list must be non-empty and increasing");
    }
    const double t_max = t_list.back();
    // One fixed realization w covering [-t_max - burn_in, 0].
    const WienerPath path =
        WienerPath::generate(seed, -t_max - burn_in, 0.0, dt);
    const OUPath ou = OUPath::from_wiener(path, burn_in);

    std::vector<PullbackResult> results;
    results.reserve(u0_set.size());
    for (const RandomState& u0 : u0_set) {
        PullbackResult r;
        r.u0 = u0;
        for (double t : t_list) {
            const Trajectory traj = rk4_random(p, ou, u0, -t, 0.0, dt);
            const RandomState at_zero{traj.back()[0], traj.back()[1]};
            r.pullback_times.push_back(t);
            r.states_at_zero.push_back(at_zero);
            r.distances_to_washout.push_back(
                std::hypot(at_zero.sigma, at_zero.kappa));
        }
        results.push_back(std::move(r));
    }
    return results;
}

ClassificationReport classify(const ChemostatParams& p, const Trajectory& traj,
                              const ClassifyThresholds& thresholds) {
    if (traj.kind != TrajectoryKind::stochastic) {
        throw std::invalid_argument("classify: trajectory must be stochastic-kind");
    }
    if (traj.size() < 2) {
        throw std::invalid_argument("classify: trajectory too short");
    }
    const auto n = traj.size() - 1;  // step count
    const auto window_steps = static_cast<std::size_t>(
        std::round(thresholds.late_window * static_cast<double>(n)));
    if (window_steps == 0 || window_steps > n) {
        throw std::invalid_argument("classify: late window exceeds trajectory");
    }

    double min_late = traj.states[n - window_steps][1];
    for (std::size_t j = n - window_steps; j <= n; ++j) {
        min_late = std::min(min_late, traj.states[j][1]);
    }
    const double terminal = traj.states[n][1];
    const ExtinctionCheck ce = extinction_condition(p);

    Verdict verdict = Verdict::undetermined;
    if (terminal < thresholds.ext_tol) {
        verdict = Verdict::extinction;
    } else if (min_late > thresholds.persist_floor) {
        verdict = Verdict::persistence;
    }
    return {verdict, ce.dbar, ce.mu_s0, ce.holds, terminal, min_late};
}

}  // namespace chemostat
