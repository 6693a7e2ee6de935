#include "chemostat/ou.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace chemostat {

OUPath OUPath::from_wiener(const WienerPath& path, double burn_in) {
    if (!(burn_in >= 0.0)) {
        throw std::invalid_argument("OUPath: burn_in must be >= 0");
    }
    if (burn_in > path.t_end() - path.t_start()) {
        throw std::invalid_argument("OUPath: burn_in exceeds the path window");
    }
    OUPath ou;
    ou.t_start_ = path.t_start();
    ou.dt_ = path.dt();
    ou.burn_in_ = burn_in;

    const double dt = ou.dt_;
    const double decay = std::exp(-dt);
    const double gain = std::sqrt((1.0 - std::exp(-2.0 * dt)) / (2.0 * dt));

    ou.values_.resize(path.steps() + 1);
    double z = 0.0;
    ou.values_[0] = z;
    for (std::size_t k = 0; k < path.steps(); ++k) {
        z = z * decay + gain * path.increment(k);
        ou.values_[k + 1] = z;
    }
    return ou;
}

double OUPath::t_end() const {
    return t_start_ + dt_ * static_cast<double>(values_.size() - 1);
}

std::size_t OUPath::first_served_index() const {
    return static_cast<std::size_t>(std::round(burn_in_ / dt_));
}

std::size_t OUPath::index_of(double t, bool nearest) const {
    const double pos = (t - t_start_) / dt_;
    const double rounded = std::round(pos);
    if (!nearest && std::abs(pos - rounded) > 1e-9) {
        throw std::invalid_argument("OUPath: time is off-grid");
    }
    const auto i = static_cast<long long>(rounded);
    if (i < static_cast<long long>(first_served_index()) ||
        i >= static_cast<long long>(values_.size())) {
        throw std::out_of_range("OUPath: time outside the served window");
    }
    return static_cast<std::size_t>(i);
}

double OUPath::value_at(double t) const { return values_[index_of(t)]; }

double OUPath::value_near(double t) const {
    return values_[index_of(t, /*nearest=*/true)];
}

double OUPath::integrate(double ta, double tb) const {
    if (tb < ta) {
        throw std::invalid_argument("OUPath: integration bounds reversed");
    }
    const std::size_t ia = index_of(ta);
    const std::size_t ib = index_of(tb);
    double sum = 0.0;
    for (std::size_t i = ia; i < ib; ++i) {
        sum += 0.5 * (values_[i] + values_[i + 1]);
    }
    return sum * dt_;
}

ErgodicStats OUPath::ergodic_averages(double t) const {
    const std::size_t i0 = index_of(0.0);
    const std::size_t it = index_of(t);
    if (it <= i0) {
        throw std::invalid_argument("OUPath: horizon must be positive");
    }
    double sum = 0.0;
    double abs_sum = 0.0;
    double sup = 0.0;
    for (std::size_t i = i0; i <= it; ++i) {
        const double w = (i == i0 || i == it) ? 0.5 : 1.0;
        sum += w * values_[i];
        abs_sum += w * std::abs(values_[i]);
        const double ti = t_start_ + dt_ * static_cast<double>(i);
        sup = std::max(sup, std::abs(values_[i]) / (1.0 + std::abs(ti)));
    }
    return {sum * dt_ / t, abs_sum * dt_ / t, sup};
}

void OUPath::write_csv(std::ostream& os) const {
    os << "t,z\n";
    char buf[32];
    for (std::size_t i = first_served_index(); i < values_.size(); ++i) {
        std::string line;
        auto r = std::to_chars(buf, buf + sizeof(buf),
                               t_start_ + dt_ * static_cast<double>(i));
        line.append(buf, r.ptr);
        line.push_back(',');
        r = std::to_chars(buf, buf + sizeof(buf), values_[i]);
        line.append(buf, r.ptr);
        line.push_back('\n');
        os << line;
    }
}

}  // namespace chemostat
