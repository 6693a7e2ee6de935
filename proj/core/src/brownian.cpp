#include "chemostat/brownian.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>

namespace chemostat {

namespace {

// Checks that `span / dt` is an integer within 1e-12 relative tolerance
// and returns it.
std::size_t step_count(double span, double dt) {
    const double ratio = span / dt;
    const double rounded = std::round(ratio);
    if (rounded < 0.5 || std::abs(ratio - rounded) > 1e-12 * std::max(1.0, ratio)) {
        throw std::invalid_argument(
            "WienerPath: window length is not an integer multiple of dt");
    }
    return static_cast<std::size_t>(rounded);
}

void append_double(std::string& out, double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
}

}  // namespace

struct normal_stream::impl {
    std::mt19937_64 rng;
};

normal_stream::normal_stream(std::uint64_t seed)
    : engine_(new impl{std::mt19937_64(seed)}) {}

normal_stream::~normal_stream() = default;

double normal_stream::uniform01() {
    // 53-bit mantissa uniform in (0, 1]; never 0 so log() below is safe.
    const std::uint64_t bits = engine_->rng() >> 11;
    return (static_cast<double>(bits) + 1.0) * 0x1p-53;
}

double normal_stream::next() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * 3.14159265358979323846 * u2;
    cached_ = r * std::sin(phi);
    has_cached_ = true;
    return r * std::cos(phi);
}

WienerPath WienerPath::from_increments(double t_start, double dt,
                                       std::vector<double> increments,
                                       std::uint64_t seed) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("WienerPath: dt must be positive");
    }
    if (increments.empty()) {
        throw std::invalid_argument("WienerPath: at least one increment required");
    }
    const std::size_t n = increments.size();
    auto cum = std::make_shared<std::vector<double>>(n + 1);
    (*cum)[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        (*cum)[i + 1] = (*cum)[i] + increments[i];
    }

    WienerPath p;
    p.t_start_ = t_start;
    p.dt_ = dt;
    p.n_ = n;
    p.seed_ = seed;
    p.offset_ = 0;
    p.increments_ =
        std::make_shared<std::vector<double>>(std::move(increments));
    p.cumsum_ = std::move(cum);

    // Anchor at the grid point closest to 0 (clamped into the window).
    double k = std::round(-t_start / dt);
    k = std::max(0.0, std::min(static_cast<double>(n), k));
    p.anchor_ = static_cast<std::size_t>(k);
    return p;
}

WienerPath WienerPath::generate(std::uint64_t seed, double t_start,
                                double t_end, double dt) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("WienerPath: dt must be positive");
    }
    if (!(t_start < t_end)) {
        throw std::invalid_argument("WienerPath: t_start must precede t_end");
    }
    const std::size_t n = step_count(t_end - t_start, dt);

    std::vector<double> inc(n);
    normal_stream normals(seed);
    const double scale = std::sqrt(dt);
    for (std::size_t i = 0; i < n; ++i) {
        inc[i] = scale * normals.next();
    }
    return from_increments(t_start, dt, std::move(inc), seed);
}

std::size_t WienerPath::index_of(double t) const {
    const double pos = (t - t_start_) / dt_;
    const double rounded = std::round(pos);
    if (std::abs(pos - rounded) > 1e-9) {
        throw std::invalid_argument("WienerPath: time is off-grid");
    }
    if (rounded < -0.5 || rounded > static_cast<double>(n_) + 0.5) {
        throw std::out_of_range("WienerPath: time outside the path window");
    }
    return static_cast<std::size_t>(rounded);
}

WienerPath WienerPath::shifted(double s) const {
    // The new anchor sits where the old grid hits time s, giving
    // v(t) = w(t + s) - w(s) exactly on indices. s must be on-grid and
    // inside the window.
    const std::size_t j = index_of(s);
    WienerPath v = *this;
    v.t_start_ = t_start_ - s;
    v.anchor_ = j;
    return v;
}

WienerPath WienerPath::coarsened(std::size_t factor) const {
    if (factor == 0 || n_ % factor != 0) {
        throw std::invalid_argument(
            "WienerPath: coarsening factor must divide the increment count");
    }
    if (factor == 1) {
        return *this;
    }
    const std::size_t m = n_ / factor;
    auto inc = std::make_shared<std::vector<double>>(m);
    for (std::size_t j = 0; j < m; ++j) {
        double sum = 0.0;
        for (std::size_t k = 0; k < factor; ++k) {
            sum += increment(j * factor + k);
        }
        (*inc)[j] = sum;
    }
    // Values at shared grid points are taken from the fine cumulative sums,
    // so value_at agrees bit-for-bit with the fine path there.
    auto cum = std::make_shared<std::vector<double>>(m + 1);
    for (std::size_t j = 0; j <= m; ++j) {
        (*cum)[j] = (*cumsum_)[offset_ + j * factor];
    }

    WienerPath p;
    p.t_start_ = t_start_;
    p.dt_ = dt_ * static_cast<double>(factor);
    p.n_ = m;
    p.seed_ = seed_;
    p.offset_ = 0;
    p.increments_ = std::move(inc);
    p.cumsum_ = std::move(cum);
    double k = std::round(-p.t_start_ / p.dt_);
    k = std::max(0.0, std::min(static_cast<double>(m), k));
    p.anchor_ = static_cast<std::size_t>(k);
    return p;
}

void WienerPath::write_csv(std::ostream& os) const {
    std::string line = "t,w\n";
    os << line;
    for (std::size_t i = 0; i <= n_; ++i) {
        line.clear();
        append_double(line, time_at(i));
        line.push_back(',');
        append_double(line, value_at_index(i));
        line.push_back('\n');
        os << line;
    }
}

}  // namespace chemostat
