#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace chemostat {

/// Seeded two-sided discrete Wiener path on a uniform grid.
///
/// The path is represented by its increments over one finite window
/// [t_start, t_end] containing the anchor point closest to 0, where the
/// path value is exactly 0. Values at grid points are partial sums of
/// increments relative to the anchor. All shift/coarsen algebra works on
/// indices, so repeated shifts compose without floating drift.
///
/// Generator: increments are Normal(0, dt) draws produced by mt19937_64
/// and a Box-Muller transform (see normal_stream). Identical
/// (seed, t_start, t_end, dt) give bit-identical increments on any
/// platform.
class WienerPath {
public:
    static WienerPath generate(std::uint64_t seed, double t_start,
                               double t_end, double dt);

    /// Build a path from explicit increments (replay, testing).
    static WienerPath from_increments(double t_start, double dt,
                                      std::vector<double> increments,
                                      std::uint64_t seed = 0);

    double t_start() const { return t_start_; }
    double t_end() const { return t_start_ + static_cast<double>(n_) * dt_; }
    double dt() const { return dt_; }
    std::uint64_t seed() const { return seed_; }

    /// Number of increments (= number of grid intervals).
    std::size_t steps() const { return n_; }

    double increment(std::size_t i) const { return (*increments_)[offset_ + i]; }

    /// Grid point time for index i in [0, steps()].
    double time_at(std::size_t i) const {
        return t_start_ + static_cast<double>(i) * dt_;
    }

    /// Grid index of time t; throws if t is off-grid or outside the window.
    std::size_t index_of(double t) const;

    /// Path value at grid index i, anchored so the value at the grid point
    /// closest to 0 is exactly 0.
    double value_at_index(std::size_t i) const {
        return (*cumsum_)[offset_ + i] - (*cumsum_)[offset_ + anchor_];
    }

    double value_at(double t) const { return value_at_index(index_of(t)); }

    /// Index of the anchor grid point (closest to t = 0).
    std::size_t anchor_index() const { return anchor_; }

    /// Wiener shift: v(t) = w(t + s) - w(s). The shift amount s must be a
    /// grid multiple; the view shares increment storage with this path and
    /// covers [t_start - s, t_end - s].
    WienerPath shifted(double s) const;

    /// Aggregate groups of `factor` consecutive increments into one. The
    /// coarse path agrees with the fine one at shared grid points.
    WienerPath coarsened(std::size_t factor) const;

    /// CSV dump, header `t,w`, one row per grid point.
    void write_csv(std::ostream& os) const;

private:
    WienerPath() = default;

    double t_start_ = 0.0;
    double dt_ = 0.0;
    std::size_t n_ = 0;
    std::uint64_t seed_ = 0;
    std::size_t offset_ = 0;  // index into shared storage of grid point 0
    std::size_t anchor_ = 0;  // local index of the grid point closest to 0
    std::shared_ptr<const std::vector<double>> increments_;
    std::shared_ptr<const std::vector<double>> cumsum_;  // size n+1 in storage
};

/// Deterministic stream of standard normal deviates: mt19937_64 uniforms
/// mapped through Box-Muller. std::normal_distribution is not pinned by
/// the standard, so the transform is spelled out here; seeded runs are
/// bit-portable across compilers.
class normal_stream {
public:
    explicit normal_stream(std::uint64_t seed);
    ~normal_stream();
    normal_stream(const normal_stream&) = delete;
    normal_stream& operator=(const normal_stream&) = delete;
    double next();

private:
    double uniform01();
    struct impl;
    std::unique_ptr<impl> engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace chemostat
