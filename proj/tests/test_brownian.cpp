#include <stdexcept>
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "chemostat/brownian.hpp"

using chemostat::WienerPath;

TEST_CASE("generation rejects bad arguments") {
    CHECK_THROWS_AS(WienerPath::generate(1, 0.0, 1.0, -0.1),
                    std::invalid_argument);
    CHECK_THROWS_AS(WienerPath::generate(1, 0.0, 1.0, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(WienerPath::generate(1, 1.0, 0.0, 0.1),
                    std::invalid_argument);
    CHECK_THROWS_AS(WienerPath::generate(1, 1.0, 1.0, 0.1),
                    std::invalid_argument);
    // interval not divisible by dt
    CHECK_THROWS_AS(WienerPath::generate(1, 0.0, 1.0, 0.3),
                    std::invalid_argument);
}

TEST_CASE("step count and anchoring") {
    const auto p = WienerPath::generate(7, 0.0, 1.0, 0.5);
    CHECK(p.steps() == 2);

    const auto q = WienerPath::generate(7, -10.0, 10.0, 0.01);
    CHECK(q.steps() == 2000);
    CHECK(q.value_at(0.0) == 0.0);
    // telescoping partial sums
    double left_sum = 0.0;
    for (std::size_t i = 0; i < q.anchor_index(); ++i) {
        left_sum += q.increment(i);
    }
    CHECK(q.value_at(-10.0) == doctest::Approx(-left_sum).epsilon(1e-12));
    double right_sum = 0.0;
    for (std::size_t i = q.anchor_index(); i < q.steps(); ++i) {
        right_sum += q.increment(i);
    }
    CHECK(q.value_at(10.0) - q.value_at(0.0) ==
          doctest::Approx(right_sum).epsilon(1e-12));
}

TEST_CASE("identical seeds give bit-identical paths") {
    const auto a = WienerPath::generate(42, -1.0, 2.0, 0.01);
    const auto b = WienerPath::generate(42, -1.0, 2.0, 0.01);
    for (std::size_t i = 0; i < a.steps(); ++i) {
        CHECK(a.increment(i) == b.increment(i));
    }
    const auto c = WienerPath::generate(43, -1.0, 2.0, 0.01);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.steps(); ++i) {
        any_diff = any_diff || a.increment(i) != c.increment(i);
    }
    CHECK(any_diff);
}

TEST_CASE("value_at rejects off-grid and out-of-window times") {
    const auto p = WienerPath::generate(1, -1.0, 1.0, 0.1);
    CHECK_THROWS_AS(p.value_at(0.05), std::invalid_argument);
    CHECK_THROWS_AS(p.value_at(1.5), std::out_of_range);
    CHECK_THROWS_AS(p.value_at(-1.2), std::out_of_range);
}

TEST_CASE("shift satisfies the Wiener flow on indices") {
    const auto p = WienerPath::generate(5, -5.0, 5.0, 0.25);

    const auto id = p.shifted(0.0);
    for (std::size_t i = 0; i <= p.steps(); ++i) {
        CHECK(id.value_at_index(i) == p.value_at_index(i));
    }

    // v(t) = w(t+s) - w(s), and v(0) = 0 for any s
    for (double s : {-2.0, -0.25, 1.5, 4.0}) {
        const auto v = p.shifted(s);
        CHECK(v.value_at(0.0) == 0.0);
        for (double t : {-1.0, 0.5, 0.75}) {
            if (t + s < -5.0 || t + s > 5.0) continue;
            CHECK(v.value_at(t) ==
                  doctest::Approx(p.value_at(t + s) - p.value_at(s))
                      .epsilon(1e-13));
        }
    }

    // composition is exact: shift(shift(p,1),2) == shift(p,3) pointwise
    const auto two_step = p.shifted(1.0).shifted(2.0);
    const auto one_step = p.shifted(3.0);
    for (std::size_t i = 0; i <= p.steps(); ++i) {
        CHECK(two_step.value_at_index(i) == one_step.value_at_index(i));
    }
}

TEST_CASE("coarsening aggregates increments and preserves shared values") {
    const auto p = WienerPath::generate(9, 0.0, 1.0, 0.25);

    const auto same = p.coarsened(1);
    CHECK(same.steps() == p.steps());
    CHECK(same.value_at(1.0) == p.value_at(1.0));

    const auto c = p.coarsened(2);
    REQUIRE(c.steps() == 2);
    CHECK(c.increment(0) == p.increment(0) + p.increment(1));
    CHECK(c.increment(1) == p.increment(2) + p.increment(3));
    CHECK(c.value_at(0.0) == p.value_at(0.0));
    CHECK(c.value_at(0.5) == p.value_at(0.5));
    CHECK(c.value_at(1.0) == p.value_at(1.0));

    CHECK_THROWS_AS(p.coarsened(3), std::invalid_argument);
    CHECK_THROWS_AS(p.coarsened(0), std::invalid_argument);
}

TEST_CASE("coarsening consistency across factors, window containing 0") {
    const auto p = WienerPath::generate(11, -3.0, 3.0, 0.0625);
    for (std::size_t factor : {2, 4, 8, 16}) {
        const auto c = p.coarsened(factor);
        for (std::size_t j = 0; j <= c.steps(); ++j) {
            CHECK(c.value_at_index(j) == p.value_at_index(j * factor));
        }
    }
}

TEST_CASE("increment moments match Normal(0, dt)") {
    // Fixed seed, 1e5 increments at dt = 0.01: sample mean within 3e-4 and
    // sample variance within 5% of dt.
    const double dt = 0.01;
    const auto p = WienerPath::generate(2024, 0.0, 1000.0, dt);
    REQUIRE(p.steps() == 100000);
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t i = 0; i < p.steps(); ++i) {
        sum += p.increment(i);
        sum2 += p.increment(i) * p.increment(i);
    }
    const auto n = static_cast<double>(p.steps());
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::abs(mean) < 3e-4);
    CHECK(std::abs(var - dt) < 0.05 * dt);
}

TEST_CASE("csv dump has one row per grid point") {
    const auto p = WienerPath::generate(3, 0.0, 0.5, 0.25);
    std::ostringstream os;
    p.write_csv(os);
    const std::string text = os.str();
    CHECK(text.rfind("t,w\n", 0) == 0);
    std::size_t rows = 0;
    for (char ch : text) {
        if (ch == '\n') ++rows;
    }
    CHECK(rows == 1 + p.steps() + 1);
}

TEST_CASE("from_increments replays a given path") {
    const auto p =
        WienerPath::from_increments(-0.5, 0.25, {0.1, -0.2, 0.3, 0.05});
    CHECK(p.steps() == 4);
    CHECK(p.value_at(0.0) == 0.0);
    CHECK(p.value_at(-0.5) == doctest::Approx(-(0.1 - 0.2)).epsilon(1e-15));
}
