#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "spinwave/errors.hpp"
#include "spinwave/series.hpp"

using namespace spinwave;

TEST_CASE("time grid") {
    const auto t = time_grid(2.0, 5);
    REQUIRE(t.size() == 5);
    CHECK(t.front() == 0.0);
    CHECK(t.back() == 2.0);
    CHECK(t[1] == 0.5);
    CHECK_THROWS_AS(time_grid(1.0, 1), UsageError);
    CHECK_THROWS_AS(time_grid(0.0, 10), UsageError);
    CHECK_THROWS_AS(time_grid(-1.0, 10), UsageError);
    CHECK(time_grid(0.001, 2).size() == 2);
}

TEST_CASE("empirical period ignores a fast ripple") {
    const auto t = time_grid(100.0, 8000);
    std::vector<double> y(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        y[i] = 2.0 + std::cos(2.0 * std::numbers::pi * t[i] / 23.0) +
               0.05 * std::sin(2.0 * std::numbers::pi * t[i] / 1.7);
    }
    const auto p = empirical_period(t, y);
    REQUIRE(p.has_value());
    CHECK(*p == doctest::Approx(23.0).epsilon(2e-3));
    const auto q = empirical_period(t, y, Extremum::Maximum);
    REQUIRE(q.has_value());
    CHECK(*q == doctest::Approx(23.0).epsilon(5e-3));
    // One complete excursion is not enough.
    const auto short_t = time_grid(30.0, 300);
    std::vector<double> short_y(short_t.size());
    for (std::size_t i = 0; i < short_t.size(); ++i) short_y[i] = std::cos(2.0 * std::numbers::pi * short_t[i] / 23.0);
    CHECK_FALSE(empirical_period(short_t, short_y).has_value());
    CHECK_THROWS_AS(empirical_period(t, short_y), UsageError);
}

TEST_CASE("golden section") {
    const auto m = golden_section_minimize([](double x) { return (x - 1.25) * (x - 1.25) + 3.0; }, 0.0, 4.0, 1e-10);
    CHECK(m.x == doctest::Approx(1.25).epsilon(1e-8));
    CHECK(m.value == doctest::Approx(3.0));
}

TEST_CASE("longest window and arg extrema") {
    const auto t = time_grid(9.0, 10);
    const std::vector<double> y{5, 1, 1, 1, 5, 1, 1, 1, 1, 5};
    CHECK(longest_window(t, [&](std::size_t i) { return y[i] < 4; }) == doctest::Approx(3.0));
    CHECK(longest_window(t, [&](std::size_t) { return false; }) == 0.0);
    CHECK(argmin(y) == 1);
    CHECK(argmax(y) == 0);
    CHECK_THROWS_AS(argmin(std::vector<double>{}), UsageError);
}
