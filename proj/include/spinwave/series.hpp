// series.hpp — helpers for analysing sampled time series.

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace spinwave {

enum class Extremum { Minimum, Maximum };

// Evenly spaced grid of `steps` points on [0, t_max].
std::vector<double> time_grid(double t_max, int steps);

// Period from successive extrema. Each excursion past the midline
// (min + max) / 2 marks one extremum; its position is the midpoint of the two
// linearly interpolated midline crossings, which is insensitive to small
// ripples riding on the main oscillation. Excursions cut by the ends of the
// series are ignored. Returns the mean spacing, or nullopt with fewer than two
// complete excursions.
std::optional<double> empirical_period(std::span<const double> t, std::span<const double> y,
                                       Extremum kind = Extremum::Minimum);

// Positions used by empirical_period.
std::vector<double> extremum_positions(std::span<const double> t, std::span<const double> y,
                                       Extremum kind);

struct ScalarMinimum {
    double x;
    double value;
};

// Golden-section search on [lo, hi].
ScalarMinimum golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                                      double tolerance = 1e-9);

// Width t[last] - t[first] of the longest run of consecutive samples where
// pred(i) holds; 0 if no run has two samples.
double longest_window(std::span<const double> t, const std::function<bool(std::size_t)>& pred);

std::size_t argmin(std::span<const double> y);
std::size_t argmax(std::span<const double> y);

}  // namespace spinwave
