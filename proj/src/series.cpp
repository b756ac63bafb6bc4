#include "spinwave/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spinwave/errors.hpp"

namespace spinwave {

std::vector<double> time_grid(double t_max, int steps) {
    if (steps < 2) throw UsageError("time grid needs at least 2 steps");
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw UsageError("t_max must be positive");
    std::vector<double> t(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) t[i] = t_max * static_cast<double>(i) / (steps - 1);
    return t;
}

std::vector<double> extremum_positions(std::span<const double> t, std::span<const double> y,
                                       Extremum kind) {
    if (t.size() != y.size()) throw UsageError("time and value series differ in length");
    std::vector<double> out;
    if (y.size() < 3) return out;
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    const double mid = 0.5 * (*lo + *hi);
    if (*hi == *lo) return out;

    // Sign flipped so that the excursion of interest is always "below".
    const double s = kind == Extremum::Minimum ? 1.0 : -1.0;
    auto below = [&](std::size_t i) { return s * (y[i] - mid) < 0.0; };
    auto crossing = [&](std::size_t i) {  // between i and i+1
        const double f = (mid - y[i]) / (y[i + 1] - y[i]);
        return t[i] + f * (t[i + 1] - t[i]);
    };

    double entry = 0.0;
    bool open = false;
    for (std::size_t i = 0; i + 1 < y.size(); ++i) {
        const bool now = below(i);
        const bool next = below(i + 1);
        if (!now && next) {
            entry = crossing(i);
            open = true;
        } else if (now && !next && open) {
            out.push_back(0.5 * (entry + crossing(i)));
            open = false;
        }
    }
    return out;
}

std::optional<double> empirical_period(std::span<const double> t, std::span<const double> y,
                                       Extremum kind) {
    const auto pos = extremum_positions(t, y, kind);
    if (pos.size() < 2) return std::nullopt;
    return (pos.back() - pos.front()) / static_cast<double>(pos.size() - 1);
}

ScalarMinimum golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                                      double tolerance) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (std::abs(b - a) > tolerance) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

double longest_window(std::span<const double> t, const std::function<bool(std::size_t)>& pred) {
    double best = 0.0;
    std::optional<std::size_t> start;
    for (std::size_t i = 0; i <= t.size(); ++i) {
        const bool ok = i < t.size() && pred(i);
        if (ok && !start) start = i;
        if (!ok && start) {
            best = std::max(best, t[i - 1] - t[*start]);
            start.reset();
        }
    }
    return best;
}

std::size_t argmin(std::span<const double> y) {
    if (y.empty()) throw UsageError("argmin of an empty series");
    return static_cast<std::size_t>(std::min_element(y.begin(), y.end()) - y.begin());
}

std::size_t argmax(std::span<const double> y) {
    if (y.empty()) throw UsageError("argmax of an empty series");
    return static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
}

}  // namespace spinwave
