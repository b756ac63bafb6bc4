#include "spinwave/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace spinwave {

namespace {

constexpr Complex kI{0.0, 1.0};

// Below this |beta t| the power series of sin(x)/x is used.
constexpr double kSeriesThreshold = 0.5;

std::string describe(const CouplingParams& p) {
    std::string s = "k1=" + std::to_string(p.k1) + " k2=" + std::to_string(p.k2);
    if (p.k3) s += " k3=" + std::to_string(*p.k3);
    return s;
}

}  // namespace

std::string_view mode_name(Mode m) noexcept {
    switch (m) {
        case Mode::Spin: return "Spin";
        case Mode::Field1: return "Field1";
        case Mode::Field2: return "Field2";
        case Mode::Field3: return "Field3";
    }
    return "?";
}

double CouplingParams::imbalance() const noexcept {
    const double k3sq = k3 ? (*k3) * (*k3) : 0.0;
    return k1 * k1 + k3sq - k2 * k2;
}

void CouplingParams::validate() const {
    if (!std::isfinite(k1) || !std::isfinite(k2) || !std::isfinite(c) ||
        (k3 && !std::isfinite(*k3))) {
        throw DomainError("coupling parameters must be finite");
    }
    if (k1 <= 0.0) throw DomainError("k1 must be positive");
    if (k2 < 0.0) throw DomainError("k2 must be non-negative");
    if (k3 && *k3 < 0.0) throw DomainError("k3 must be non-negative");
}

void CouplingParams::require_nondegenerate() const {
    validate();
    if (std::abs(imbalance()) <= kDegeneracyEpsilon * k1 * k1) {
        if (tripartite()) {
            throw DegenerateCouplingError(
                "degenerate couplings k1^2 + k3^2 = k2^2 (" + describe(*this) +
                "): closed-form solution undefined");
        }
        throw DegenerateCouplingError(
            "degenerate couplings k1 = k2 (" + describe(*this) +
            "): this case requires stochastic integration and is not supported");
    }
}

double coupling_from_physical(const PhysicalCouplings& phys) {
    if (phys.n_atoms < 1) throw DomainError("n_atoms must be at least 1");
    if (phys.delta == 0.0) throw DomainError("detuning must be nonzero");
    return phys.g * phys.omega_rabi * std::sqrt(static_cast<double>(phys.n_atoms)) / phys.delta;
}

Complex beta(const CouplingParams& params) {
    params.validate();
    return std::sqrt(Complex(params.c * params.c - params.imbalance(), 0.0));
}

OscillationPeriod oscillation_period(const CouplingParams& params) {
    params.require_nondegenerate();
    const double radicand = params.c * params.c - params.imbalance();
    if (radicand <= 0.0) {
        throw DomainError("oscillation period requires real beta (c^2 > imbalance)");
    }
    const double b = std::sqrt(radicand);
    const double d = std::abs(params.imbalance());
    return {2.0 * std::numbers::pi / std::abs(params.c - b),
            4.0 * std::numbers::pi * std::abs(params.c) / d};
}

Complex sin_over_beta(Complex b, double t) {
    const Complex x = b * t;
    if (std::abs(x) < kSeriesThreshold) {
        // t * sum (-x^2)^n / (2n+1)!
        const Complex x2 = x * x;
        Complex term = 1.0;
        Complex sum = 1.0;
        for (int n = 1; n < 16; ++n) {
            term *= -x2 / static_cast<double>((2 * n) * (2 * n + 1));
            sum += term;
        }
        return t * sum;
    }
    return std::sin(x) / b;
}

Complex cos_beta(Complex b, double t) { return std::cos(b * t); }

BogoliubovTransform::BogoliubovTransform(int n_modes, Eigen::MatrixXcd matrix, double time)
    : n_modes_(n_modes), matrix_(std::move(matrix)), time_(time) {
    if (matrix_.rows() != 2 * n_modes || matrix_.cols() != 2 * n_modes) {
        throw UsageError("Bogoliubov matrix must be 2n x 2n");
    }
}

BogoliubovTransform BogoliubovTransform::identity(int n_modes) {
    return {n_modes, Eigen::MatrixXcd::Identity(2 * n_modes, 2 * n_modes), 0.0};
}

Complex BogoliubovTransform::coefficient(Mode out, Mode in, bool in_dagger) const {
    const int o = index_of(out);
    const int i = index_of(in);
    if (o >= n_modes_ || i >= n_modes_) throw UsageError("mode not present in transform");
    return matrix_(o, in_dagger ? i + n_modes_ : i);
}

double BogoliubovTransform::symplectic_defect() const {
    const int n = n_modes_;
    Eigen::VectorXd signs(2 * n);
    signs.head(n).setOnes();
    signs.tail(n).setConstant(-1.0);
    const Eigen::MatrixXcd j = signs.cast<Complex>().asDiagonal();
    return (matrix_ * j * matrix_.adjoint() - j).cwiseAbs().maxCoeff();
}

double BogoliubovTransform::block_conjugate_defect() const {
    const int n = n_modes_;
    const double lower_right = (matrix_.bottomRightCorner(n, n) -
                                matrix_.topLeftCorner(n, n).conjugate()).cwiseAbs().maxCoeff();
    const double lower_left = (matrix_.bottomLeftCorner(n, n) -
                               matrix_.topRightCorner(n, n).conjugate()).cwiseAbs().maxCoeff();
    return std::max(lower_right, lower_left);
}

namespace {

// Shared builder: the tripartite expressions reduce to the bipartite ones with
// k3 = 0, so both arities fill the same coefficient pattern.
BogoliubovTransform build_transform(const CouplingParams& p, double t, int n) {
    if (t < 0.0) throw DomainError("evolution time must be non-negative");
    const double k1 = p.k1;
    const double k2 = p.k2;
    const double k3 = p.k3.value_or(0.0);
    const double c = p.c;
    const double d = p.imbalance();  // c^2 - beta^2

    const Complex b = std::sqrt(Complex(c * c - d, 0.0));
    const Complex sb = sin_over_beta(b, t);
    const Complex cb = cos_beta(b, t);
    const Complex ep = std::exp(kI * (c * t));
    const Complex em = std::exp(-kI * (c * t));

    // Common bracket of the field rows divided by beta*(c^2 - beta^2):
    //   a1, a3 rows: (-1 + cos e^- + i c sin/beta e^-) / d
    //   a2 row:      ( 1 - cos e^+ + i c sin/beta e^+) / d
    const Complex minus_row = (-1.0 + cb * em + kI * c * sb * em) / d;
    const Complex plus_row = (1.0 - cb * ep + kI * c * sb * ep) / d;

    const int s = index_of(Mode::Spin);
    const int a1 = index_of(Mode::Field1);
    const int a2 = index_of(Mode::Field2);
    const int a3 = index_of(Mode::Field3);
    auto dag = [n](int i) { return i + n; };

    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * n, 2 * n);

    m(s, s) = ep * (cb + kI * c * sb);
    m(s, dag(a1)) = -kI * k1 * sb * ep;
    m(s, a2) = -kI * k2 * sb * ep;

    m(a1, dag(s)) = -kI * k1 * sb * em;
    m(a1, a1) = 1.0 + k1 * k1 * minus_row;
    m(a1, dag(a2)) = k1 * k2 * minus_row;

    m(a2, s) = -kI * k2 * sb * ep;
    m(a2, dag(a1)) = k1 * k2 * plus_row;
    m(a2, a2) = 1.0 + k2 * k2 * plus_row;

    if (n == 4) {
        m(s, dag(a3)) = -kI * k3 * sb * ep;
        m(a1, a3) = k1 * k3 * minus_row;
        m(a2, dag(a3)) = k2 * k3 * plus_row;
        m(a3, dag(s)) = -kI * k3 * sb * em;
        m(a3, a1) = k1 * k3 * minus_row;
        m(a3, dag(a2)) = k2 * k3 * minus_row;
        m(a3, a3) = 1.0 + k3 * k3 * minus_row;
    }

    m.bottomRightCorner(n, n) = m.topLeftCorner(n, n).conjugate();
    m.bottomLeftCorner(n, n) = m.topRightCorner(n, n).conjugate();
    return {n, std::move(m), t};
}

}  // namespace

BogoliubovTransform bogoliubov_bipartite(const CouplingParams& params, double t) {
    if (params.tripartite()) throw UsageError("bipartite transform requested with k3 set");
    params.require_nondegenerate();
    return build_transform(params, t, 3);
}

BogoliubovTransform bogoliubov_tripartite(const CouplingParams& params, double t) {
    if (!params.tripartite()) throw UsageError("tripartite transform requires k3");
    params.require_nondegenerate();
    return build_transform(params, t, 4);
}

BogoliubovTransform bogoliubov(const CouplingParams& params, double t) {
    return params.tripartite() ? bogoliubov_tripartite(params, t)
                               : bogoliubov_bipartite(params, t);
}

double ode_residual(const std::function<Complex(double)>& f, double c, double imbalance,
                    std::span<const double> t_grid, double h) {
    double worst_residual = 0.0;
    double worst_scale = 0.0;
    for (const double t : t_grid) {
        const Complex fm = f(t - h);
        const Complex f0 = f(t);
        const Complex fp = f(t + h);
        const Complex d1 = (fp - fm) / (2.0 * h);
        const Complex d2 = (fp - 2.0 * f0 + fm) / (h * h);
        const Complex r = d2 - 2.0 * kI * c * d1 - imbalance * f0;
        worst_residual = std::max(worst_residual, std::abs(r));
        worst_scale = std::max(worst_scale, std::abs(d2) + 2.0 * std::abs(c) * std::abs(d1) +
                                                std::abs(imbalance) * std::abs(f0));
    }
    return worst_scale > 0.0 ? worst_residual / worst_scale : 0.0;
}

double ode_residual(const CouplingParams& params, std::span<const double> t_grid, double h) {
    params.require_nondegenerate();
    const int n = params.n_modes();
    double worst = 0.0;
    for (int col = 0; col < 2 * n; ++col) {
        // The closed form is defined for t >= 0 only; the stencil is shifted
        // forward by h when a grid point sits at the origin.
        auto coefficient = [&](double t) {
            return bogoliubov(params, t).matrix()(index_of(Mode::Spin), col);
        };
        std::vector<double> shifted(t_grid.begin(), t_grid.end());
        for (double& t : shifted) t = std::max(t, h);
        worst = std::max(worst, ode_residual(coefficient, params.c, params.imbalance(),
                                             shifted, h));
    }
    return worst;
}

}  // namespace spinwave
