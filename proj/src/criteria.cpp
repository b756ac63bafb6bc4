#include "spinwave/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace spinwave {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_modes(const MomentTable& m, int needed, const char* what) {
    if (m.n_modes < needed) {
        throw UsageError(std::string(what) + " needs at least " + std::to_string(needed) +
                         " modes, table has " + std::to_string(m.n_modes));
    }
}

// Coefficient vector of a quadrature combination over xi = (a, a^dag).
Eigen::VectorXcd coefficients(const MomentTable& m, const Quadrature& q) {
    const int n = m.n_modes;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * n);
    for (const auto& [mode, w] : q.x) {
        const int j = index_of(mode);
        if (j >= n) throw UsageError("quadrature refers to a mode outside the table");
        v(j) += w;
        v(j + n) += w;
    }
    for (const auto& [mode, w] : q.p) {
        const int j = index_of(mode);
        if (j >= n) throw UsageError("quadrature refers to a mode outside the table");
        v(j) += -kI * w;
        v(j + n) += kI * w;
    }
    return v;
}

// G(k, l) = <xi_k xi_l> - <xi_k><xi_l>.
Eigen::MatrixXcd ordered_products(const MomentTable& m) {
    const int n = m.n_modes;
    Eigen::MatrixXcd g(2 * n, 2 * n);
    g.topLeftCorner(n, n) = m.cov_aa;
    g.topRightCorner(n, n) = m.cov_nn.transpose() + Eigen::MatrixXcd::Identity(n, n);
    g.bottomLeftCorner(n, n) = m.cov_nn;
    g.bottomRightCorner(n, n) = m.cov_aa.conjugate();
    return g;
}

double symmetric_covariance(const MomentTable& m, const Quadrature& a, const Quadrature& b) {
    const Eigen::MatrixXcd g = ordered_products(m);
    const Eigen::VectorXcd va = coefficients(m, a);
    const Eigen::VectorXcd vb = coefficients(m, b);
    const Complex ab = va.transpose() * g * vb;
    const Complex ba = vb.transpose() * g * va;
    return 0.5 * (ab + ba).real();
}

// Rounding can push a vanishing variance slightly negative.
double clamp_variance(double v) { return std::max(v, 0.0); }

}  // namespace

MomentTable MomentTable::vacuum(int n_modes) {
    MomentTable t;
    t.n_modes = n_modes;
    t.mean = Eigen::VectorXcd::Zero(n_modes);
    t.cov_nn = Eigen::MatrixXcd::Zero(n_modes, n_modes);
    t.cov_aa = Eigen::MatrixXcd::Zero(n_modes, n_modes);
    return t;
}

double MomentTable::structure_defect() const {
    return std::max((cov_nn - cov_nn.adjoint()).cwiseAbs().maxCoeff(),
                    (cov_aa - cov_aa.transpose()).cwiseAbs().maxCoeff());
}

MomentTable initial_moments(SpinConvention convention, int n_modes, std::int64_t n_atoms) {
    if (n_modes != 3 && n_modes != 4) throw UsageError("initial moments need 3 or 4 modes");
    MomentTable t = MomentTable::vacuum(n_modes);
    if (convention == SpinConvention::ProductState) {
        if (n_atoms < 2) throw DomainError("product-state spin convention needs n_atoms >= 2");
        const int s = index_of(Mode::Spin);
        // <S> = sqrt(N)/2, <S^dag S> = (N+1)/4, <S^2> = (N-1)/4.
        t.mean(s) = std::sqrt(static_cast<double>(n_atoms)) / 2.0;
        t.cov_nn(s, s) = 0.25;
        t.cov_aa(s, s) = -0.25;
    }
    return t;
}

MomentTable evolve_moments(const BogoliubovTransform& transform, const MomentTable& initial) {
    const int n = initial.n_modes;
    if (transform.n_modes() != n) {
        throw UsageError("transform acts on " + std::to_string(transform.n_modes()) +
                         " modes, moment table has " + std::to_string(n));
    }
    const Eigen::MatrixXcd& m = transform.matrix();

    Eigen::VectorXcd stacked(2 * n);
    stacked << initial.mean, initial.mean.conjugate();

    // sigma(k, l) = <xi_k xi_l^dag>_c, propagated as M sigma M^dag.
    Eigen::MatrixXcd sigma(2 * n, 2 * n);
    sigma.topLeftCorner(n, n) = initial.cov_nn.transpose() + Eigen::MatrixXcd::Identity(n, n);
    sigma.topRightCorner(n, n) = initial.cov_aa;
    sigma.bottomLeftCorner(n, n) = initial.cov_aa.conjugate();
    sigma.bottomRightCorner(n, n) = initial.cov_nn;
    const Eigen::MatrixXcd out = m * sigma * m.adjoint();

    MomentTable result;
    result.n_modes = n;
    result.mean = m.topRows(n) * stacked;
    result.cov_nn = out.bottomRightCorner(n, n);
    result.cov_aa = out.topRightCorner(n, n);
    return result;
}

double variance(const MomentTable& moments, const Quadrature& q) {
    return clamp_variance(symmetric_covariance(moments, q, q));
}

double p_covariance(const MomentTable& moments, Mode i, Mode j) {
    return symmetric_covariance(moments, Quadrature{{}, {{i, 1.0}}}, Quadrature{{}, {{j, 1.0}}});
}

double duan_v(const MomentTable& moments) {
    require_modes(moments, 3, "Duan criterion");
    return duan_v(moments, Mode::Field1, Mode::Field2);
}

double duan_v(const MomentTable& moments, Mode a, Mode b) {
    if (a == b) throw UsageError("Duan criterion needs two distinct modes");
    return variance(moments, {{{a, 1.0}, {b, 1.0}}, {}}) +
           variance(moments, {{}, {{a, 1.0}, {b, -1.0}}});
}

BogoliubovTransform phase_rotation(int n_modes, Mode mode, double theta) {
    const int j = index_of(mode);
    if (j >= n_modes) throw UsageError("mode not present in transform");
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2 * n_modes, 2 * n_modes);
    m(j, j) = std::exp(kI * theta);
    m(j + n_modes, j + n_modes) = std::exp(-kI * theta);
    return {n_modes, std::move(m), 0.0};
}

VlfGains vlf_gains(const MomentTable& moments) {
    require_modes(moments, 4, "VLF gains");
    using enum Mode;
    const double c11 = p_covariance(moments, Field1, Field1);
    const double c22 = p_covariance(moments, Field2, Field2);
    const double c33 = p_covariance(moments, Field3, Field3);
    const double c12 = p_covariance(moments, Field1, Field2);
    const double c13 = p_covariance(moments, Field1, Field3);
    const double c23 = p_covariance(moments, Field2, Field3);

    VlfGains out;
    const std::array<double, 3> numerators{-(c12 - c13), -(c12 + c23), -(c13 - c23)};
    const std::array<double, 3> denominators{c11, c22, c33};
    for (std::size_t i = 0; i < 3; ++i) {
        if (std::abs(denominators[i]) < kVarianceEpsilon) {
            out.guarded[i] = true;
        } else {
            out.g[i] = numerators[i] / denominators[i];
        }
    }
    return out;
}

std::array<double, 3> vlf_correlations(const MomentTable& moments, const std::array<double, 3>& g) {
    require_modes(moments, 4, "VLF correlations");
    using enum Mode;
    const double v12 = variance(moments, {{{Field1, 1.0}, {Field2, 1.0}}, {}}) +
                       variance(moments, {{}, {{Field1, 1.0}, {Field2, -1.0}, {Field3, g[2]}}});
    const double v13 = variance(moments, {{{Field1, 1.0}, {Field3, -1.0}}, {}}) +
                       variance(moments, {{}, {{Field1, 1.0}, {Field2, g[1]}, {Field3, 1.0}}});
    const double v23 = variance(moments, {{{Field2, 1.0}, {Field3, 1.0}}, {}}) +
                       variance(moments, {{}, {{Field1, g[0]}, {Field2, 1.0}, {Field3, -1.0}}});
    return {v12, v13, v23};
}

PhotonNumber mean_photon(const MomentTable& moments, Mode mode) {
    if (mode == Mode::Spin) throw UsageError("photon number requested for the spin mode");
    const int j = index_of(mode);
    if (j >= moments.n_modes) throw UsageError("mode not present in moment table");
    const double fluct = clamp_variance(moments.cov_nn(j, j).real());
    return {fluct + std::norm(moments.mean(j)), fluct};
}

bool tripartite_verdict(const std::array<double, 3>& v) {
    return std::count_if(v.begin(), v.end(), [](double x) { return x < 4.0; }) >= 2;
}

EntanglementReport entanglement_report(const MomentTable& moments) {
    EntanglementReport r;
    const int fields = moments.n_modes - 1;
    for (int j = 1; j <= fields; ++j) {
        r.photon_numbers.push_back(mean_photon(moments, static_cast<Mode>(j)));
    }
    if (moments.n_modes == 4) {
        r.kind = ReportKind::VlfTripartite;
        r.gains = vlf_gains(moments);
        r.v = vlf_correlations(moments, r.gains->g);
        r.verdict = tripartite_verdict(r.v);
    } else {
        r.kind = ReportKind::DuanBipartite;
        r.v = {duan_v(moments), 0.0, 0.0};
        r.verdict = r.v[0] < 4.0;
    }
    return r;
}

}  // namespace spinwave
