// criteria.hpp — moment tables and the Duan / van Loock-Furusawa entanglement
// measures built on them.
//
// Quadratures are x = a + a^dag and p = -i(a - a^dag), so a vacuum mode has
// Var(x) = Var(p) = 1 and both criteria start at the bound 4.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "spinwave/model.hpp"

namespace spinwave {

enum class SpinConvention {
    ProductState,   // finite-N balanced superposition of the two ground states
    BosonicVacuum,  // spin wave as an empty bosonic mode
};

inline constexpr std::int64_t kDefaultAtomCount = 1'000'000;

// Gain denominators below this are treated as zero.
inline constexpr double kVarianceEpsilon = 1e-12;

// First moments and centered second moments:
//   mean(i)      = <a_i>
//   cov_nn(i, j) = <a_i^dag a_j> - <a_i^dag><a_j>
//   cov_aa(i, j) = <a_i a_j>     - <a_i><a_j>
// Products a_i a_j^dag are reconstructed with the bosonic commutator.
struct MomentTable {
    int n_modes = 0;
    Eigen::VectorXcd mean;
    Eigen::MatrixXcd cov_nn;
    Eigen::MatrixXcd cov_aa;

    static MomentTable vacuum(int n_modes);

    // Max deviation from Hermitian cov_nn / symmetric cov_aa.
    double structure_defect() const;
};

MomentTable initial_moments(SpinConvention convention, int n_modes,
                            std::int64_t n_atoms = kDefaultAtomCount);

MomentTable evolve_moments(const BogoliubovTransform& transform, const MomentTable& initial);

// Real linear combination sum_j (wx_j x_j + wp_j p_j) of quadratures.
struct Quadrature {
    std::map<Mode, double> x;
    std::map<Mode, double> p;
};

// Var of a quadrature combination (centered, exact for Hermitian forms).
double variance(const MomentTable& moments, const Quadrature& q);

// Symmetrized centered covariance 1/2<{p_i, p_j}> - <p_i><p_j>.
double p_covariance(const MomentTable& moments, Mode i, Mode j);

// Var(x1 + x2) + Var(p1 - p2).
double duan_v(const MomentTable& moments);

// Same combination for an arbitrary pair of modes.
double duan_v(const MomentTable& moments, Mode a, Mode b);

// Local phase rotation mode -> e^{i theta} mode, as a transform. Entanglement
// is invariant under it; it aligns the squeezed quadrature pair with x/p.
BogoliubovTransform phase_rotation(int n_modes, Mode mode, double theta);

struct VlfGains {
    std::array<double, 3> g{0.0, 0.0, 0.0};
    std::array<bool, 3> guarded{false, false, false};  // denominator below kVarianceEpsilon
};

VlfGains vlf_gains(const MomentTable& moments);

// (V12, V13, V23) for the given gains.
std::array<double, 3> vlf_correlations(const MomentTable& moments, const std::array<double, 3>& g);

struct PhotonNumber {
    double total;        // <a^dag a>
    double fluctuation;  // centered part
};

PhotonNumber mean_photon(const MomentTable& moments, Mode mode);

// At least two of the three values strictly below 4.
bool tripartite_verdict(const std::array<double, 3>& v);

enum class ReportKind { DuanBipartite, VlfTripartite };

struct EntanglementReport {
    ReportKind kind = ReportKind::DuanBipartite;
    std::array<double, 3> v{0.0, 0.0, 0.0};  // Duan V in v[0] for the bipartite kind
    std::optional<VlfGains> gains;
    bool verdict = false;
    std::vector<PhotonNumber> photon_numbers;  // Field1, Field2[, Field3]
};

// Duan report for 3-mode tables, VLF report (formula gains) for 4-mode tables.
EntanglementReport entanglement_report(const MomentTable& moments);

}  // namespace spinwave
