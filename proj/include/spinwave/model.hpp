// model.hpp — coupling constants and the closed-form Bogoliubov solutions of the
// spin-wave mediated Stokes/anti-Stokes dynamics.
//
// Units: every rate is measured in units of k1 and every time is the
// dimensionless k1*t.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>

#include "spinwave/errors.hpp"

namespace spinwave {

using Complex = std::complex<double>;

// Guard on |k1^2 - k2^2| (or |k1^2 + k3^2 - k2^2|), in units of k1^2.
inline constexpr double kDegeneracyEpsilon = 1e-6;

enum class Mode : int { Spin = 0, Field1 = 1, Field2 = 2, Field3 = 3 };

std::string_view mode_name(Mode m) noexcept;

inline constexpr int index_of(Mode m) noexcept { return static_cast<int>(m); }

// c-number model constants. k3 absent means the bipartite (S, a1, a2) system.
struct CouplingParams {
    double k1 = 1.0;
    double k2 = 0.0;
    std::optional<double> k3;
    double c = 0.0;  // exchange constant of motion

    bool tripartite() const noexcept { return k3.has_value(); }

    // Number of modes including the spin wave: 3 or 4.
    int n_modes() const noexcept { return tripartite() ? 4 : 3; }

    // k1^2 - k2^2 (bipartite) or k1^2 + k3^2 - k2^2 (tripartite).
    double imbalance() const noexcept;

    // Throws DomainError on k1 <= 0, negative k2/k3 or non-finite values.
    void validate() const;

    // validate() plus the nondegeneracy guard; throws DegenerateCouplingError.
    void require_nondegenerate() const;
};

struct PhysicalCouplings {
    double g = 1.0;           // atom-field coupling coefficient
    double omega_rabi = 1.0;  // Rabi frequency of the scattering field
    std::int64_t n_atoms = 1;
    double delta = 1.0;       // detuning from the excited state
};

// k = g * Omega * sqrt(N_a) / Delta.
double coupling_from_physical(const PhysicalCouplings& phys);

// Principal square root of c^2 - imbalance. Imaginary in the squeezing regime.
Complex beta(const CouplingParams& params);

struct OscillationPeriod {
    double exact;   // 2*pi / |c - beta|
    double approx;  // 4*pi*c / |imbalance|, valid for c >> k
};

// Requires a nondegenerate parameter set with real beta.
OscillationPeriod oscillation_period(const CouplingParams& params);

// sin(beta t)/beta and cos(beta t) as entire functions of beta^2, so both stay
// finite for imaginary beta and for beta -> 0.
Complex sin_over_beta(Complex beta, double t);
Complex cos_beta(Complex beta, double t);

// Linear map from the initial operators to the time-t operators,
//   xi(t) = matrix * xi(0),  xi = (a_S, a_1, ..., a_S^dag, a_1^dag, ...).
class BogoliubovTransform {
public:
    BogoliubovTransform(int n_modes, Eigen::MatrixXcd matrix, double time);

    // Identity transform on n_modes modes.
    static BogoliubovTransform identity(int n_modes);

    int n_modes() const noexcept { return n_modes_; }
    double time() const noexcept { return time_; }
    const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }

    // Coefficient of `in` (or in^dag) in the expansion of out(t).
    Complex coefficient(Mode out, Mode in, bool in_dagger) const;

    // Max |M J M^dag - J| entry.
    double symplectic_defect() const;

    // Max |lower half - conj(swapped upper half)| entry.
    double block_conjugate_defect() const;

private:
    int n_modes_;
    Eigen::MatrixXcd matrix_;
    double time_;
};

BogoliubovTransform bogoliubov_bipartite(const CouplingParams& params, double t);
BogoliubovTransform bogoliubov_tripartite(const CouplingParams& params, double t);

// Dispatches on params.tripartite().
BogoliubovTransform bogoliubov(const CouplingParams& params, double t);

using TransformFn = std::function<BogoliubovTransform(const CouplingParams&, double)>;

// Relative residual of f'' - 2ic f' - imbalance*f = 0 for a single scalar
// function, evaluated with central differences of step h on t_grid:
//   max_t |residual| / max_t (|f''| + 2|c||f'| + |imbalance||f|).
// Zero when f vanishes identically.
double ode_residual(const std::function<Complex(double)>& f, double c, double imbalance,
                    std::span<const double> t_grid, double h);

// Worst relative residual over the coefficient functions of the S(t) row.
double ode_residual(const CouplingParams& params, std::span<const double> t_grid, double h);

}  // namespace spinwave
