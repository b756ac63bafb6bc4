// oracle.hpp — brute-force reference computations: truncated Fock-space
// Schrodinger evolution of the quadratic spin-wave Hamiltonians and exact
// enumeration of the finite-N collective spin moments.
//
// Mode index 0 is the spin wave and is the slowest-varying index of the
// product basis; fields follow in order.

#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <string>
#include <vector>

#include "spinwave/criteria.hpp"
#include "spinwave/model.hpp"

namespace spinwave {

enum class CouplingKind {
    Squeezing,     // k (a^dag S^dag + a S)
    BeamSplitter,  // k (a^dag S + a S^dag)
};

struct HamiltonianCoupling {
    int mode = 1;  // field index >= 1; 0 is the spin wave
    double strength = 0.0;
    CouplingKind kind = CouplingKind::Squeezing;
};

struct HamiltonianSpec {
    std::vector<HamiltonianCoupling> couplings;

    // Field1 squeezing k1, Field2 beam splitter k2, Field3 squeezing k3.
    static HamiltonianSpec from_params(const CouplingParams& params);

    // 1 + highest field index referenced.
    int min_modes() const;
};

std::string fock_mode_name(int mode);

class FockState {
public:
    FockState(std::vector<int> dims, Eigen::VectorXcd amplitudes);

    static FockState vacuum(std::vector<int> dims);
    // Product number state |n_0, n_1, ...>.
    static FockState number_state(std::vector<int> dims, const std::vector<int>& occupations);
    // Product of a coherent state on `mode` (expanded in its truncation) and vacuum elsewhere.
    static FockState coherent(std::vector<int> dims, int mode, Complex alpha);

    const std::vector<int>& dims() const noexcept { return dims_; }
    const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }
    int n_modes() const noexcept { return static_cast<int>(dims_.size()); }

    std::size_t flat_index(const std::vector<int>& occupations) const;
    std::vector<int> occupations(std::size_t flat) const;

    double norm() const { return amplitudes_.norm(); }
    // Population with mode at its highest retained level.
    double edge_population(int mode) const;

private:
    std::vector<int> dims_;
    std::vector<std::size_t> strides_;
    Eigen::VectorXcd amplitudes_;
};

struct FockEvolveOptions {
    bool check_edge = true;
    double edge_tolerance = 1e-6;
    // Sectors up to this size are diagonalized; larger ones use RK4.
    int dense_limit = 4096;
    double norm_tolerance = 1e-8;
};

// Full-space Hamiltonian on the truncated product basis (real symmetric).
Eigen::SparseMatrix<double> hamiltonian_matrix(const HamiltonianSpec& h, const std::vector<int>& dims);

// Exact evolution exp(-iHt)|initial>, carried out independently in each
// sector of the conserved charge N_S + sum_bs N_b - sum_sq N_a.
FockState fock_evolve(const HamiltonianSpec& h, const FockState& initial, double t,
                      const FockEvolveOptions& options = {});

MomentTable exact_moments(const FockState& state);

struct SpinMoments {
    Complex mean;      // <S>
    Complex squared;   // <S^2>
    double sdag_s;     // <S^dag S>
    double s_sdag;     // <S S^dag>

    double centered_sdag_s() const { return sdag_s - std::norm(mean); }
    Complex centered_squared() const { return squared - mean * mean; }
};

// Exact moments of S = N^{-1/2} sum_i |1><2|_i on the product state of N atoms
// each in (|1> + |2>)/sqrt(2). 2 <= n_atoms <= 14.
SpinMoments spin_moments_bruteforce(int n_atoms);

// Max absolute difference over means and centered second moments between the
// closed-form transform and exact Fock evolution from vacuum. Requires c = 0.
double closed_form_vs_exact(const CouplingParams& params, double t, int dims_per_mode = 30,
                            const FockEvolveOptions& options = {});

// arg <a_1 S> after two-mode squeezing of strength r (k1 t = r, k2 = c = 0)
// from vacuum, by exact Fock evolution. Fixes which quadrature pair is squeezed.
double squeezing_phase_exact(double r, int dims_per_mode = 30);

}  // namespace spinwave
