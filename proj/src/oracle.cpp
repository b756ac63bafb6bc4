#include "spinwave/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace spinwave {

namespace {

constexpr Complex kI{0.0, 1.0};

// RK4 step as a fraction of 1/||H||; keeps the per-step norm loss near 1e-12.
constexpr double kRk4Safety = 0.02;

std::size_t total_dim(const std::vector<int>& dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                           [](std::size_t a, int d) { return a * static_cast<std::size_t>(d); });
}

std::vector<std::size_t> make_strides(const std::vector<int>& dims) {
    std::vector<std::size_t> strides(dims.size(), 1);
    for (int m = static_cast<int>(dims.size()) - 2; m >= 0; --m) {
        strides[m] = strides[m + 1] * static_cast<std::size_t>(dims[m + 1]);
    }
    return strides;
}

// Calls visit(target_flat, amplitude) for every off-diagonal element in the
// column of basis state `occ` (both the coupling term and its conjugate).
template <typename Visit>
void for_each_transition(const HamiltonianSpec& h, const std::vector<int>& dims,
                         const std::vector<std::size_t>& strides, const std::vector<int>& occ,
                         std::size_t flat, Visit&& visit) {
    const int ns = occ[0];
    for (const auto& c : h.couplings) {
        if (c.strength == 0.0) continue;
        const int na = occ[c.mode];
        const std::size_t sa = strides[c.mode];
        const std::size_t ss = strides[0];
        if (c.kind == CouplingKind::Squeezing) {
            // a^dag S^dag and a S
            if (na + 1 < dims[c.mode] && ns + 1 < dims[0]) {
                visit(flat + sa + ss, c.strength * std::sqrt((na + 1.0) * (ns + 1.0)));
            }
            if (na > 0 && ns > 0) {
                visit(flat - sa - ss, c.strength * std::sqrt(double(na) * double(ns)));
            }
        } else {
            // a^dag S and a S^dag
            if (na + 1 < dims[c.mode] && ns > 0) {
                visit(flat + sa - ss, c.strength * std::sqrt((na + 1.0) * double(ns)));
            }
            if (na > 0 && ns + 1 < dims[0]) {
                visit(flat - sa + ss, c.strength * std::sqrt(double(na) * (ns + 1.0)));
            }
        }
    }
}

// Conserved quantities of a coupling list: the charge
// N_S + sum_bs N_b - sum_sq N_a (weights +1/-1, 0 for uncoupled modes) and the
// occupation of every uncoupled field. If one field carries both coupling
// kinds there is no charge and only the uncoupled occupations remain.
struct ConservedQuantities {
    std::vector<int> weights;
    std::vector<int> free_modes;
};

ConservedQuantities conserved_quantities(const HamiltonianSpec& h, int n_modes) {
    ConservedQuantities q;
    q.weights.assign(n_modes, 0);
    bool charge = true;
    for (const auto& c : h.couplings) {
        if (c.strength == 0.0) continue;
        const int want = c.kind == CouplingKind::BeamSplitter ? 1 : -1;
        if (q.weights[c.mode] != 0 && q.weights[c.mode] != want) charge = false;
        q.weights[c.mode] = want;
    }
    const bool spin_coupled = std::any_of(q.weights.begin() + 1, q.weights.end(),
                                          [](int w) { return w != 0; });
    for (int m = 1; m < n_modes; ++m) {
        if (q.weights[m] == 0) q.free_modes.push_back(m);
    }
    if (spin_coupled) {
        q.weights[0] = 1;
    } else {
        q.free_modes.insert(q.free_modes.begin(), 0);
    }
    if (!charge) std::fill(q.weights.begin(), q.weights.end(), 0);
    return q;
}

// Packs the conserved values of a basis state into one integer key.
std::int64_t sector_key(const ConservedQuantities& q, const std::vector<int>& dims,
                        const std::vector<int>& occ) {
    std::int64_t charge = 0;
    std::int64_t span = 1;
    for (std::size_t m = 0; m < occ.size(); ++m) {
        charge += q.weights[m] * occ[m];
        span += dims[m];
    }
    std::int64_t key = charge + span;
    for (int m : q.free_modes) key = key * dims[m] + occ[m];
    return key;
}

void validate_against(const HamiltonianSpec& h, const std::vector<int>& dims) {
    if (dims.empty()) throw UsageError("Fock space needs at least one mode");
    for (int d : dims) {
        if (d < 2) throw UsageError("each Fock truncation must be at least 2");
    }
    if (h.min_modes() > static_cast<int>(dims.size())) {
        throw UsageError("Hamiltonian couples a mode beyond the Fock space");
    }
}

Eigen::VectorXcd evolve_dense(const Eigen::SparseMatrix<double>& h, const Eigen::VectorXcd& psi,
                              double t) {
    const Eigen::MatrixXd dense(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
    if (solver.info() != Eigen::Success) throw std::runtime_error("sector diagonalization failed");
    const Eigen::MatrixXcd u = solver.eigenvectors().cast<Complex>();
    Eigen::VectorXcd phases(psi.size());
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
        phases(i) = std::exp(-kI * (solver.eigenvalues()(i) * t));
    }
    return u * (phases.asDiagonal() * (u.adjoint() * psi));
}

Eigen::VectorXcd evolve_rk4(const Eigen::SparseMatrix<double, Eigen::RowMajor>& h,
                            const Eigen::VectorXcd& psi0, double t, double norm_tolerance) {
    double bound = 0.0;
    for (Eigen::Index r = 0; r < h.outerSize(); ++r) {
        double row = 0.0;
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(h, r); it; ++it) {
            row += std::abs(it.value());
        }
        bound = std::max(bound, row);
    }
    const Eigen::SparseMatrix<Complex, Eigen::RowMajor> minus_ih = (-kI) * h.cast<Complex>();
    const double norm0 = psi0.norm();

    double safety = kRk4Safety;
    for (int attempt = 0; attempt < 4; ++attempt, safety /= 2.0) {
        const long steps = bound > 0.0 ? std::max(1L, static_cast<long>(std::ceil(t * bound / safety))) : 1L;
        const double dt = t / static_cast<double>(steps);
        Eigen::VectorXcd psi = psi0;
        Eigen::VectorXcd k1, k2, k3, k4;
        for (long s = 0; s < steps; ++s) {
            k1 = minus_ih * psi;
            k2 = minus_ih * (psi + 0.5 * dt * k1);
            k3 = minus_ih * (psi + 0.5 * dt * k2);
            k4 = minus_ih * (psi + dt * k3);
            psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        if (std::abs(psi.norm() - norm0) <= norm_tolerance * std::max(norm0, 1.0)) return psi;
    }
    throw std::runtime_error("RK4 evolution could not meet the norm tolerance");
}

}  // namespace

HamiltonianSpec HamiltonianSpec::from_params(const CouplingParams& params) {
    params.validate();
    HamiltonianSpec h;
    h.couplings.push_back({index_of(Mode::Field1), params.k1, CouplingKind::Squeezing});
    h.couplings.push_back({index_of(Mode::Field2), params.k2, CouplingKind::BeamSplitter});
    if (params.k3) {
        h.couplings.push_back({index_of(Mode::Field3), *params.k3, CouplingKind::Squeezing});
    }
    return h;
}

int HamiltonianSpec::min_modes() const {
    int m = 1;
    for (const auto& c : couplings) {
        if (c.mode < 1) throw UsageError("couplings must target a field mode (index >= 1)");
        m = std::max(m, c.mode + 1);
    }
    return m;
}

std::string fock_mode_name(int mode) {
    if (mode >= 0 && mode <= 3) return std::string(mode_name(static_cast<Mode>(mode)));
    return "Field" + std::to_string(mode);
}

FockState::FockState(std::vector<int> dims, Eigen::VectorXcd amplitudes)
    : dims_(std::move(dims)), strides_(make_strides(dims_)), amplitudes_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amplitudes_.size()) != total_dim(dims_)) {
        throw UsageError("amplitude vector does not match the Fock dimensions");
    }
}

FockState FockState::vacuum(std::vector<int> dims) {
    return number_state(std::move(dims), {});
}

FockState FockState::number_state(std::vector<int> dims, const std::vector<int>& occupations) {
    std::vector<int> occ = occupations;
    occ.resize(dims.size(), 0);
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(total_dim(dims)));
    FockState s(std::move(dims), std::move(amps));
    s.amplitudes_(static_cast<Eigen::Index>(s.flat_index(occ))) = 1.0;
    return s;
}

FockState FockState::coherent(std::vector<int> dims, int mode, Complex alpha) {
    if (mode < 0 || mode >= static_cast<int>(dims.size())) throw UsageError("mode out of range");
    FockState s = vacuum(dims);
    s.amplitudes_.setZero();
    std::vector<int> occ(dims.size(), 0);
    Complex c = std::exp(-0.5 * std::norm(alpha));
    for (int n = 0; n < dims[mode]; ++n) {
        if (n > 0) c *= alpha / std::sqrt(static_cast<double>(n));
        occ[mode] = n;
        s.amplitudes_(static_cast<Eigen::Index>(s.flat_index(occ))) = c;
    }
    s.amplitudes_.normalize();
    return s;
}

std::size_t FockState::flat_index(const std::vector<int>& occupations) const {
    if (occupations.size() != dims_.size()) throw UsageError("occupation vector has wrong length");
    std::size_t flat = 0;
    for (std::size_t m = 0; m < dims_.size(); ++m) {
        if (occupations[m] < 0 || occupations[m] >= dims_[m]) {
            throw UsageError("occupation outside the truncation of " + fock_mode_name(int(m)));
        }
        flat += strides_[m] * static_cast<std::size_t>(occupations[m]);
    }
    return flat;
}

std::vector<int> FockState::occupations(std::size_t flat) const {
    std::vector<int> occ(dims_.size());
    for (std::size_t m = 0; m < dims_.size(); ++m) {
        occ[m] = static_cast<int>(flat / strides_[m]);
        flat %= strides_[m];
    }
    return occ;
}

double FockState::edge_population(int mode) const {
    double p = 0.0;
    const std::size_t stride = strides_.at(static_cast<std::size_t>(mode));
    const std::size_t d = static_cast<std::size_t>(dims_[mode]);
    for (Eigen::Index i = 0; i < amplitudes_.size(); ++i) {
        if ((static_cast<std::size_t>(i) / stride) % d == d - 1) p += std::norm(amplitudes_(i));
    }
    return p;
}

Eigen::SparseMatrix<double> hamiltonian_matrix(const HamiltonianSpec& h, const std::vector<int>& dims) {
    validate_against(h, dims);
    const auto strides = make_strides(dims);
    const FockState layout = FockState::vacuum(dims);
    const std::size_t n = total_dim(dims);
    std::vector<Eigen::Triplet<double>> entries;
    for (std::size_t col = 0; col < n; ++col) {
        const auto occ = layout.occupations(col);
        for_each_transition(h, dims, strides, occ, col, [&](std::size_t row, double amp) {
            entries.emplace_back(static_cast<int>(row), static_cast<int>(col), amp);
        });
    }
    Eigen::SparseMatrix<double> m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    m.setFromTriplets(entries.begin(), entries.end());
    return m;
}

FockState fock_evolve(const HamiltonianSpec& h, const FockState& initial, double t,
                      const FockEvolveOptions& options) {
    const auto& dims = initial.dims();
    validate_against(h, dims);
    if (t < 0.0) throw DomainError("evolution time must be non-negative");

    const int n_modes = initial.n_modes();
    const auto strides = make_strides(dims);
    const auto conserved = conserved_quantities(h, n_modes);
    const std::size_t n = total_dim(dims);
    const Eigen::VectorXcd& psi0 = initial.amplitudes();

    // Only sectors touched by the initial state are assembled.
    std::vector<int> occ(n_modes);
    auto decode = [&](std::size_t flat) {
        for (int m = 0; m < n_modes; ++m) {
            occ[m] = static_cast<int>(flat / strides[m]);
            flat %= strides[m];
        }
    };
    std::map<std::int64_t, std::vector<std::size_t>> sectors;
    for (std::size_t i = 0; i < n; ++i) {
        if (psi0(static_cast<Eigen::Index>(i)) == 0.0) continue;
        decode(i);
        sectors.try_emplace(sector_key(conserved, dims, occ));
    }
    for (std::size_t i = 0; i < n; ++i) {
        decode(i);
        const auto it = sectors.find(sector_key(conserved, dims, occ));
        if (it != sectors.end()) it->second.push_back(i);
    }

    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n));
    std::vector<int> local(n, -1);
    for (const auto& [key, members] : sectors) {
        const auto dim = static_cast<Eigen::Index>(members.size());
        for (std::size_t k = 0; k < members.size(); ++k) local[members[k]] = static_cast<int>(k);

        std::vector<Eigen::Triplet<double>> entries;
        Eigen::VectorXcd psi(dim);
        for (std::size_t k = 0; k < members.size(); ++k) {
            const std::size_t col = members[k];
            psi(static_cast<Eigen::Index>(k)) = psi0(static_cast<Eigen::Index>(col));
            for_each_transition(h, dims, strides, initial.occupations(col), col,
                                [&](std::size_t row, double amp) {
                                    entries.emplace_back(local[row], static_cast<int>(k), amp);
                                });
        }
        for (std::size_t i : members) local[i] = -1;

        Eigen::VectorXcd evolved;
        if (t == 0.0) {
            evolved = psi;
        } else if (dim <= options.dense_limit) {
            Eigen::SparseMatrix<double> hs(dim, dim);
            hs.setFromTriplets(entries.begin(), entries.end());
            evolved = evolve_dense(hs, psi, t);
        } else {
            Eigen::SparseMatrix<double, Eigen::RowMajor> hs(dim, dim);
            hs.setFromTriplets(entries.begin(), entries.end());
            evolved = evolve_rk4(hs, psi, t, options.norm_tolerance);
        }
        for (std::size_t k = 0; k < members.size(); ++k) {
            out(static_cast<Eigen::Index>(members[k])) = evolved(static_cast<Eigen::Index>(k));
        }
    }

    FockState result(dims, std::move(out));
    if (std::abs(result.norm() - initial.norm()) > options.norm_tolerance) {
        throw std::runtime_error("Fock evolution failed to preserve the norm");
    }
    if (options.check_edge) {
        for (int m = 0; m < n_modes; ++m) {
            const double p = result.edge_population(m);
            if (p > options.edge_tolerance) throw TruncationOverflowError(fock_mode_name(m), p);
        }
    }
    return result;
}

MomentTable exact_moments(const FockState& state) {
    const int n = state.n_modes();
    const auto& dims = state.dims();
    const auto strides = make_strides(dims);
    const Eigen::VectorXcd& psi = state.amplitudes();

    MomentTable raw = MomentTable::vacuum(n);
    for (Eigen::Index idx = 0; idx < psi.size(); ++idx) {
        const Complex amp = psi(idx);
        if (amp == 0.0) continue;
        const std::size_t flat = static_cast<std::size_t>(idx);
        const auto occ = state.occupations(flat);
        for (int j = 0; j < n; ++j) {
            if (occ[j] == 0) continue;
            // a_j |occ> = sqrt(n_j) |occ - e_j>
            const double lj = std::sqrt(static_cast<double>(occ[j]));
            const std::size_t after_j = flat - strides[j];
            raw.mean(j) += std::conj(psi(static_cast<Eigen::Index>(after_j))) * lj * amp;
            for (int i = 0; i < n; ++i) {
                const int ni = occ[i] - (i == j ? 1 : 0);
                // <a_i^dag a_j>: raise i after lowering j
                if (ni + 1 < dims[i]) {
                    const std::size_t target = after_j + strides[i];
                    raw.cov_nn(i, j) += std::conj(psi(static_cast<Eigen::Index>(target))) *
                                        std::sqrt(ni + 1.0) * lj * amp;
                }
                // <a_i a_j>: lower i after lowering j
                if (ni > 0) {
                    const std::size_t target = after_j - strides[i];
                    raw.cov_aa(i, j) += std::conj(psi(static_cast<Eigen::Index>(target))) *
                                        std::sqrt(static_cast<double>(ni)) * lj * amp;
                }
            }
        }
    }
    MomentTable centered = raw;
    centered.cov_nn = raw.cov_nn - raw.mean.conjugate() * raw.mean.transpose();
    centered.cov_aa = raw.cov_aa - raw.mean * raw.mean.transpose();
    return centered;
}

SpinMoments spin_moments_bruteforce(int n_atoms) {
    if (n_atoms < 2 || n_atoms > 14) throw DomainError("spin enumeration supports 2..14 atoms");
    const std::size_t dim = std::size_t{1} << n_atoms;
    // Bit i set: atom i in |2>. S lowers |2> -> |1>.
    const Eigen::VectorXd psi = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(dim),
                                                          std::pow(2.0, -0.5 * n_atoms));
    const double norm = 1.0 / std::sqrt(static_cast<double>(n_atoms));

    auto apply = [&](const Eigen::VectorXd& v, bool lower) {
        Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
        for (std::size_t s = 0; s < dim; ++s) {
            const double a = v(static_cast<Eigen::Index>(s));
            if (a == 0.0) continue;
            for (int i = 0; i < n_atoms; ++i) {
                const std::size_t bit = std::size_t{1} << i;
                if (lower == bool(s & bit)) out(static_cast<Eigen::Index>(s ^ bit)) += norm * a;
            }
        }
        return out;
    };

    const Eigen::VectorXd s_psi = apply(psi, true);
    const Eigen::VectorXd ss_psi = apply(s_psi, true);
    const Eigen::VectorXd sdag_psi = apply(psi, false);

    SpinMoments m;
    m.mean = psi.dot(s_psi);
    m.squared = psi.dot(ss_psi);
    m.sdag_s = s_psi.squaredNorm();
    m.s_sdag = sdag_psi.squaredNorm();
    return m;
}

double closed_form_vs_exact(const CouplingParams& params, double t, int dims_per_mode,
                            const FockEvolveOptions& options) {
    if (params.c != 0.0) {
        throw UsageError("closed-form/exact comparison is only exact at c = 0");
    }
    const int n = params.n_modes();
    const auto h = HamiltonianSpec::from_params(params);
    const auto exact = exact_moments(
        fock_evolve(h, FockState::vacuum(std::vector<int>(n, dims_per_mode)), t, options));
    const auto model = evolve_moments(bogoliubov(params, t),
                                      initial_moments(SpinConvention::BosonicVacuum, n));
    return std::max({(exact.mean - model.mean).cwiseAbs().maxCoeff(),
                     (exact.cov_nn - model.cov_nn).cwiseAbs().maxCoeff(),
                     (exact.cov_aa - model.cov_aa).cwiseAbs().maxCoeff()});
}

double squeezing_phase_exact(double r, int dims_per_mode) {
    const CouplingParams params{1.0, 0.0, std::nullopt, 0.0};
    const auto state = fock_evolve(HamiltonianSpec::from_params(params),
                                   FockState::vacuum(std::vector<int>(3, dims_per_mode)), r);
    const auto m = exact_moments(state);
    return std::arg(m.cov_aa(index_of(Mode::Field1), index_of(Mode::Spin)));
}

}  // namespace spinwave
