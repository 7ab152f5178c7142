#pragma once

#include <Eigen/Dense>

#include <complex>

namespace cavq {

using cplx = std::complex<double>;

/// Amplitudes in the number basis |0>..|nmax>.
using FockState = Eigen::VectorXcd;
/// Dense operator (or density matrix) on the truncated number basis.
using FockOperator = Eigen::MatrixXcd;

/// Joint qubit-field pure state as the field components of the |g> and |e>
/// branches.
struct QubitFieldState {
    FockState ground;
    FockState excited;

    int nmax() const { return static_cast<int>(ground.size()) - 1; }
    double norm() const { return std::sqrt(ground.squaredNorm() + excited.squaredNorm()); }
    /// Stacks as [ground; excited], the ordering used for joint matrices.
    Eigen::VectorXcd stacked() const;
    static QubitFieldState from_stacked(const Eigen::VectorXcd& v);
};

inline constexpr double kDefaultTailTol = 1e-10;

/// Default truncation: ceil(|alpha|^2 + 8 sqrt(|alpha|^2 + 1) + 10).
int auto_nmax(double alpha_abs);

FockOperator annihilation(int nmax);
FockOperator creation(int nmax);
FockOperator number_operator(int nmax);
FockOperator identity(int nmax);

FockState vacuum(int nmax);
FockState number_state(int n, int nmax);

/// Poisson mass beyond nmax for a coherent state of mean photon number
/// |alpha|^2, summed directly (no 1 - sum cancellation).
double coherent_tail_mass(double alpha_abs2, int nmax);

/// Raw truncated coherent amplitudes exp(-|alpha|^2/2) alpha^n / sqrt(n!), not
/// renormalized. Used where exact overlaps matter more than unit norm.
FockState coherent_amplitudes(cplx alpha, int nmax);

/// Normalized truncated coherent state. Throws TruncationError when the tail
/// mass beyond nmax exceeds tail_tol.
FockState coherent_state(cplx alpha, int nmax, double tail_tol = kDefaultTailTol);

/// Diagonal entries exp(-i rate n t), with the phase reduced in extended
/// precision.
Eigen::VectorXcd number_phases(double rate, double t, int nmax);

/// exp(-i rate a^dagger a t) as a dense matrix.
FockOperator number_phase_propagator(double rate, double t, int nmax);

bool is_hermitian(const Eigen::MatrixXcd& m, double tol = 1e-12);

/// exp(-i H t) for Hermitian H (rad/s) via eigendecomposition. Rejects
/// non-Hermitian input with DomainError.
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& h, double t);

/// Applies a real function to a Hermitian matrix through its spectrum.
template <typename F>
Eigen::MatrixXcd hermitian_function(const Eigen::MatrixXcd& h, F&& f) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    Eigen::VectorXcd fv(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < fv.size(); ++i) fv[i] = f(es.eigenvalues()[i]);
    return es.eigenvectors() * fv.asDiagonal() * es.eigenvectors().adjoint();
}

/// max |U^dagger U - I| over the leading `keep` levels (all when keep < 0).
double unitarity_defect(const Eigen::MatrixXcd& u, Eigen::Index keep = -1);

/// Root fidelity |<a|b>| / (|a| |b|) between pure states; global phase
/// insensitive. Equal to the Uhlmann fidelity sqrt-form for pure states.
double fidelity(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

/// (1/2) sum |lambda_i(rho - sigma)|.
double trace_distance(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& sigma);

cplx expectation(const Eigen::MatrixXcd& op, const Eigen::VectorXcd& state);

/// Mean photon number sum n |c_n|^2 / sum |c_n|^2.
double mean_photon_number(const FockState& state);

}  // namespace cavq
