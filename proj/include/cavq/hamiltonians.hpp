#pragma once

#include "cavq/fock.hpp"
#include "cavq/params.hpp"

namespace cavq {

// Joint qubit-field operators use the stacked basis [ |g,0..N> ; |e,0..N> ].
// The charge states use the spin assignment |g> = |up>, |e> = |down>,
// so sigma_z = |g><g| - |e><e| and sigma_+ = |g><e|. With this assignment the
// dispersive propagator reproduces the relative phase theta = (Omega - chi) t
// of the prepared superposition and the exp(-i Omega_- t) coherence phase
// used by the readout.

enum class HamiltonianKind {
    FullCosine,  ///< unexpanded cosine of the flux operator
    Linearized,  ///< first order in pi*eta/Phi_0
    Free,        ///< flux off: omega a^dag a + E_z sigma_z - E_J sigma_x
    Dispersive,  ///< omega_- a^dag a + Omega/2 sigma_z + chi (1 + 2 a^dag a)|e><e|
};

struct HamiltonianSpec {
    HamiltonianKind kind = HamiltonianKind::Free;
    SystemParams params;
    bool flux_on = false;  ///< Phi_c = Phi_0/2 (true) or 0
    /// Linearized only: keep just the co-rotating a sigma_+ + h.c. terms.
    /// Setting false keeps the full first-order term sigma_x (eta a + h.c.).
    bool rotating_wave = true;
};

/// Hermitian H/hbar (rad/s) of dimension 2(nmax+1). Dispersive requires a
/// positive detuning (DomainError otherwise).
Eigen::MatrixXcd build(const HamiltonianSpec& spec, int nmax);

/// Joint-space helpers.
Eigen::MatrixXcd qubit_kron(const Eigen::Matrix2cd& q, const Eigen::MatrixXcd& f);
Eigen::Matrix2cd sigma_x();
Eigen::Matrix2cd sigma_z();
Eigen::Matrix2cd sigma_plus();
Eigen::Matrix2cd projector_ground();
Eigen::Matrix2cd projector_excited();

/// Diagonal branch factors of the dispersive propagator.
///
/// ground  = exp(-i omega_- n t)
/// excited = exp(-i (omega_- n + chi (1 + 2n)) t)
/// The sigma_z phases exp(-/+ i Omega t/2) are kept apart as reduced angles:
/// the full propagator is diag(e^{-i ground_phase} ground, e^{-i excited_phase} excited).
struct BranchPropagator {
    Eigen::VectorXcd ground;
    Eigen::VectorXcd excited;
    double ground_phase = 0.0;   ///< Omega t / 2 mod 2pi
    double excited_phase = 0.0;  ///< -Omega t / 2 mod 2pi

    QubitFieldState apply(const QubitFieldState& s, bool include_qubit_phases = true) const;
};

BranchPropagator dispersive_propagator(const SystemParams& params, double t, int nmax);

/// exp(+i E_J t sigma_x): the qubit rotation generated by -E_J sigma_x.
Eigen::Matrix2cd pulse_rotation(double ej, double t);

/// Evolves under the flux-off, n_g = 1/2 Hamiltonian omega a^dag a - E_J sigma_x
/// for time t. The two terms commute, so the qubit rotation is applied
/// analytically; the field rotation exp(-i omega n t) is applied only when
/// keep_free_phase is set.
QubitFieldState apply_free_pulse(const QubitFieldState& s, const SystemParams& params, double t,
                                 bool keep_free_phase);

/// Multiplies s by the phase that makes <reference|s> real and non-negative.
QubitFieldState strip_global_phase(const QubitFieldState& s, const QubitFieldState& reference);

}  // namespace cavq
