#pragma once

#include "cavq/fock.hpp"
#include "cavq/params.hpp"

#include <optional>
#include <span>

namespace cavq {

/// Zero-temperature photon loss
///   d rho/dt = -i[H, rho] + gamma (a rho a^dag - {a^dag a, rho}/2).
/// H is in rad/s. When H is omega a^dag a + const (including H absent) the
/// number rotation commutes with the loss channel and is applied exactly after
/// integrating the loss in the rotating frame.
struct LindbladProblem {
    std::optional<FockOperator> hamiltonian;
    double decay_rate = 0.0;
    FockOperator initial;
    double t_final = 0.0;
    /// Step size; derived from the stability guards when empty.
    std::optional<double> dt;
};

struct LindbladResult {
    FockOperator rho;
    long steps = 0;
    double dt = 0.0;
    double trace_drift = 0.0;      ///< |Tr rho(t) - Tr rho(0)|, never renormalized
    double hermiticity_defect = 0.0;
    bool rotating_frame = false;   ///< H was split off analytically
};

/// Fixed-step RK4. Throws DomainError when a user-supplied dt breaks
/// dt*gamma <= 1e-3 or dt*||H|| <= 1e-2, and InstabilityError when the trace
/// drifts by more than 1e-6.
LindbladResult lindblad_evolve(const LindbladProblem& p);

/// Comparison of the rotating-frame Jaynes-Cummings evolution
///   H' = Delta |e><e| + g (a^dag s- + a s+)
/// with the dispersive Hamiltonian Delta |e><e| + chi (|e><e| a a^dag - |g><g| a^dag a).
/// Here |e> is the upper level of the two-level system.
struct EffectiveHamiltonianReport {
    double g = 0.0;
    double detuning = 0.0;
    double t = 0.0;
    double fidelity = 0.0;          ///< |<psi_full|psi_disp>|
    double infidelity = 0.0;        ///< 1 - fidelity
    /// Second-order Dyson generator i U2/t compared against the dispersive
    /// coefficients: max(|c_g + chi|, |c_e - chi|)/chi.
    double generator_error = 0.0;
    double chi_ground_estimate = 0.0;
    double chi_excited_estimate = 0.0;
};

EffectiveHamiltonianReport dispersive_vs_full(double g, double detuning,
                                              const QubitFieldState& initial, double t,
                                              int dyson_points = 0);

/// Same with g = |coupling| and Delta from the parameter set.
EffectiveHamiltonianReport dispersive_vs_full(const SystemParams& params,
                                              const QubitFieldState& initial, double t,
                                              int dyson_points = 0);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace cavq
