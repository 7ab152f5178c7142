#pragma once

#include "cavq/dissipation.hpp"
#include "cavq/fock.hpp"
#include "cavq/params.hpp"
#include "cavq/protocol.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cavq {

/// Second-stage protocol: after heralding a cat, rotate the qubit, let the
/// field decay for tau, switch the dispersive coupling on for tau4, rotate
/// again and measure the charge state.
struct ReadoutConfig {
    CatSign prepared_sign = CatSign::Minus;
    double tau = 0.0;        ///< dissipation interval tau_3' + T
    double tau4 = 0.0;       ///< re-interaction time
    double phi_prime = 0.0;  ///< chi * tau4
    /// Explicit Omega_- tau4 mod 2pi; computed from the parameters when empty.
    std::optional<double> omega_minus_tau4_mod;
};

/// (pi/2) Delta/|g|^2, i.e. phi' = pi/2.
double default_tau4(const SystemParams& params);

/// tau = tau3' + T with T the pi/2 pulse duration.
double readout_tau(double tau3_prime, const SystemParams& params);

ReadoutConfig make_readout_config(const SystemParams& params, CatSign prepared, double tau,
                                  std::optional<double> tau4 = std::nullopt,
                                  std::optional<double> omega_minus_tau4_mod = std::nullopt);

/// Omega_- tau4 mod 2pi (override when present).
double omega_minus_tau4(const ReadoutConfig& cfg, const SystemParams& params);

struct Probabilities {
    double p_g = 0.0;
    double p_e = 0.0;
    std::vector<std::string> warnings;
};

/// Re Tr[exp(-i varphi) rho_s(tau)] from the three-term closed form, with
/// varphi = (Omega_- - 2|g|^2 a^dag a / Delta) tau4, for the cat sign s.
double coherence_trace_closed_form(double omega_minus_tau4, double phi_prime, double u,
                                   const CatSpec& cat);

/// Closed-form outcome probabilities for a pure prepared cat damped for
/// cfg.tau. Warns when sin(phi') = 0, where the outcome carries no Q.
Probabilities probability_closed_form(const ReadoutConfig& cfg, const SystemParams& params,
                                      const CatSpec& cat);

/// Same at an explicit damping factor u.
Probabilities probability_closed_form_at(const ReadoutConfig& cfg, const SystemParams& params,
                                         const CatSpec& cat, double u);

/// Reduced formula once the coherence has vanished (classical mixture with
/// the 1/N^2 weights of the pure cat).
Probabilities probability_classical_mixture(const ReadoutConfig& cfg, const SystemParams& params,
                                            const CatSpec& cat, double u);

/// Ground-truth path: qubit prepared by a pi/2 pulse, joint evolution under
/// diag(U1, e^{i Omega_- tau4} U2) with U1,2 = exp(-i omega_-/+ a^dag a tau4),
/// a second pi/2 pulse, then the partial trace over the field. rho need not
/// have unit trace (probabilities scale with Tr rho).
Probabilities probability_numeric(const ReadoutConfig& cfg, const SystemParams& params,
                                  const FockOperator& rho);

/// A = sum_i U_i rho U_i^dag and B = 2 Re[e^{-i Omega_- tau4} U1 rho U2^dag].
struct ReadoutOperators {
    FockOperator a;
    FockOperator b;
};
ReadoutOperators assemble_operators(const ReadoutConfig& cfg, const SystemParams& params,
                                    const FockOperator& rho);

struct ReadoutSample {
    double tau = 0.0;
    double p_g = 0.0;
    double p_e = 0.0;
};

struct ShotNoise {
    std::int64_t shots = 0;
    std::uint64_t seed = 0;
};

struct ReadoutCurve {
    std::vector<ReadoutSample> samples;
    ReadoutConfig config;
    std::string params_digest;
};

/// Closed-form P_g, P_e at each tau (ascending, non-negative). With shot
/// noise, P_g is replaced by a binomial frequency from a seeded mt19937_64.
ReadoutCurve curve(const ReadoutConfig& cfg, const SystemParams& params, const CatSpec& cat,
                   std::span<const double> taus, std::optional<ShotNoise> noise = std::nullopt);

/// 64-bit FNV-1a over the parameter values, as 16 hex digits.
std::string params_digest(const SystemParams& params);

/// CSV: header `tau_s,p_g,p_e`.
void write_csv(const ReadoutCurve& c, std::ostream& out);
std::vector<ReadoutSample> read_readout_csv(std::istream& in);

}  // namespace cavq
