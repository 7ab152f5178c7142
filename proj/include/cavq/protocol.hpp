#pragma once

#include "cavq/fock.hpp"
#include "cavq/params.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cavq {

/// "+" cat is heralded by measuring |e>, "-" by measuring |g>.
enum class CatSign { Plus, Minus };
enum class Outcome { Ground, Excited };

CatSign sign_for(Outcome o);
int sign_value(CatSign s);  ///< +1 / -1
const char* to_string(CatSign s);
const char* to_string(Outcome o);

/// Analytic two-component cat (|beta u> +/- e^{i theta} |beta' u>)/N with
/// beta' = beta e^{-i phi}. u = 1 for the pure state.
struct CatSpec {
    cplx beta{0.0, 0.0};
    double phi = 0.0;
    double theta = 0.0;
    CatSign sign = CatSign::Plus;
    double u = 1.0;
    double alpha_abs2 = 0.0;

    cplx beta_prime() const { return beta * std::polar(1.0, -phi); }
    /// N^2 = 2 +/- 2 cos(theta') exp(-2|alpha|^2 sin^2(phi/2)), theta' = |alpha|^2 sin(phi) - theta.
    double norm_sq() const;
    /// |beta - beta'| = 2|alpha| sin(phi/2).
    double separation() const;
};

double cat_norm_sq(double alpha_abs2, double phi, double theta, CatSign sign);

struct ProtocolOptions {
    /// Keep the exp(-i omega tau_1) field rotation of each pulse (dropped by
    /// default). Used to compare against full numeric propagation.
    bool keep_free_phase = false;
    /// Replaces the accumulated relative phase theta (mod 2pi).
    std::optional<double> theta_override;
};

struct Superposed {
    QubitFieldState state;  ///< (|g> + i|e>)|alpha>/sqrt(2)
    cplx alpha{0.0, 0.0};   ///< field amplitude after the pulse
    double tau1 = 0.0;
};

struct Dispersed {
    QubitFieldState state;  ///< (|g>|beta> + i e^{i theta}|e>|beta'>)/sqrt(2)
    cplx beta{0.0, 0.0};
    double phi = 0.0;
    double theta = 0.0;     ///< reduced to [0, 2pi)
    double alpha_abs2 = 0.0;
    double tau2 = 0.0;
    std::vector<std::string> warnings;
};

struct Projected {
    CatSpec cat;
    double probability = 0.0;  ///< N^2/4
    FockState field;           ///< normalized numeric conditional field state
};

/// First pi/2 pulse on |g>|alpha>.
Superposed step1_superpose(cplx alpha, const SystemParams& params, int nmax,
                           const ProtocolOptions& opts = {});

/// Dispersive interaction for tau2. The global phase exp(-i Omega tau2/2) is
/// removed from the numeric state. Emits a warning (not an error) when the
/// two components are closer than unit distance.
Dispersed step2_disperse(const Superposed& s, const SystemParams& params, double tau2,
                         const ProtocolOptions& opts = {});

/// Second pi/2 pulse followed by a charge measurement with the given outcome.
/// Throws DegenerateBranchError if that outcome has probability < 1e-12.
Projected step3_rotate_and_project(const Dispersed& d, const SystemParams& params, Outcome outcome,
                                   const ProtocolOptions& opts = {});

/// tau2 giving relative phase phi: phi Delta / (2|g|^2).
double tau2_for_phi(double phi, const SystemParams& params);

/// Lower bound on tau2 for unit separation: (Delta/|g|^2) arcsin(1/(2|alpha|)).
/// Throws DomainError for |alpha| < 1/2.
double min_tau2(double alpha_abs, const SystemParams& params);

/// theta = (Omega - chi) tau2 reduced to [0, 2pi).
double accumulated_theta(const SystemParams& params, double tau2);

/// Normalized Fock vector of a pure cat (u must be 1).
FockState cat_to_fock(const CatSpec& spec, int nmax, double tail_tol = kDefaultTailTol);

/// Convenience: full preparation from |alpha> with the given outcome.
struct Preparation {
    Superposed superposed;
    Dispersed dispersed;
    Projected projected;
    double probability_ground = 0.0;
    double probability_excited = 0.0;
};

Preparation prepare_cat(cplx alpha, const SystemParams& params, double tau2, Outcome outcome,
                        int nmax, const ProtocolOptions& opts = {});

}  // namespace cavq
