#pragma once

#include "cavq/params.hpp"
#include "cavq/protocol.hpp"
#include "cavq/readout.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <utility>

namespace cavq {

struct FitOptions {
    int grid_points = 64;
    double rel_tol = 1e-4;
    int max_iterations = 200;
    /// Objective spread below which Q is declared non-identifiable, relative
    /// to the objective scale (absolute floor 1e-24).
    double flat_tol = 1e-12;
    /// Also fit an offset to Omega_- tau4 (mod 2pi) for each trial Q.
    bool fit_phase_offset = false;
    bool compute_interval = true;
};

struct FitResult {
    double q_hat = 0.0;
    double residual = 0.0;  ///< sum of squared P_g errors at q_hat
    int iterations = 0;     ///< objective evaluations during refinement
    std::optional<std::pair<double, double>> ci_68;
    std::optional<double> phase_offset;
};

/// Least-squares Q from P_g(tau) samples using the closed-form readout model
/// with the damping law. `params.quality` is ignored. Throws
/// NonIdentifiableError for a flat objective and BracketError when the best
/// grid point sits on the bracket edge.
FitResult fit_q(std::span<const ReadoutSample> samples, const ReadoutConfig& cfg,
                const SystemParams& params, const CatSpec& cat, double q_lo, double q_hi,
                const FitOptions& opts = {});

/// Sum of squared P_g residuals at a given Q (and optional phase offset).
double fit_objective(std::span<const ReadoutSample> samples, const ReadoutConfig& cfg,
                     const SystemParams& params, const CatSpec& cat, double q,
                     double phase_offset = 0.0);

/// Key-value report (`key = value` lines).
void write_fit_report(const FitResult& r, std::ostream& out);

}  // namespace cavq
