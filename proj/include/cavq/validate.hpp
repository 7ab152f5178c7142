#pragma once

#include <string>
#include <vector>

namespace cavq {

struct CheckResult {
    std::string name;
    double value = 0.0;      ///< measured deviation
    double tolerance = 0.0;
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool all_passed() const;
};

struct ValidationOptions {
    /// Mutation hook: relative change applied to the cat phase theta on the
    /// analytic side only. Any nonzero value should make the suite fail.
    double perturb = 0.0;
};

/// Runs the invariant suite: trace identities, P_g + P_e = 1, unitarity,
/// positivity, unit Wigner integral, and the analytic-versus-numeric
/// cross-checks (Wigner, readout, Lindblad damping, protocol state).
ValidationReport run_validation(const ValidationOptions& opts = {});

}  // namespace cavq
