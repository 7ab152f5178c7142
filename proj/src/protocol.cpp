#include "cavq/protocol.hpp"

#include "cavq/errors.hpp"
#include "cavq/hamiltonians.hpp"
#include "cavq/phase.hpp"

#include <cmath>
#include <sstream>

namespace cavq {

CatSign sign_for(Outcome o) { return o == Outcome::Excited ? CatSign::Plus : CatSign::Minus; }
int sign_value(CatSign s) { return s == CatSign::Plus ? 1 : -1; }
const char* to_string(CatSign s) { return s == CatSign::Plus ? "+" : "-"; }
const char* to_string(Outcome o) { return o == Outcome::Excited ? "e" : "g"; }

double cat_norm_sq(double alpha_abs2, double phi, double theta, CatSign sign) {
    const double s = std::sin(0.5 * phi);
    const double theta_p = alpha_abs2 * std::sin(phi) - theta;
    return 2.0 + 2.0 * sign_value(sign) * std::cos(theta_p) * std::exp(-2.0 * alpha_abs2 * s * s);
}

double CatSpec::norm_sq() const { return cat_norm_sq(alpha_abs2, phi, theta, sign); }

double CatSpec::separation() const { return 2.0 * std::sqrt(alpha_abs2) * std::abs(std::sin(0.5 * phi)); }

double tau2_for_phi(double phi, const SystemParams& params) {
    const auto d = derive(params);
    if (!(d.detuning > 0.0)) throw DomainError("tau2 requires Delta > 0");
    const double g2 = std::norm(params.coupling());
    return phi * d.detuning / (2.0 * g2);
}

double min_tau2(double alpha_abs, const SystemParams& params) {
    if (!(alpha_abs >= 0.5))
        throw DomainError("no phi in [0, pi] separates the components when |alpha| < 1/2");
    const auto d = derive(params);
    if (!(d.detuning > 0.0)) throw DomainError("tau2 requires Delta > 0");
    const double g2 = std::norm(params.coupling());
    return d.detuning / g2 * std::asin(1.0 / (2.0 * alpha_abs));
}

double accumulated_theta(const SystemParams& params, double tau2) {
    const auto d = derive(params);
    return reduce_phase(d.qubit_freq - d.chi, tau2);
}

Superposed step1_superpose(cplx alpha, const SystemParams& params, int nmax,
                           const ProtocolOptions& opts) {
    const FockState field = coherent_state(alpha, nmax);
    const QubitFieldState initial{field, FockState::Zero(nmax + 1)};
    Superposed out;
    out.tau1 = pulse_duration(params);
    out.state = apply_free_pulse(initial, params, out.tau1, opts.keep_free_phase);
    out.alpha = opts.keep_free_phase ? alpha * std::polar(1.0, -reduce_phase(params.omega, out.tau1))
                                     : alpha;
    return out;
}

Dispersed step2_disperse(const Superposed& s, const SystemParams& params, double tau2,
                         const ProtocolOptions& opts) {
    const auto d = derive(params);
    check_dispersive(params);
    const int nmax = s.state.nmax();

    const BranchPropagator u = dispersive_propagator(params, tau2, nmax);
    Dispersed out;
    out.tau2 = tau2;
    out.alpha_abs2 = std::norm(s.alpha);
    out.phi = 2.0 * d.chi * tau2;
    const double computed_theta = accumulated_theta(params, tau2);
    out.theta = opts.theta_override ? wrap_two_pi(*opts.theta_override) : computed_theta;
    out.beta = s.alpha * std::polar(1.0, -reduce_phase(params.omega - d.chi, tau2));

    // Drop exp(-i Omega tau2 / 2) by referencing both branches to the ground one.
    out.state = u.apply(s.state, false);
    const double relative = wrap_two_pi(u.ground_phase - u.excited_phase);
    out.state.excited *= std::polar(1.0, relative);
    if (opts.theta_override) out.state.excited *= std::polar(1.0, out.theta - computed_theta);

    const double sep = 2.0 * std::sqrt(out.alpha_abs2) * std::abs(std::sin(0.5 * out.phi));
    if (!(sep > 1.0)) {
        std::ostringstream msg;
        msg << "component separation 2|alpha|sin(phi/2) = " << sep << " is not above 1";
        out.warnings.push_back(msg.str());
    }
    return out;
}

Projected step3_rotate_and_project(const Dispersed& d, const SystemParams& params, Outcome outcome,
                                   const ProtocolOptions& opts) {
    Projected out;
    out.cat.phi = d.phi;
    out.cat.theta = d.theta;
    out.cat.alpha_abs2 = d.alpha_abs2;
    out.cat.sign = sign_for(outcome);
    out.cat.u = 1.0;
    out.cat.beta = opts.keep_free_phase
                       ? d.beta * std::polar(1.0, -reduce_phase(params.omega, pulse_duration(params)))
                       : d.beta;
    out.probability = out.cat.norm_sq() / 4.0;
    if (out.probability < 1e-12)
        throw DegenerateBranchError(std::string("outcome ") + to_string(outcome) +
                                    " has vanishing probability");

    const QubitFieldState rotated =
        apply_free_pulse(d.state, params, pulse_duration(params), opts.keep_free_phase);
    out.field = outcome == Outcome::Excited ? rotated.excited : rotated.ground;
    out.field.normalize();
    return out;
}

FockState cat_to_fock(const CatSpec& spec, int nmax, double tail_tol) {
    if (spec.u != 1.0) throw DomainError("cat_to_fock expects a pure cat (u = 1)");
    const double tail = coherent_tail_mass(spec.alpha_abs2, nmax);
    if (tail > tail_tol)
        throw TruncationError("cat truncation tail " + std::to_string(tail) + " exceeds tolerance");
    const FockState b = coherent_amplitudes(spec.beta, nmax);
    const FockState bp = coherent_amplitudes(spec.beta_prime(), nmax);
    FockState s = b + static_cast<double>(sign_value(spec.sign)) * std::polar(1.0, spec.theta) * bp;
    const double n = s.norm();
    if (n < 1e-12) throw DegenerateBranchError("cat components cancel");
    return s / n;
}

Preparation prepare_cat(cplx alpha, const SystemParams& params, double tau2, Outcome outcome,
                        int nmax, const ProtocolOptions& opts) {
    Preparation p;
    p.superposed = step1_superpose(alpha, params, nmax, opts);
    p.dispersed = step2_disperse(p.superposed, params, tau2, opts);
    p.probability_excited =
        cat_norm_sq(p.dispersed.alpha_abs2, p.dispersed.phi, p.dispersed.theta, CatSign::Plus) / 4.0;
    p.probability_ground =
        cat_norm_sq(p.dispersed.alpha_abs2, p.dispersed.phi, p.dispersed.theta, CatSign::Minus) / 4.0;
    p.projected = step3_rotate_and_project(p.dispersed, params, outcome, opts);
    return p;
}

}  // namespace cavq
