#include "cavq/validate.hpp"

#include "cavq/dissipation.hpp"
#include "cavq/errors.hpp"
#include "cavq/hamiltonians.hpp"
#include "cavq/oracle.hpp"
#include "cavq/phase.hpp"
#include "cavq/protocol.hpp"
#include "cavq/readout.hpp"
#include "cavq/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cavq {

bool ValidationReport::all_passed() const {
    return !checks.empty() &&
           std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

SystemParams reference_params() {
    return SystemParams::from_ghz_with_coupling(6.5, 149.0, 0.634233, 40.0, 4e6, 5e5);
}

CatSpec reference_cat(double alpha, double phi, double theta, CatSign sign) {
    CatSpec c;
    c.beta = alpha;
    c.phi = phi;
    c.theta = theta;
    c.sign = sign;
    c.alpha_abs2 = alpha * alpha;
    return c;
}

void record(ValidationReport& r, std::string name, double value, double tol, std::string detail = {}) {
    CheckResult c;
    c.name = std::move(name);
    c.value = value;
    c.tolerance = tol;
    c.passed = std::isfinite(value) && value <= tol;
    c.detail = std::move(detail);
    r.checks.push_back(std::move(c));
}

template <typename F>
void guarded(ValidationReport& r, const std::string& name, double tol, F&& f) {
    try {
        f();
    } catch (const std::exception& e) {
        CheckResult c;
        c.name = name;
        c.value = INFINITY;
        c.tolerance = tol;
        c.passed = false;
        c.detail = std::string("raised: ") + e.what();
        r.checks.push_back(std::move(c));
    }
}

}  // namespace

ValidationReport run_validation(const ValidationOptions& opts) {
    ValidationReport rep;
    const SystemParams params = reference_params();
    const double theta = 0.996;
    const double analytic_theta = theta * (1.0 + opts.perturb);

    guarded(rep, "damping_factor_reference", 1e-4, [&] {
        const double u = damping_factor(1e-7, params);
        record(rep, "damping_factor_reference", std::abs(u - 0.9752), 1e-4, "u(0.1 us) at Q = 5e5, 40 GHz");
    });

    // Damped cat density: unit trace, Hermitian, positive.
    for (double u : {1.0, 0.9752, 0.5}) {
        std::ostringstream tag;
        tag << "u=" << u;
        guarded(rep, "density_trace " + tag.str(), 1e-10, [&] {
            const DampedCat dc = damped_cat_at(reference_cat(2.0, kPi, analytic_theta, CatSign::Plus), u);
            const FockOperator rho = realize_density(dc, 40);
            record(rep, "density_trace " + tag.str(), std::abs(rho.trace() - 1.0), 1e-10);
            record(rep, "density_hermitian " + tag.str(), (rho - rho.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
            record(rep, "density_positive " + tag.str(), std::max(0.0, -min_eigenvalue(rho)), 1e-10);
        });
    }

    guarded(rep, "propagator_unitarity", 1e-10, [&] {
        const int nmax = 30;
        HamiltonianSpec spec{HamiltonianKind::FullCosine, params, true};
        const Eigen::MatrixXcd u = expm(build(spec, nmax), pulse_duration(params));
        record(rep, "propagator_unitarity", unitarity_defect(u), 1e-10, "full cosine Hamiltonian, N = 30");
        spec.kind = HamiltonianKind::Dispersive;
        const Eigen::MatrixXcd ud = expm(build(spec, nmax), 1e-7);
        record(rep, "dispersive_unitarity", unitarity_defect(ud), 1e-10);
    });

    guarded(rep, "protocol_state", 1e-8, [&] {
        const double alpha = 2.0;
        const int nmax = auto_nmax(alpha);
        const double tau2 = tau2_for_phi(kPi, params);
        ProtocolOptions po;
        po.theta_override = theta;
        const Preparation prep = prepare_cat(alpha, params, tau2, Outcome::Excited, nmax, po);
        CatSpec c = prep.projected.cat;
        c.theta = analytic_theta;
        const double f = fidelity(prep.projected.field, cat_to_fock(c, nmax));
        record(rep, "protocol_state", 1.0 - f, 1e-8, "numeric pipeline vs analytic cat");
        record(rep, "outcome_probabilities_sum",
               std::abs(prep.probability_ground + prep.probability_excited - 1.0), 1e-12);
    });

    guarded(rep, "wigner_closed_vs_numeric", 1e-6, [&] {
        GridSpec g{-6.0, 6.0, -6.0, 6.0, 49, 49};
        const DampedCat dc = damped_cat_at(reference_cat(2.0, kPi, analytic_theta, CatSign::Plus), 0.9752);
        const CatSpec truth = reference_cat(2.0, kPi, theta, CatSign::Plus);
        const FockOperator rho = realize_density(damped_cat_at(truth, 0.9752), 40);
        const WignerGrid closed = cat_wigner(dc, g);
        const WignerGrid numeric = numeric_wigner(rho, g);
        record(rep, "wigner_closed_vs_numeric", (closed.values - numeric.values).cwiseAbs().maxCoeff(), 1e-6);
        GridSpec wide{-10.0, 10.0, -10.0, 10.0, 161, 161};
        record(rep, "wigner_unit_integral", std::abs(cat_wigner(dc, wide).integral() - 1.0), 1e-6);
    });

    guarded(rep, "readout_closed_vs_numeric", 1e-8, [&] {
        double worst = 0.0, worst_sum = 0.0;
        for (CatSign sign : {CatSign::Minus, CatSign::Plus}) {
            for (double u : {1.0, 0.9752, 0.5}) {
                const CatSpec truth = reference_cat(2.0, kPi, theta, sign);
                CatSpec analytic = truth;
                analytic.theta = analytic_theta;
                ReadoutConfig cfg = make_readout_config(params, sign, 0.0);
                const Probabilities pc = probability_closed_form_at(cfg, params, analytic, u);
                const Probabilities pn =
                    probability_numeric(cfg, params, realize_density(damped_cat_at(truth, u), 40));
                worst = std::max(worst, std::abs(pc.p_g - pn.p_g));
                worst_sum = std::max({worst_sum, std::abs(pc.p_g + pc.p_e - 1.0), std::abs(pn.p_g + pn.p_e - 1.0)});
            }
        }
        record(rep, "readout_closed_vs_numeric", worst, 1e-8);
        record(rep, "readout_probabilities_sum", worst_sum, 1e-12);
    });

    guarded(rep, "lindblad_vs_damped_cat", 1e-3, [&] {
        const int nmax = 40;
        const CatSpec truth = reference_cat(2.0, kPi, theta, CatSign::Plus);
        CatSpec analytic = truth;
        analytic.theta = analytic_theta;
        const double tau = 5e-7;
        const double gamma = *derive(params).gamma;
        LindbladProblem lp;
        lp.decay_rate = gamma;
        const FockState psi = cat_to_fock(truth, nmax);
        lp.initial = psi * psi.adjoint();
        lp.t_final = tau;
        const LindbladResult lr = lindblad_evolve(lp);
        const FockOperator expected = realize_density(damped_cat(analytic, tau, params), nmax);
        record(rep, "lindblad_vs_damped_cat", trace_distance(lr.rho, expected), 1e-3, "|alpha|^2 = 4, tau = 0.5 us");
        record(rep, "lindblad_trace", lr.trace_drift, 1e-6);
    });

    return rep;
}

}  // namespace cavq
