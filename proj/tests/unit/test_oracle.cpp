#include "cavq/dissipation.hpp"
#include "cavq/errors.hpp"
#include "cavq/oracle.hpp"
#include "cavq/phase.hpp"

#include <doctest.h>

#include <cmath>

using namespace cavq;

namespace {

CatSpec cat(double alpha, double phi, double theta, CatSign s) {
    CatSpec c;
    c.beta = alpha;
    c.phi = phi;
    c.theta = theta;
    c.sign = s;
    c.alpha_abs2 = alpha * alpha;
    return c;
}

QubitFieldState superposed(double alpha, int nmax) {
    const FockState a = coherent_state(alpha, nmax);
    return {a / std::sqrt(2.0), cplx(0.0, 1.0) * a / std::sqrt(2.0)};
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("coherent state decays onto the analytic trajectory") {
    const int nmax = 40;
    const double omega = 2.0 * M_PI * 40e9, gamma = omega / 5e5, tau = 3e-7;
    const cplx alpha(2.0, 0.5);
    const FockState psi = coherent_state(alpha, nmax);
    LindbladProblem lp;
    lp.hamiltonian = omega * number_operator(nmax);
    lp.decay_rate = gamma;
    lp.initial = psi * psi.adjoint();
    lp.t_final = tau;
    const LindbladResult r = lindblad_evolve(lp);
    CHECK(r.rotating_frame);
    const double u = std::exp(-gamma * tau / 2.0);
    const FockState target = coherent_state(alpha * u * std::polar(1.0, -reduce_phase(omega, tau)), nmax);
    const double f = std::sqrt(target.dot(r.rho * target).real());
    CHECK(f >= 1.0 - 1e-6);
    CHECK(r.trace_drift <= 1e-6);
    CHECK(r.hermiticity_defect <= 1e-10);
}

TEST_CASE("damped cat density matches the master equation") {
    const int nmax = 40;
    const SystemParams p = SystemParams::from_ghz_with_coupling(6.5, 149.0, 0.634233, 40.0, 4e6, 5e5);
    for (CatSign s : {CatSign::Plus, CatSign::Minus}) {
        const CatSpec c = cat(2.0, M_PI, 0.996, s);
        const FockState psi = cat_to_fock(c, nmax);
        for (double tau : {1e-7, 5e-7}) {
            LindbladProblem lp;
            lp.decay_rate = *derive(p).gamma;
            lp.initial = psi * psi.adjoint();
            lp.t_final = tau;
            const LindbladResult r = lindblad_evolve(lp);
            CHECK(trace_distance(r.rho, realize_density(damped_cat(c, tau, p), nmax)) <= 1e-3);
        }
    }
}

TEST_CASE("no loss conserves purity") {
    const int nmax = 12;
    FockOperator h = FockOperator::Zero(nmax + 1, nmax + 1);
    for (int n = 0; n <= nmax; ++n) h(n, n) = 1e5 * n * n;  // Kerr: not a pure rotation
    h += 2e4 * (annihilation(nmax) + creation(nmax));
    const FockState psi = coherent_state(1.0, nmax, 1e-6);
    LindbladProblem lp;
    lp.hamiltonian = h;
    lp.initial = psi * psi.adjoint();
    lp.t_final = 2e-6;
    const LindbladResult r = lindblad_evolve(lp);
    CHECK_FALSE(r.rotating_frame);
    CHECK(purity(r.rho) == doctest::Approx(1.0).epsilon(1e-8));
    // Same evolution by exact exponentiation.
    const FockState exact = expm(h, lp.t_final) * psi;
    CHECK(trace_distance(r.rho, exact * exact.adjoint()) < 1e-8);
}

TEST_CASE("RK4 converges at fourth order") {
    // ||H|| ~ 1 keeps dt = 1e-2 inside the guards.
    const int nmax = 4;
    FockOperator h = FockOperator::Zero(nmax + 1, nmax + 1);
    for (int n = 0; n <= nmax; ++n) h(n, n) = 0.04 * n * n;
    h += 0.05 * (annihilation(nmax) + creation(nmax));
    const FockState psi = coherent_state(0.8, nmax, 1e-2);
    LindbladProblem lp;
    lp.hamiltonian = h;
    lp.decay_rate = 0.05;
    lp.initial = psi * psi.adjoint() / psi.squaredNorm();
    lp.t_final = 20.0;
    auto run = [&](double dt) {
        LindbladProblem q = lp;
        q.dt = dt;
        return lindblad_evolve(q).rho;
    };
    const FockOperator ref = run(1.25e-3);
    const double e1 = (run(1e-2) - ref).cwiseAbs().maxCoeff();
    const double e2 = (run(5e-3) - ref).cwiseAbs().maxCoeff();
    CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.1));
}

TEST_CASE("step-size guards") {
    LindbladProblem lp;
    lp.decay_rate = 1e6;
    lp.initial = identity(3) / 4.0;
    lp.t_final = 1e-6;
    lp.dt = 1e-8;  // dt * gamma = 1e-2
    CHECK_THROWS_AS(lindblad_evolve(lp), DomainError);
    lp.dt = 1e-9;
    CHECK_NOTHROW(lindblad_evolve(lp));
}

TEST_CASE("zero coupling is exact") {
    const auto r = dispersive_vs_full(0.0, 1.0, superposed(1.0, 15), 3.0);
    CHECK(r.fidelity == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("deep dispersive regime") {
    const double delta = 1.0, g = 0.05;
    const double t = M_PI * delta / (g * g);
    const auto r = dispersive_vs_full(g, delta, superposed(1.0, auto_nmax(1.0)), t);
    CHECK(r.fidelity >= 0.999);
    // The averaged second-order generator reproduces +/- chi.
    CHECK(r.generator_error < 1e-2);
    CHECK(r.chi_excited_estimate == doctest::Approx(g * g / delta).epsilon(1e-2));
    CHECK(r.chi_ground_estimate == doctest::Approx(-g * g / delta).epsilon(1e-2));

    // The Delta/|g| = 2.25 operating point is diagnostic only, but clearly worse.
    const double gp = 1.0 / 2.25;
    const auto weak = dispersive_vs_full(gp, delta, superposed(1.0, auto_nmax(1.0)), M_PI * delta / (gp * gp));
    CHECK(weak.fidelity < r.fidelity);
}

TEST_CASE("log-log slope") {
    const std::vector<double> x{1.0, 2.0, 4.0, 8.0};
    std::vector<double> y;
    for (double v : x) y.push_back(3.0 * v * v);
    CHECK(loglog_slope(x, y) == doctest::Approx(2.0));
}

}
