#include "cavq/errors.hpp"
#include "cavq/fock.hpp"

#include <doctest.h>

#include <cmath>

using namespace cavq;

TEST_SUITE("fock") {

TEST_CASE("ladder operators") {
    const int n = 12;
    const FockOperator a = annihilation(n);
    const FockOperator comm = a * creation(n) - creation(n) * a;
    // [a, a^dag] = 1 except in the truncated top level.
    for (int k = 0; k < n; ++k) CHECK(std::abs(comm(k, k) - 1.0) < 1e-14);
    CHECK(((creation(n) * a) - number_operator(n)).norm() < 1e-13);
}

TEST_CASE("coherent amplitudes against log-gamma evaluation") {
    const cplx alpha(2.3, -1.1);
    const int nmax = 60;
    const FockState c = coherent_amplitudes(alpha, nmax);
    for (int n = 0; n <= nmax; ++n) {
        const double logmag = -0.5 * std::norm(alpha) + n * std::log(std::abs(alpha)) - 0.5 * std::lgamma(n + 1.0);
        const cplx expected = std::polar(std::exp(logmag), n * std::arg(alpha));
        CHECK(std::abs(c[n] - expected) < 1e-14);
    }
}

TEST_CASE("tail mass and truncation error") {
    // Direct Poisson sum beyond nmax.
    const double m = 16.0;
    double tail = 0.0;
    for (int n = 31; n < 400; ++n) tail += std::exp(-m + n * std::log(m) - std::lgamma(n + 1.0));
    CHECK(coherent_tail_mass(m, 30) == doctest::Approx(tail).epsilon(1e-10));
    CHECK_THROWS_AS(coherent_state(4.0, 20), TruncationError);
    const FockState s = coherent_state(4.0, auto_nmax(4.0));
    CHECK(s.norm() == doctest::Approx(1.0));
    CHECK(mean_photon_number(s) == doctest::Approx(16.0).epsilon(1e-8));
}

TEST_CASE("coherent state is an eigenvector of a") {
    const cplx alpha(1.5, 0.5);
    const int nmax = auto_nmax(std::abs(alpha));
    const FockState s = coherent_state(alpha, nmax);
    const FockState as = annihilation(nmax) * s;
    CHECK((as.head(nmax - 5) - alpha * s.head(nmax - 5)).norm() < 1e-10);
}

TEST_CASE("expm agrees with the number-phase propagator") {
    const int nmax = 15;
    const double rate = 3.7e6, t = 2.1e-7;
    const Eigen::MatrixXcd u1 = expm(rate * number_operator(nmax), t);
    const Eigen::MatrixXcd u2 = number_phase_propagator(rate, t, nmax);
    CHECK((u1 - u2).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(unitarity_defect(u1) < 1e-13);
}

TEST_CASE("expm rejects non-Hermitian input") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 1) = 1.0;
    CHECK_THROWS_AS(expm(m, 1.0), DomainError);
}

TEST_CASE("expm of a two-level Hamiltonian") {
    Eigen::MatrixXcd sx(2, 2);
    sx << 0, 1, 1, 0;
    const double w = 0.7, t = 1.3;
    const Eigen::MatrixXcd u = expm(w * sx, t);
    CHECK(std::abs(u(0, 0) - std::cos(w * t)) < 1e-14);
    CHECK(std::abs(u(0, 1) - cplx(0, -std::sin(w * t))) < 1e-14);
}

TEST_CASE("fidelity and trace distance") {
    const FockState a = coherent_state(1.0, 30);
    const FockState b = coherent_state(cplx(1.0, 0.3), 30);
    CHECK(fidelity(a, a * std::polar(1.0, 0.4)) == doctest::Approx(1.0));
    // |<a|b>| = exp(-|a - b|^2 / 2).
    CHECK(fidelity(a, b) == doctest::Approx(std::exp(-0.5 * 0.09)).epsilon(1e-10));
    const FockOperator ra = a * a.adjoint(), rb = b * b.adjoint();
    const double f = fidelity(a, b);
    CHECK(trace_distance(ra, rb) == doctest::Approx(std::sqrt(1.0 - f * f)).epsilon(1e-9));
    CHECK(trace_distance(ra, ra) < 1e-14);
}

}
