#include "cavq/errors.hpp"
#include "cavq/params.hpp"
#include "cavq/phase.hpp"

#include <doctest.h>

#include <cmath>

using namespace cavq;

namespace {

SystemParams nominal() { return SystemParams::from_ghz_with_coupling(6.5, 149.0, 0.634233, 40.0, 4e6, 5e5); }

}  // namespace

TEST_SUITE("params") {

TEST_CASE("detuning from GHz inputs") {
    // Independent: Delta = 2pi GHz [149 (2 ng - 1) - 40].
    const double expected = 2.0 * M_PI * 1e9 * (149.0 * (2.0 * 0.634233 - 1.0) - 40.0);
    const auto d = derive(nominal());
    CHECK(d.detuning == doctest::Approx(expected).epsilon(1e-9));
    CHECK(d.detuning > 8.8e6);
    CHECK(d.detuning < 9.2e6);
    CHECK(d.chi == doctest::Approx(16e12 / expected).epsilon(1e-9));
    REQUIRE(d.gamma);
    CHECK(*d.gamma == doctest::Approx(2.0 * M_PI * 40e9 / 5e5));
}

TEST_CASE("coupling from the flux ratio") {
    const auto p = SystemParams::from_ghz(6.5, 149.0, 0.634233, 40.0, {1e-4, 0.0});
    CHECK(p.coupling_abs() == doctest::Approx(1e-4 * 2.0 * M_PI * 6.5e9));
    const auto q = SystemParams::from_ghz_with_coupling(6.5, 149.0, 0.634233, 40.0, 4e6);
    CHECK(q.coupling_abs() == doctest::Approx(4e6));
    CHECK_FALSE(q.quality.has_value());
}

TEST_CASE("charge degeneracy has Omega = 0") {
    const auto p = SystemParams::from_ghz(6.5, 149.0, 0.5, 40.0, {1e-4, 0.0});
    CHECK(qubit_frequency(p) == 0.0);
    CHECK(derive(p).detuning == doctest::Approx(-p.omega));
}

TEST_CASE("pulse duration") {
    const double expected = M_PI / (4.0 * 2.0 * M_PI * 6.5e9);
    CHECK(pulse_duration(nominal()) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("dispersive advisory") {
    const auto r = check_dispersive(nominal());
    CHECK(r.detuning_over_g == doctest::Approx(derive(nominal()).detuning / 4e6));
    CHECK(r.acceptable);
    const auto strong = SystemParams::from_ghz_with_coupling(6.5, 149.0, 0.634233, 40.0, 8e6);
    CHECK_FALSE(check_dispersive(strong).acceptable);
    const auto neg = SystemParams::from_ghz_with_coupling(6.5, 149.0, 0.6, 40.0, 4e6);
    CHECK_THROWS_AS(check_dispersive(neg), DomainError);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(SystemParams::from_ghz(-1.0, 149.0, 0.6, 40.0, {1e-4, 0.0}), DomainError);
    CHECK_THROWS_AS(SystemParams::from_ghz(6.5, 149.0, 0.6, 0.0, {1e-4, 0.0}), DomainError);
    CHECK_THROWS_AS(SystemParams::from_ghz(6.5, 149.0, 0.6, 40.0, {1e-4, 0.0}, -5.0), DomainError);
}

TEST_CASE("coupling range estimate") {
    // Independent evaluation: B = sqrt(hbar w / (eps0 V c^2)), V = lambda^3,
    // ratio = pi B s^2 / Phi0.
    auto oracle = [](double ghz, double side) {
        const double w = 2.0 * M_PI * ghz * 1e9;
        const double lambda = 299792458.0 / (ghz * 1e9);
        const double b = std::sqrt(1.054571817e-34 * w / (8.8541878128e-12 * std::pow(lambda, 3) * 299792458.0 * 299792458.0));
        return M_PI * b * side * side / (6.62607015e-34 / (2.0 * 1.602176634e-19));
    };
    const auto r = estimate_coupling_range(ghz_to_rad_s(20.0), ghz_to_rad_s(300.0), 50e-6);
    CHECK(r.low == doctest::Approx(oracle(20.0, 50e-6)).epsilon(1e-9));
    CHECK(r.high == doctest::Approx(oracle(300.0, 50e-6)).epsilon(1e-9));
    // Within an order of magnitude of the quoted band edges.
    CHECK(r.low > 8.55e-7);
    CHECK(r.low < 8.55e-5);
    CHECK(r.high > 1.9e-4);
    CHECK(r.high < 1.9e-2);
    const auto doubled = estimate_coupling_range(ghz_to_rad_s(20.0), ghz_to_rad_s(300.0), 100e-6);
    CHECK(doubled.high == doctest::Approx(4.0 * r.high));
}

}
