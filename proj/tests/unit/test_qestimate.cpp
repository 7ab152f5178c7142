#include "cavq/errors.hpp"
#include "cavq/phase.hpp"
#include "cavq/qestimate.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace cavq;

namespace {

SystemParams nominal() { return SystemParams::from_ghz_with_coupling(6.5, 149.0, 0.634233, 40.0, 4e6, 5e5); }

CatSpec cat(double a2) {
    CatSpec c;
    c.beta = std::sqrt(a2);
    c.phi = M_PI;
    c.theta = 0.996;
    c.sign = CatSign::Minus;
    c.alpha_abs2 = a2;
    return c;
}

std::vector<double> taus() {
    std::vector<double> t;
    for (int i = 0; i < 20; ++i) t.push_back(1e-6 * i / 19.0);
    return t;
}

}  // namespace

TEST_SUITE("qestimate") {

TEST_CASE("noiseless recovery") {
    const auto p = nominal();
    const CatSpec c = cat(16.0);
    const ReadoutConfig cfg = make_readout_config(p, CatSign::Minus, 0.0, std::nullopt, 0.996);
    const auto t = taus();
    const ReadoutCurve data = curve(cfg, p, c, t);
    const FitResult r = fit_q(data.samples, cfg, p, c, 1e4, 1e8);
    CHECK(std::abs(r.q_hat / 5e5 - 1.0) < 1e-3);
    CHECK(r.residual >= 0.0);
    CHECK(r.residual < 1e-12);
    // Bit-for-bit reproducible.
    const FitResult again = fit_q(data.samples, cfg, p, c, 1e4, 1e8);
    CHECK(again.q_hat == r.q_hat);
    CHECK(again.iterations == r.iterations);
}

TEST_CASE("no information at phi' = pi") {
    const auto p = nominal();
    const CatSpec c = cat(16.0);
    const ReadoutConfig cfg = make_readout_config(p, CatSign::Minus, 0.0, M_PI / derive(p).chi);
    const ReadoutCurve data = curve(cfg, p, c, taus());
    CHECK_THROWS_AS(fit_q(data.samples, cfg, p, c, 1e4, 1e8), NonIdentifiableError);
}

TEST_CASE("bracket failure") {
    const auto p = nominal();
    const CatSpec c = cat(4.0);
    const ReadoutConfig cfg = make_readout_config(p, CatSign::Minus, 0.0, std::nullopt, 0.996);
    const ReadoutCurve data = curve(cfg, p, c, taus());
    CHECK_THROWS_AS(fit_q(data.samples, cfg, p, c, 1e6, 1e8), BracketError);
    CHECK_THROWS_AS(fit_q(data.samples, cfg, p, c, 1e6, 1e5), DomainError);
    std::vector<ReadoutSample> few(data.samples.begin(), data.samples.begin() + 4);
    CHECK_THROWS_AS(fit_q(few, cfg, p, c, 1e4, 1e8), DomainError);
}

TEST_CASE("error shrinks with shot count") {
    const auto p = nominal();
    const CatSpec c = cat(16.0);
    const ReadoutConfig cfg = make_readout_config(p, CatSign::Minus, 0.0, std::nullopt, 0.996);
    const auto t = taus();
    double prev = INFINITY;
    for (std::int64_t shots : {1000, 100000, 10000000}) {
        double err = 0.0;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const ReadoutCurve data = curve(cfg, p, c, t, ShotNoise{shots, seed});
            err += std::abs(fit_q(data.samples, cfg, p, c, 1e4, 1e8).q_hat / 5e5 - 1.0);
        }
        CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("joint phase-offset fit") {
    const auto p = nominal();
    const CatSpec c = cat(4.0);
    const ReadoutConfig truth = make_readout_config(p, CatSign::Minus, 0.0, std::nullopt, 0.996);
    const ReadoutCurve data = curve(truth, p, c, taus());
    // Fit starting from the unoverridden phase.
    const ReadoutConfig guess = make_readout_config(p, CatSign::Minus, 0.0);
    FitOptions o;
    o.fit_phase_offset = true;
    const FitResult r = fit_q(data.samples, guess, p, c, 1e4, 1e8, o);
    REQUIRE(r.phase_offset);
    CHECK(std::abs(r.q_hat / 5e5 - 1.0) < 1e-3);
    // The readout depends on the phase through cos only, so its sign is free.
    CHECK(std::abs(std::abs(wrap_pi(omega_minus_tau4(guess, p) + *r.phase_offset)) - 0.996) < 1e-5);
}

TEST_CASE("report format") {
    FitResult r;
    r.q_hat = 5e5;
    r.residual = 1e-6;
    r.iterations = 12;
    r.ci_68 = std::make_pair(4.9e5, 5.1e5);
    std::ostringstream os;
    write_fit_report(r, os);
    CHECK(os.str() == "q_hat = 500000\nresidual = 9.9999999999999995e-07\niterations = 12\nci68_low = 490000\nci68_high = 510000\n");
}

}
