#include "cavq/dissipation.hpp"
#include "cavq/errors.hpp"
#include "cavq/phase.hpp"
#include "cavq/readout.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace cavq;

namespace {

SystemParams nominal() { return SystemParams::from_ghz_with_coupling(6.5, 149.0, 0.634233, 40.0, 4e6, 5e5); }

CatSpec cat(double a2, double phi, double theta, CatSign s) {
    CatSpec c;
    c.beta = std::sqrt(a2);
    c.phi = phi;
    c.theta = theta;
    c.sign = s;
    c.alpha_abs2 = a2;
    return c;
}

ReadoutConfig config_for(const SystemParams& p, CatSign s, double phi_prime) {
    return make_readout_config(p, s, 0.0, phi_prime / derive(p).chi);
}

}  // namespace

TEST_SUITE("readout") {

TEST_CASE("default tau4 gives phi' = pi/2") {
    const auto p = nominal();
    const ReadoutConfig c = make_readout_config(p, CatSign::Minus, 0.0);
    CHECK(c.phi_prime == doctest::Approx(M_PI / 2).epsilon(1e-14));
    CHECK(c.tau4 == doctest::Approx(0.5 * M_PI * derive(p).detuning / 16e12));
    CHECK(readout_tau(1e-7, p) == doctest::Approx(1e-7 + pulse_duration(p)));
}

TEST_CASE("closed form matches the numeric trace over the sweep") {
    const auto p = nominal();
    double worst = 0.0;
    for (CatSign s : {CatSign::Minus, CatSign::Plus})
        for (double phi : {M_PI / 2, M_PI})
            for (double phip : {M_PI / 4, M_PI / 2})
                for (double u : {1.0, 0.975, 0.5})
                    for (double a2 : {1.0, 4.0, 16.0}) {
                        const CatSpec c = cat(a2, phi, 0.996, s);
                        const ReadoutConfig cfg = config_for(p, s, phip);
                        const Probabilities pc = probability_closed_form_at(cfg, p, c, u);
                        const int nmax = auto_nmax(std::sqrt(a2));
                        const Probabilities pn = probability_numeric(cfg, p, realize_density(damped_cat_at(c, u), nmax));
                        worst = std::max(worst, std::abs(pc.p_g - pn.p_g));
                        CHECK(pc.p_g + pc.p_e == doctest::Approx(1.0).epsilon(1e-12));
                        CHECK(pn.p_g + pn.p_e == doctest::Approx(1.0).epsilon(1e-12));
                    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("A and B assemble the projected states") {
    const auto p = nominal();
    for (CatSign s : {CatSign::Minus, CatSign::Plus}) {
        const CatSpec c = cat(4.0, M_PI, 0.996, s);
        const ReadoutConfig cfg = config_for(p, s, M_PI / 2);
        const FockOperator rho = realize_density(damped_cat_at(c, 0.9), auto_nmax(2.0));
        const ReadoutOperators ops = assemble_operators(cfg, p, rho);
        const double sgn = s == CatSign::Minus ? -1.0 : 1.0;
        const double pg = 0.25 * (ops.a + sgn * ops.b).trace().real();
        CHECK(pg == doctest::Approx(probability_numeric(cfg, p, rho).p_g).epsilon(1e-12));
    }
}

TEST_CASE("tau4 = 0 gives a deterministic outcome") {
    const auto p = nominal();
    const CatSpec c = cat(4.0, M_PI, 0.996, CatSign::Minus);
    const ReadoutConfig cfg = make_readout_config(p, CatSign::Minus, 0.0, 0.0);
    const Probabilities pn = probability_numeric(cfg, p, realize_density(damped_cat_at(c, 0.8), auto_nmax(2.0)));
    CHECK(pn.p_e == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(pn.p_g) < 1e-12);
}

TEST_CASE("tau = 0 needs no quality factor information") {
    const auto p = nominal();
    const CatSpec c = cat(4.0, M_PI, 0.996, CatSign::Minus);
    const ReadoutConfig cfg = config_for(p, CatSign::Minus, M_PI / 2);
    const double a = probability_closed_form(cfg, p.with_quality(1e5), c).p_g;
    const double b = probability_closed_form(cfg, p.with_quality(1e7), c).p_g;
    CHECK(a == doctest::Approx(b).epsilon(1e-15));
    const Probabilities pn = probability_numeric(cfg, p, realize_density(damped_cat_at(c, 1.0), auto_nmax(2.0)));
    CHECK(std::abs(a - pn.p_g) < 1e-10);
}

TEST_CASE("classical mixture matches the reduced formula") {
    const auto p = nominal();
    for (CatSign s : {CatSign::Minus, CatSign::Plus}) {
        const CatSpec c = cat(4.0, M_PI, 0.996, s);
        const ReadoutConfig cfg = config_for(p, s, M_PI / 3);
        const DampedCat dc = damped_cat_at(c, 0.7);
        const Probabilities pn = probability_numeric(cfg, p, realize_mixture(dc, auto_nmax(2.0)));
        const Probabilities pr = probability_classical_mixture(cfg, p, c, 0.7);
        CHECK(std::abs(pn.p_g - pr.p_g) < 1e-10);
        CHECK(std::abs(pn.p_e - pr.p_e) < 1e-10);
    }
}

TEST_CASE("no encoding at phi' = n pi") {
    const auto p = nominal();
    const CatSpec c = cat(4.0, M_PI, 0.996, CatSign::Minus);
    const ReadoutConfig cfg = config_for(p, CatSign::Minus, M_PI);
    const double h = 1e-4;
    for (double u : {0.3, 0.7, 0.95}) {
        const double d = (probability_closed_form_at(cfg, p, c, u + h).p_g -
                          probability_closed_form_at(cfg, p, c, u - h).p_g) / (2 * h);
        CHECK(std::abs(d) <= 1e-10);
    }
    CHECK_FALSE(probability_closed_form_at(cfg, p, c, 0.5).warnings.empty());
    CHECK(probability_closed_form_at(config_for(p, CatSign::Minus, M_PI / 2), p, c, 0.5).warnings.empty());
}

TEST_CASE("decohered limit tends to one half") {
    const auto p = nominal();
    const CatSpec c = cat(100.0, M_PI, 0.996, CatSign::Minus);
    const ReadoutConfig cfg = config_for(p, CatSign::Minus, M_PI / 2);
    for (double u : {1.0, 0.9, 0.5, 0.3}) {
        const Probabilities pr = probability_classical_mixture(cfg, p, c, u);
        CHECK(std::abs(pr.p_g - 0.5) < 0.01);
    }
}

TEST_CASE("curve") {
    const auto p = nominal();
    const CatSpec c = cat(16.0, M_PI, 0.996, CatSign::Minus);
    const ReadoutConfig cfg = make_readout_config(p, CatSign::Minus, 0.0, std::nullopt, 0.996);
    const std::vector<double> taus{0.0, 1e-7, 2e-7, 5e-7};
    const ReadoutCurve a = curve(cfg, p, c, taus);
    for (const auto& s : a.samples) CHECK(std::abs(s.p_g + s.p_e - 1.0) <= 1e-12);
    const ReadoutCurve n1 = curve(cfg, p, c, taus, ShotNoise{1000, 7});
    const ReadoutCurve n2 = curve(cfg, p, c, taus, ShotNoise{1000, 7});
    const ReadoutCurve n3 = curve(cfg, p, c, taus, ShotNoise{1000, 8});
    bool differs = false;
    for (std::size_t i = 0; i < taus.size(); ++i) {
        CHECK(n1.samples[i].p_g == n2.samples[i].p_g);
        differs = differs || n1.samples[i].p_g != n3.samples[i].p_g;
    }
    CHECK(differs);
    const std::vector<double> bad{1e-7, 0.0};
    CHECK_THROWS_AS(curve(cfg, p, c, bad), DomainError);
    CHECK(a.params_digest.size() == 16);
    CHECK(a.params_digest != curve(cfg, p.with_quality(1e6), c, taus).params_digest);
}

TEST_CASE("CSV round trip") {
    const auto p = nominal();
    const CatSpec c = cat(4.0, M_PI, 0.996, CatSign::Minus);
    const ReadoutConfig cfg = make_readout_config(p, CatSign::Minus, 0.0);
    const std::vector<double> taus{0.0, 3e-7, 9e-7};
    const ReadoutCurve a = curve(cfg, p, c, taus);
    std::stringstream ss;
    write_csv(a, ss);
    const auto rows = read_readout_csv(ss);
    REQUIRE(rows.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(rows[i].tau == a.samples[i].tau);
        CHECK(rows[i].p_g == a.samples[i].p_g);
    }
    std::istringstream bad("tau,p\n1,2\n");
    CHECK_THROWS_AS(read_readout_csv(bad), DomainError);
}

}
