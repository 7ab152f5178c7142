#include "cavq/config.hpp"
#include "cavq/errors.hpp"
#include "cavq/phase.hpp"

#include <doctest.h>

#include <sstream>

using namespace cavq;

namespace {

const char* kNominal = R"(# comment line
ej_ghz = 6.5
ech4_ghz = 149   # 4 E_ch / h
ng = 0.634233
omega_ghz = 40
g_rad_s = 4e6
q_factor = 5e5
alpha = 4
phi = pi
theta_override = 0.996
)";

RunConfig parse(const std::string& text) {
    std::istringstream in(text);
    return RunConfig::parse(in);
}

std::string error_of(const std::string& text) {
    try {
        parse(text).params();
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("nominal config") {
    const RunConfig c = parse(kNominal);
    const SystemParams p = c.params();
    CHECK(p.coupling_abs() == doctest::Approx(4e6));
    CHECK(*p.quality == 5e5);
    CHECK(c.alpha() == 4.0);
    CHECK(c.target_phi(p) == doctest::Approx(kPi));
    CHECK(c.tau2(p) == doctest::Approx(tau2_for_phi(kPi, p)));
    CHECK(*c.protocol_options().theta_override == 0.996);
    CHECK(c.outcome() == Outcome::Excited);
    CHECK(c.nmax() == auto_nmax(4.0));
    CHECK(c.wigner_aligned());
}

TEST_CASE("diagnostics carry line numbers") {
    CHECK(error_of("ej_ghz = 6.5\nbogus = 1\n") == "line 2: unknown key 'bogus'");
    CHECK(error_of("ej_ghz = 6.5\nng 0.6\n").rfind("line 2: expected", 0) == 0);
    CHECK(error_of("ej_ghz = abc\n") == "line 1: value 'abc' for key 'ej_ghz' is not a number");
    CHECK(error_of("ng = 0.6\nng = 0.7\n") == "line 2: duplicate key 'ng'");
    CHECK(error_of("ng =\n") == "line 1: missing value for key 'ng'");
}

TEST_CASE("missing keys are named") {
    CHECK(error_of("ej_ghz = 6.5\n") == "missing required key 'ech4_ghz'");
    CHECK(error_of("ej_ghz = 6.5\nech4_ghz = 149\nng = 0.6\nomega_ghz = 40\n") ==
          "missing required key 'eta_ratio' (or 'g_rad_s')");
    std::string both = kNominal;
    both += "eta_ratio = 1e-4\n";
    CHECK(error_of(both).find("either 'eta_ratio' or 'g_rad_s'") != std::string::npos);
}

TEST_CASE("overrides replace file values") {
    RunConfig c = parse(kNominal);
    c.set("q_factor", "1e6");
    c.set("outcome", "g");
    CHECK(*c.params().quality == 1e6);
    CHECK(c.outcome() == Outcome::Ground);
    CHECK_THROWS_AS(c.set("outcome", "x"), ConfigError);
    CHECK_THROWS_AS(c.set("nope", "1"), ConfigError);
}

TEST_CASE("phi and tau2_s are exclusive") {
    RunConfig c = parse(kNominal);
    c.set("tau2_s", "1e-7");
    CHECK_THROWS_AS(c.tau2(c.params()), ConfigError);
    c.erase("phi");
    CHECK(c.tau2(c.params()) == 1e-7);
}

TEST_CASE("resolved config expands defaults") {
    const auto r = parse(kNominal).resolved();
    CHECK(r.at("grid_nx") == "257");
    CHECK(r.at("outcome") == "e");
    CHECK(r.at("wigner_frame") == "aligned");
    CHECK(r.at("fock_nmax") == std::to_string(auto_nmax(4.0)));
    CHECK(r.at("ej_ghz") == "6.5");
}

TEST_CASE("grid keys") {
    RunConfig c = parse(kNominal);
    c.set("grid_nx", "33");
    c.set("grid_x_min", "-4");
    const GridSpec g = c.grid();
    CHECK(g.nx == 33);
    CHECK(g.x_min == -4.0);
    c.set("grid_x_max", "-5");
    CHECK_THROWS_AS(c.grid(), ConfigError);
}

}
