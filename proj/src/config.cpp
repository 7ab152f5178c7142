#include "cavq/config.hpp"

#include "cavq/errors.hpp"
#include "cavq/phase.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>

namespace cavq {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_number(const std::string& key, const std::string& text, int line) {
    // Accept the symbolic forms "pi", "pi/2", "2*pi" for phases.
    std::string t = text;
    t.erase(std::remove(t.begin(), t.end(), ' '), t.end());
    if (t == "pi") return kPi;
    if (t == "pi/2") return kPi / 2.0;
    if (t == "2*pi" || t == "2pi") return kTwoPi;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw ConfigError("value '" + text + "' for key '" + key + "' is not a number", line);
    }
    if (used != t.size()) throw ConfigError("value '" + text + "' for key '" + key + "' is not a number", line);
    if (!std::isfinite(v)) throw ConfigError("value for key '" + key + "' must be finite", line);
    return v;
}

}  // namespace

const std::vector<std::string>& RunConfig::known_keys() {
    static const std::vector<std::string> keys = {
        "ej_ghz",     "ech4_ghz",     "ng",          "omega_ghz",     "eta_ratio",  "g_rad_s",
        "q_factor",   "alpha",        "phi",         "theta_override", "tau2_s",    "tau3_s",
        "tau4_s",     "fock_nmax",    "grid_x_min",  "grid_x_max",    "grid_p_min", "grid_p_max",
        "grid_nx",    "grid_np",      "omega_minus_tau4_mod",         "outcome",    "keep_free_phase",
        "wigner_frame",
    };
    return keys;
}

RunConfig RunConfig::parse(std::istream& in) {
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected 'key = value', got '" + line + "'", lineno);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("missing key before '='", lineno);
        if (value.empty()) throw ConfigError("missing value for key '" + key + "'", lineno);
        if (cfg.values_.count(key)) throw ConfigError("duplicate key '" + key + "'", lineno);
        cfg.set(key, value, lineno);
    }
    return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file '" + path + "'");
    return parse(f);
}

void RunConfig::set(const std::string& key, const std::string& value, int line) {
    const auto& keys = known_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
        throw ConfigError("unknown key '" + key + "'", line);
    if (key == "outcome") {
        if (value != "g" && value != "e") throw ConfigError("outcome must be 'g' or 'e'", line);
    } else if (key == "wigner_frame") {
        if (value != "aligned" && value != "lab") throw ConfigError("wigner_frame must be 'aligned' or 'lab'", line);
    } else if (key == "keep_free_phase") {
        if (value != "true" && value != "false") throw ConfigError("keep_free_phase must be true or false", line);
    } else {
        parse_number(key, value, line);
    }
    values_[key] = value;
    lines_[key] = line;
}

bool RunConfig::has(const std::string& key) const { return values_.count(key) > 0; }

void RunConfig::erase(const std::string& key) {
    values_.erase(key);
    lines_.erase(key);
}

std::optional<double> RunConfig::number(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return parse_number(key, it->second, lines_.at(key));
}

double RunConfig::require(const std::string& key) const {
    if (auto v = number(key)) return *v;
    throw ConfigError("missing required key '" + key + "'");
}

SystemParams RunConfig::params() const {
    const double ej = require("ej_ghz");
    const double ech4 = require("ech4_ghz");
    const double ng = require("ng");
    const double omega = require("omega_ghz");
    const auto q = number("q_factor");
    const auto eta = number("eta_ratio");
    const auto g = number("g_rad_s");
    if (eta && g) throw ConfigError("set either 'eta_ratio' or 'g_rad_s', not both", lines_.at("g_rad_s"));
    if (!eta && !g) throw ConfigError("missing required key 'eta_ratio' (or 'g_rad_s')");
    try {
        if (g) return SystemParams::from_ghz_with_coupling(ej, ech4, ng, omega, *g, q);
        return SystemParams::from_ghz(ej, ech4, ng, omega, *eta, q);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
}

double RunConfig::alpha() const { return require("alpha"); }

double RunConfig::tau2(const SystemParams& p) const {
    if (auto t = number("tau2_s")) {
        if (has("phi")) throw ConfigError("set either 'phi' or 'tau2_s', not both", lines_.at("tau2_s"));
        if (*t < 0.0) throw ConfigError("tau2_s must be non-negative", lines_.at("tau2_s"));
        return *t;
    }
    if (auto phi = number("phi")) return tau2_for_phi(*phi, p);
    throw ConfigError("missing required key 'phi' (or 'tau2_s')");
}

double RunConfig::target_phi(const SystemParams& p) const {
    if (auto phi = number("phi")) return *phi;
    return 2.0 * derive(p).chi * tau2(p);
}

Outcome RunConfig::outcome() const {
    auto it = values_.find("outcome");
    if (it == values_.end() || it->second == "e") return Outcome::Excited;
    return Outcome::Ground;
}

bool RunConfig::wigner_aligned() const {
    auto it = values_.find("wigner_frame");
    return it == values_.end() || it->second == "aligned";
}

ProtocolOptions RunConfig::protocol_options() const {
    ProtocolOptions o;
    auto it = values_.find("keep_free_phase");
    o.keep_free_phase = it != values_.end() && it->second == "true";
    o.theta_override = number("theta_override");
    return o;
}

int RunConfig::nmax() const {
    if (auto n = number("fock_nmax")) {
        if (*n < 1 || *n != std::floor(*n)) throw ConfigError("fock_nmax must be a positive integer", lines_.at("fock_nmax"));
        return static_cast<int>(*n);
    }
    return auto_nmax(std::abs(alpha()));
}

GridSpec RunConfig::grid() const {
    GridSpec g;
    g.x_min = number("grid_x_min").value_or(g.x_min);
    g.x_max = number("grid_x_max").value_or(g.x_max);
    g.p_min = number("grid_p_min").value_or(g.p_min);
    g.p_max = number("grid_p_max").value_or(g.p_max);
    g.nx = static_cast<int>(number("grid_nx").value_or(g.nx));
    g.np = static_cast<int>(number("grid_np").value_or(g.np));
    try {
        g.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    return g;
}

std::map<std::string, std::string> RunConfig::resolved() const {
    std::map<std::string, std::string> out = values_;
    const GridSpec g = grid();
    out.try_emplace("grid_x_min", format_double(g.x_min));
    out.try_emplace("grid_x_max", format_double(g.x_max));
    out.try_emplace("grid_p_min", format_double(g.p_min));
    out.try_emplace("grid_p_max", format_double(g.p_max));
    out.try_emplace("grid_nx", std::to_string(g.nx));
    out.try_emplace("grid_np", std::to_string(g.np));
    out.try_emplace("outcome", "e");
    out.try_emplace("keep_free_phase", "false");
    out.try_emplace("wigner_frame", "aligned");
    if (has("alpha")) out.try_emplace("fock_nmax", std::to_string(nmax()));
    return out;
}

}  // namespace cavq
