#include "cavq/readout.hpp"

#include "cavq/errors.hpp"
#include "cavq/hamiltonians.hpp"
#include "cavq/phase.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace cavq {

double default_tau4(const SystemParams& params) {
    const auto d = derive(params);
    if (!(d.detuning > 0.0)) throw DomainError("readout requires Delta > 0");
    return 0.5 * kPi / d.chi;
}

double readout_tau(double tau3_prime, const SystemParams& params) {
    return tau3_prime + pulse_duration(params);
}

ReadoutConfig make_readout_config(const SystemParams& params, CatSign prepared, double tau,
                                  std::optional<double> tau4, std::optional<double> omega_minus_tau4_mod) {
    const auto d = derive(params);
    if (!(d.detuning > 0.0)) throw DomainError("readout requires Delta > 0");
    if (tau < 0.0) throw DomainError("tau must be non-negative");
    ReadoutConfig cfg;
    cfg.prepared_sign = prepared;
    cfg.tau = tau;
    cfg.tau4 = tau4 ? *tau4 : default_tau4(params);
    cfg.phi_prime = d.chi * cfg.tau4;
    cfg.omega_minus_tau4_mod = omega_minus_tau4_mod;
    return cfg;
}

double omega_minus_tau4(const ReadoutConfig& cfg, const SystemParams& params) {
    if (cfg.omega_minus_tau4_mod) return wrap_two_pi(*cfg.omega_minus_tau4_mod);
    const auto d = derive(params);
    return reduce_phase(d.qubit_freq - d.chi, cfg.tau4);
}

double coherence_trace_closed_form(double om_tau4, double phi_prime, double u, const CatSpec& cat) {
    const double a0 = cat.alpha_abs2;
    const double phi = cat.phi;
    const double theta = cat.theta;
    const double at = a0 * u * u;  // alpha(tau) = |alpha u|^2
    const double s = std::sin(0.5 * phi);
    const double gamma = 2.0 * a0 * s * s;
    const double sp = std::sin(phi_prime);
    const double g_plus = 2.0 * at * sp * std::sin(phi + phi_prime);
    const double g_minus = 2.0 * at * sp * std::sin(phi - phi_prime);
    const double th_plus = 2.0 * at * std::cos(phi + phi_prime) * sp;
    const double th_minus = 2.0 * at * std::cos(phi - phi_prime) * sp;
    const double n2 = cat.norm_sq();
    const double sgn = sign_value(cat.sign);

    const double diag = 2.0 / n2 * std::exp(-2.0 * at * sp * sp) *
                        std::cos(om_tau4 - at * std::sin(2.0 * phi_prime));
    const double cross_minus =
        std::cos(th_minus - a0 * std::sin(phi) + theta - om_tau4) * std::exp(g_minus - gamma) / n2;
    const double cross_plus =
        std::cos(th_plus + a0 * std::sin(phi) - theta - om_tau4) * std::exp(-g_plus - gamma) / n2;
    return diag + sgn * (cross_minus + cross_plus);
}

namespace {

void check_encoding(const ReadoutConfig& cfg, std::vector<std::string>& warnings) {
    if (std::abs(std::sin(cfg.phi_prime)) < 1e-9)
        warnings.emplace_back("phi' is a multiple of pi: the readout carries no quality-factor information");
}

// P_g / P_e from Re Tr[e^{-i varphi} rho]. For the "-" cat the ground outcome
// takes the minus sign; the "+" cat starts from |e> and the roles swap.
Probabilities from_coherence(double trace_rho, double coherence, CatSign prepared) {
    Probabilities p;
    const double s = prepared == CatSign::Minus ? 1.0 : -1.0;
    p.p_g = 0.5 * (trace_rho - s * coherence);
    p.p_e = 0.5 * (trace_rho + s * coherence);
    return p;
}

}  // namespace

Probabilities probability_closed_form_at(const ReadoutConfig& cfg, const SystemParams& params,
                                         const CatSpec& cat, double u) {
    if (cat.u != 1.0) throw DomainError("closed-form readout expects the pure prepared cat");
    if (cat.sign != cfg.prepared_sign) throw DomainError("cat sign does not match the readout config");
    const double coherence = coherence_trace_closed_form(omega_minus_tau4(cfg, params), cfg.phi_prime, u, cat);
    Probabilities p = from_coherence(1.0, coherence, cfg.prepared_sign);
    check_encoding(cfg, p.warnings);
    return p;
}

Probabilities probability_closed_form(const ReadoutConfig& cfg, const SystemParams& params,
                                      const CatSpec& cat) {
    return probability_closed_form_at(cfg, params, cat, damping_factor(cfg.tau, params));
}

Probabilities probability_classical_mixture(const ReadoutConfig& cfg, const SystemParams& params,
                                            const CatSpec& cat, double u) {
    const double at = cat.alpha_abs2 * u * u;
    const double sp = std::sin(cfg.phi_prime);
    const double n2 = cat.norm_sq();
    const double coherence = 2.0 / n2 * std::exp(-2.0 * at * sp * sp) *
                             std::cos(omega_minus_tau4(cfg, params) - at * std::sin(2.0 * cfg.phi_prime));
    Probabilities p = from_coherence(2.0 / n2, coherence, cfg.prepared_sign);
    check_encoding(cfg, p.warnings);
    return p;
}

ReadoutOperators assemble_operators(const ReadoutConfig& cfg, const SystemParams& params,
                                    const FockOperator& rho) {
    const auto d = derive(params);
    const int nmax = static_cast<int>(rho.rows()) - 1;
    const Eigen::VectorXcd u1 = number_phases(params.omega - d.chi, cfg.tau4, nmax);
    const Eigen::VectorXcd u2 = number_phases(params.omega + d.chi, cfg.tau4, nmax);
    const FockOperator r1 = u1.asDiagonal() * rho * u1.conjugate().asDiagonal();
    const FockOperator r2 = u2.asDiagonal() * rho * u2.conjugate().asDiagonal();
    const FockOperator cross = std::polar(1.0, -omega_minus_tau4(cfg, params)) *
                               (u1.asDiagonal() * rho * u2.conjugate().asDiagonal());
    return {r1 + r2, cross + cross.adjoint()};
}

Probabilities probability_numeric(const ReadoutConfig& cfg, const SystemParams& params,
                                  const FockOperator& rho) {
    const auto d = derive(params);
    const int nmax = static_cast<int>(rho.rows()) - 1;
    const Eigen::Index dim = nmax + 1;

    // Qubit after the post-herald pi/2 pulse: R|g> for the "-" cat, R|e> for "+".
    const Eigen::Matrix2cd r = pulse_rotation(params.ej, pulse_duration(params));
    const Eigen::Vector2cd q0 = cfg.prepared_sign == CatSign::Minus ? Eigen::Vector2cd(r.col(0))
                                                                     : Eigen::Vector2cd(r.col(1));
    Eigen::MatrixXcd joint = qubit_kron(q0 * q0.adjoint(), rho);

    // Dispersive step with the exp(-i Omega t/2) global phase removed.
    Eigen::VectorXcd diag(2 * dim);
    diag.head(dim) = number_phases(params.omega - d.chi, cfg.tau4, nmax);
    diag.tail(dim) = number_phases(params.omega + d.chi, cfg.tau4, nmax) *
                     std::polar(1.0, omega_minus_tau4(cfg, params));
    joint = diag.asDiagonal() * joint * diag.conjugate().asDiagonal();

    const Eigen::MatrixXcd rot = qubit_kron(r, identity(nmax));
    joint = rot * joint * rot.adjoint();

    Probabilities p;
    p.p_g = joint.topLeftCorner(dim, dim).trace().real();
    p.p_e = joint.bottomRightCorner(dim, dim).trace().real();
    check_encoding(cfg, p.warnings);
    return p;
}

ReadoutCurve curve(const ReadoutConfig& cfg, const SystemParams& params, const CatSpec& cat,
                   std::span<const double> taus, std::optional<ShotNoise> noise) {
    ReadoutCurve out;
    out.config = cfg;
    out.params_digest = params_digest(params);
    double previous = -INFINITY;
    std::mt19937_64 rng(noise ? noise->seed : 0);
    for (double tau : taus) {
        if (tau < 0.0 || tau < previous) throw DomainError("tau samples must be non-negative and ascending");
        previous = tau;
        ReadoutConfig c = cfg;
        c.tau = tau;
        const Probabilities p = probability_closed_form(c, params, cat);
        ReadoutSample s{tau, p.p_g, p.p_e};
        if (noise && noise->shots > 0) {
            std::binomial_distribution<std::int64_t> draw(noise->shots, std::clamp(p.p_g, 0.0, 1.0));
            s.p_g = static_cast<double>(draw(rng)) / static_cast<double>(noise->shots);
            s.p_e = 1.0 - s.p_g;
        }
        out.samples.push_back(s);
    }
    return out;
}

std::string params_digest(const SystemParams& params) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](double v) {
        std::uint64_t bits = 0;
        std::memcpy(&bits, &v, sizeof bits);
        for (int i = 0; i < 8; ++i) {
            h ^= (bits >> (8 * i)) & 0xffU;
            h *= 1099511628211ULL;
        }
    };
    mix(params.ej);
    mix(params.ech);
    mix(params.ng);
    mix(params.omega);
    mix(params.eta_ratio.real());
    mix(params.eta_ratio.imag());
    mix(params.quality.value_or(0.0));
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_csv(const ReadoutCurve& c, std::ostream& out) {
    out << "tau_s,p_g,p_e\n";
    char buf[96];
    for (const auto& s : c.samples) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", s.tau, s.p_g, s.p_e);
        out << buf;
    }
}

std::vector<ReadoutSample> read_readout_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw DomainError("readout CSV is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "tau_s,p_g,p_e") throw DomainError("readout CSV header must be tau_s,p_g,p_e, got '" + line + "'");
    std::vector<ReadoutSample> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        std::istringstream ss(line);
        ReadoutSample s;
        char c1 = 0, c2 = 0;
        if (!(ss >> s.tau >> c1 >> s.p_g >> c2 >> s.p_e) || c1 != ',' || c2 != ',')
            throw DomainError("malformed readout CSV row at line " + std::to_string(lineno));
        rows.push_back(s);
    }
    return rows;
}

}  // namespace cavq
