#include "commands.hpp"

#include "cavq/config.hpp"
#include "cavq/dissipation.hpp"
#include "cavq/errors.hpp"
#include "cavq/phase.hpp"
#include "cavq/protocol.hpp"
#include "cavq/qestimate.hpp"
#include "cavq/readout.hpp"
#include "cavq/validate.hpp"
#include "cavq/wigner.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace cavq::cli {

namespace {

using nlohmann::ordered_json;

std::string fnv1a64_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot read '" + path + "'");
    std::uint64_t h = 1469598103934665603ULL;
    char c;
    while (f.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

RunConfig load_config(const CommonArgs& c) {
    RunConfig cfg = RunConfig::load(c.config_path);
    for (const auto& kv : c.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    return cfg;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_manifest(const std::string& out, const std::string& sub, const RunConfig* cfg,
                    const std::vector<std::string>& inputs, const std::vector<std::string>& outputs,
                    const std::vector<std::string>& argv, const ordered_json& extra = ordered_json::object()) {
    ordered_json m;
    m["subcommand"] = sub;
    m["version"] = CAVQ_VERSION;
    m["argv"] = argv;
    if (cfg) {
        ordered_json rc = ordered_json::object();
        for (const auto& [k, v] : cfg->resolved()) rc[k] = v;
        m["resolved_config"] = rc;
    }
    ordered_json in = ordered_json::array();
    for (const auto& p : inputs) in.push_back({{"path", p}, {"fnv1a64", fnv1a64_file(p)}});
    m["inputs"] = in;
    m["outputs"] = outputs;
    for (auto it = extra.begin(); it != extra.end(); ++it) m[it.key()] = it.value();
    std::ofstream f(out + ".manifest.json");
    if (!f) throw Error("cannot write manifest for '" + out + "'");
    f << m.dump(2) << '\n';
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw Error("cannot open '" + path + "' for writing");
    return f;
}

Preparation run_protocol(const RunConfig& cfg, const SystemParams& params) {
    const double alpha = cfg.alpha();
    return prepare_cat(cplx(alpha, 0.0), params, cfg.tau2(params), cfg.outcome(), cfg.nmax(),
                       cfg.protocol_options());
}

void print_warnings(const std::vector<std::string>& w) {
    for (const auto& s : w) std::cerr << "warning: " << s << '\n';
}

}  // namespace

std::vector<double> parse_taus(const std::string& spec) {
    std::vector<double> out;
    try {
        if (spec.find(':') != std::string::npos) {
            std::istringstream ss(spec);
            std::string a, b, n;
            std::getline(ss, a, ':');
            std::getline(ss, b, ':');
            std::getline(ss, n);
            const double lo = std::stod(a), hi = std::stod(b);
            const int count = std::stoi(n);
            if (count < 1 || hi < lo) throw ConfigError("--taus range must be start:stop:count with stop >= start");
            for (int i = 0; i < count; ++i) out.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
        } else {
            std::istringstream ss(spec);
            std::string item;
            while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
        }
    } catch (const std::logic_error&) {
        throw ConfigError("cannot parse --taus '" + spec + "'");
    }
    if (out.empty()) throw ConfigError("--taus is empty");
    return out;
}

int cmd_prepare(const PrepareArgs& a) {
    RunConfig cfg = load_config(a.common);
    if (a.outcome) cfg.set("outcome", *a.outcome);
    const SystemParams params = cfg.params();
    const DerivedQuantities d = derive(params);
    const DispersiveReport disp = check_dispersive(params);
    const Preparation prep = run_protocol(cfg, params);
    const CatSpec& cat = prep.projected.cat;

    std::printf("qubit_freq_rad_s = %.10g\n", d.qubit_freq);
    std::printf("detuning_rad_s = %.10g\n", d.detuning);
    std::printf("coupling_rad_s = %.10g\n", params.coupling_abs());
    std::printf("detuning_over_g = %.6g\n", disp.detuning_over_g);
    std::printf("dispersive_advisory = %s\n", disp.acceptable ? "ok" : "weak (|g|/Delta >= 0.5)");
    std::printf("chi_rad_s = %.10g\n", d.chi);
    std::printf("tau1_s = %.6g\n", prep.superposed.tau1);
    std::printf("tau1_quoted_s = 4.8e-12\n");
    std::printf("tau2_s = %.10g\n", prep.dispersed.tau2);
    std::printf("beta = %.10g%+.10gi\n", cat.beta.real(), cat.beta.imag());
    std::printf("phi = %.10g\n", cat.phi);
    std::printf("theta = %.10g\n", cat.theta);
    std::printf("outcome = %s\n", to_string(cfg.outcome()));
    std::printf("cat_sign = %s\n", to_string(cat.sign));
    std::printf("norm_sq_plus = %.10g\n", cat_norm_sq(cat.alpha_abs2, cat.phi, cat.theta, CatSign::Plus));
    std::printf("norm_sq_minus = %.10g\n", cat_norm_sq(cat.alpha_abs2, cat.phi, cat.theta, CatSign::Minus));
    std::printf("probability_ground = %.10g\n", prep.probability_ground);
    std::printf("probability_excited = %.10g\n", prep.probability_excited);
    std::printf("mean_photon_number = %.10g\n", mean_photon_number(prep.projected.field));
    print_warnings(prep.dispersed.warnings);

    if (a.fock_out) {
        std::ofstream f = open_out(*a.fock_out);
        f << "n,re,im\n";
        char buf[96];
        const FockState& v = prep.projected.field;
        for (Eigen::Index n = 0; n < v.size(); ++n) {
            std::snprintf(buf, sizeof buf, "%ld,%.17g,%.17g\n", static_cast<long>(n), v[n].real(), v[n].imag());
            f << buf;
        }
        f.close();
        write_manifest(*a.fock_out, "prepare", &cfg, {a.common.config_path}, {*a.fock_out}, a.common.argv);
    }
    return 0;
}

int cmd_wigner(const WignerArgs& a) {
    RunConfig cfg = load_config(a.common);
    if (a.tau3) cfg.set("tau3_s", fmt(*a.tau3));
    WignerNormalization mode;
    if (a.mode == "unit") mode = WignerNormalization::UnitIntegral;
    else if (a.mode == "paper") mode = WignerNormalization::LobeHeight;
    else throw ConfigError("--mode must be 'unit' or 'paper'");

    const SystemParams params = cfg.params();
    const Preparation prep = run_protocol(cfg, params);
    print_warnings(prep.dispersed.warnings);
    const double tau3 = cfg.number("tau3_s").value_or(0.0);
    if (tau3 > 0.0 && !params.quality) throw ConfigError("tau3_s > 0 needs 'q_factor'");
    CatSpec cat = prep.projected.cat;
    // A rigid phase-space rotation: both components turn together and theta is unchanged.
    if (cfg.wigner_aligned()) cat.beta = std::abs(cat.beta);
    const DampedCat dc = tau3 > 0.0 ? damped_cat(cat, tau3, params) : damped_cat_at(cat, 1.0);
    const GridSpec grid = cfg.grid();
    const double scale = mode == WignerNormalization::LobeHeight ? kPi * dc.spec.norm_sq() : 1.0;

    WignerGrid w;
    if (a.numeric) {
        const FockOperator rho = realize_density(dc, cfg.nmax());
        w = numeric_wigner(rho, grid, {}, scale, mode);
    } else {
        w = cat_wigner(dc, grid, mode);
    }
    std::ofstream f = open_out(a.out);
    write_csv(w, f);
    f.close();
    ordered_json extra;
    extra["mode"] = a.mode;
    extra["numeric"] = a.numeric;
    extra["damping_factor"] = dc.spec.u;
    write_manifest(a.out, "wigner", &cfg, {a.common.config_path}, {a.out}, a.common.argv, extra);
    std::printf("wrote %s (%zu x %zu, u = %.6f)\n", a.out.c_str(), w.x_axis.size(), w.p_axis.size(), dc.spec.u);
    return 0;
}

namespace {

struct ReadoutSetup {
    SystemParams params;
    CatSpec cat;
    ReadoutConfig rc;
};

ReadoutSetup readout_setup(const RunConfig& cfg) {
    ReadoutSetup s;
    s.params = cfg.params();
    const Preparation prep = run_protocol(cfg, s.params);
    print_warnings(prep.dispersed.warnings);
    s.cat = prep.projected.cat;
    s.rc = make_readout_config(s.params, s.cat.sign, 0.0, cfg.number("tau4_s"), cfg.number("omega_minus_tau4_mod"));
    return s;
}

}  // namespace

int cmd_readout(const ReadoutArgs& a) {
    RunConfig cfg = load_config(a.common);
    const ReadoutSetup s = readout_setup(cfg);
    if (!s.params.quality) throw ConfigError("readout needs 'q_factor'");
    const std::vector<double> taus = parse_taus(a.taus);
    std::optional<ShotNoise> noise;
    if (a.shots > 0) noise = ShotNoise{a.shots, a.seed};
    const ReadoutCurve c = curve(s.rc, s.params, s.cat, taus, noise);
    {
        const Probabilities probe = probability_closed_form(s.rc, s.params, s.cat);
        print_warnings(probe.warnings);
    }
    std::ofstream f = open_out(a.out);
    write_csv(c, f);
    f.close();
    ordered_json extra;
    extra["taus"] = a.taus;
    extra["shots"] = a.shots;
    extra["seed"] = a.seed;
    extra["params_digest"] = c.params_digest;
    extra["tau4_s"] = s.rc.tau4;
    extra["phi_prime"] = s.rc.phi_prime;
    extra["omega_minus_tau4_mod"] = omega_minus_tau4(s.rc, s.params);
    write_manifest(a.out, "readout", &cfg, {a.common.config_path}, {a.out}, a.common.argv, extra);
    std::printf("wrote %s (%zu samples)\n", a.out.c_str(), c.samples.size());
    return 0;
}

int cmd_estimate(const EstimateArgs& a) {
    RunConfig cfg = load_config(a.common);
    if (cfg.has("q_factor")) {
        std::cerr << "warning: 'q_factor' in the config is ignored by estimate\n";
        cfg.erase("q_factor");
    }
    const ReadoutSetup s = readout_setup(cfg);
    std::ifstream in(a.data);
    if (!in) throw ConfigError("cannot open data file '" + a.data + "'");
    const std::vector<ReadoutSample> samples = read_readout_csv(in);

    FitOptions opts;
    opts.fit_phase_offset = a.fit_phase;
    FitResult r;
    try {
        r = fit_q(samples, s.rc, s.params, s.cat, a.q_lo, a.q_hi, opts);
    } catch (const NonIdentifiableError& e) {
        std::cerr << "fit failed (non-identifiable): " << e.what() << '\n';
        return 1;
    } catch (const BracketError& e) {
        std::cerr << "fit failed (bracket): " << e.what() << '\n';
        return 1;
    }
    if (a.out) {
        std::ofstream f = open_out(*a.out);
        write_fit_report(r, f);
        f.close();
        ordered_json extra;
        extra["bracket"] = {a.q_lo, a.q_hi};
        extra["fit_phase"] = a.fit_phase;
        write_manifest(*a.out, "estimate", &cfg, {a.common.config_path, a.data}, {*a.out}, a.common.argv, extra);
    }
    write_fit_report(r, std::cout);
    return 0;
}

int cmd_validate(const ValidateArgs& a) {
    ValidationOptions opts;
    opts.perturb = a.perturb;
    const ValidationReport rep = run_validation(opts);
    ordered_json checks = ordered_json::array();
    for (const auto& c : rep.checks) {
        std::printf("%-4s %-34s %.3e (tol %.1e)%s%s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.value,
                    c.tolerance, c.detail.empty() ? "" : "  ", c.detail.c_str());
        ordered_json j;
        j["name"] = c.name;
        j["passed"] = c.passed;
        j["value"] = std::isfinite(c.value) ? ordered_json(c.value) : ordered_json(nullptr);
        j["tolerance"] = c.tolerance;
        j["detail"] = c.detail;
        checks.push_back(j);
    }
    const bool ok = rep.all_passed();
    std::printf("%s: %zu checks\n", ok ? "ALL PASSED" : "FAILED", rep.checks.size());
    if (a.summary) {
        std::ofstream f = open_out(*a.summary);
        ordered_json s;
        s["passed"] = ok;
        s["perturb"] = a.perturb;
        s["checks"] = checks;
        f << s.dump(2) << '\n';
        f.close();
        write_manifest(*a.summary, "validate", nullptr, {}, {*a.summary}, a.argv);
    }
    return ok ? 0 : 1;
}

}  // namespace cavq::cli
