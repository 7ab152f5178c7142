#include "commands.hpp"

#include "cavq/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

void add_common(CLI::App* sub, cavq::cli::CommonArgs& c) {
    sub->add_option("-c,--config", c.config_path, "Configuration file (key = value)")->required();
    sub->add_option("--set", c.overrides, "Override a config key (key=value); repeatable");
}

}  // namespace

int main(int argc, char** argv) {
    using namespace cavq::cli;
    CLI::App app{"cavq: cavity cat-state preparation, Wigner export and quality-factor readout"};
    app.set_version_flag("--version", CAVQ_VERSION);
    app.require_subcommand(1);

    std::vector<std::string> args(argv + 1, argv + argc);

    PrepareArgs prep;
    auto* p = app.add_subcommand("prepare", "Run the three-step cat preparation and print a summary");
    add_common(p, prep.common);
    p->add_option("--outcome", prep.outcome, "Charge measurement outcome (g or e)")->check(CLI::IsMember({"g", "e"}));
    p->add_option("--fock-out", prep.fock_out, "Write the conditional Fock amplitudes as CSV");

    WignerArgs wig;
    auto* w = app.add_subcommand("wigner", "Export a Wigner grid of the (damped) cat");
    add_common(w, wig.common);
    w->add_option("--tau3", wig.tau3, "Dissipation time in seconds (overrides tau3_s)");
    w->add_option("--mode", wig.mode, "Normalization: unit or paper")->check(CLI::IsMember({"unit", "paper"}));
    w->add_flag("--numeric", wig.numeric, "Use the definition-level quadrature instead of the closed form");
    w->add_option("-o,--out", wig.out, "Output CSV")->required();

    ReadoutArgs rd;
    auto* r = app.add_subcommand("readout", "Export P_g(tau) and P_e(tau)");
    add_common(r, rd.common);
    r->add_option("--taus", rd.taus, "start:stop:count or a comma-separated list (seconds)");
    r->add_option("--shots", rd.shots, "Shots per point (0 disables shot noise)")->check(CLI::NonNegativeNumber);
    r->add_option("--seed", rd.seed, "Seed for shot noise");
    r->add_option("-o,--out", rd.out, "Output CSV")->required();

    EstimateArgs est;
    auto* e = app.add_subcommand("estimate", "Fit Q to a readout CSV");
    add_common(e, est.common);
    e->add_option("--data", est.data, "Readout CSV (tau_s,p_g,p_e)")->required();
    std::vector<double> bracket;
    e->add_option("--bracket", bracket, "Search bracket q_lo q_hi")->expected(2)->delimiter(',');
    e->add_flag("--fit-phase", est.fit_phase, "Also fit the Omega_- tau4 phase offset");
    e->add_option("-o,--out", est.out, "Write the fit report to a file");

    ValidateArgs val;
    auto* v = app.add_subcommand("validate", "Run the invariant suite");
    v->add_option("--perturb", val.perturb, "Relative perturbation of the analytic phase (mutation hook)");
    v->add_option("--summary", val.summary, "Write a JSON summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? 0 : 2;
    }

    prep.common.argv = wig.common.argv = rd.common.argv = est.common.argv = val.argv = args;
    if (bracket.size() == 2) {
        est.q_lo = bracket[0];
        est.q_hi = bracket[1];
    }

    try {
        if (*p) return cmd_prepare(prep);
        if (*w) return cmd_wigner(wig);
        if (*r) return cmd_readout(rd);
        if (*e) return cmd_estimate(est);
        if (*v) return cmd_validate(val);
    } catch (const cavq::ConfigError& err) {
        std::cerr << "config error: " << err.what() << '\n';
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
    return 2;
}
