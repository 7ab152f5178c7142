#include "cavq/config.hpp"
#include "cavq/dissipation.hpp"
#include "cavq/errors.hpp"
#include "cavq/oracle.hpp"
#include "cavq/params.hpp"
#include "cavq/protocol.hpp"
#include "cavq/qestimate.hpp"
#include "cavq/readout.hpp"
#include "cavq/validate.hpp"
#include "cavq/wigner.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace cavq;

namespace {

py::dict wigner_to_dict(const WignerGrid& w) {
    py::dict d;
    d["x"] = w.x_axis;
    d["p"] = w.p_axis;
    d["w"] = Eigen::MatrixXd(w.values);
    d["normalization"] = to_string(w.normalization);
    return d;
}

WignerNormalization parse_mode(const std::string& m) {
    if (m == "unit") return WignerNormalization::UnitIntegral;
    if (m == "paper") return WignerNormalization::LobeHeight;
    throw DomainError("mode must be 'unit' or 'paper'");
}

CatSign parse_sign(const std::string& s) {
    if (s == "+") return CatSign::Plus;
    if (s == "-") return CatSign::Minus;
    throw DomainError("sign must be '+' or '-'");
}

}  // namespace

PYBIND11_MODULE(_cavq, m) {
    m.doc() = "Cavity cat-state preparation, Wigner functions and quality-factor readout";
    m.attr("__version__") = CAVQ_VERSION;

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<TruncationError>(m, "TruncationError", base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<NonIdentifiableError>(m, "NonIdentifiableError", base.ptr());
    py::register_exception<BracketError>(m, "BracketError", base.ptr());

    py::class_<SystemParams>(m, "SystemParams")
        .def_static("from_ghz", &SystemParams::from_ghz, py::arg("ej_ghz"), py::arg("ech4_ghz"), py::arg("ng"),
                    py::arg("omega_ghz"), py::arg("eta_ratio"), py::arg("q_factor") = py::none())
        .def_static("from_ghz_with_coupling", &SystemParams::from_ghz_with_coupling, py::arg("ej_ghz"),
                    py::arg("ech4_ghz"), py::arg("ng"), py::arg("omega_ghz"), py::arg("g_rad_s"),
                    py::arg("q_factor") = py::none())
        .def_readonly("ej", &SystemParams::ej)
        .def_readonly("ech", &SystemParams::ech)
        .def_readonly("ng", &SystemParams::ng)
        .def_readonly("omega", &SystemParams::omega)
        .def_readonly("quality", &SystemParams::quality)
        .def_property_readonly("coupling", &SystemParams::coupling_abs)
        .def("with_quality", &SystemParams::with_quality);

    m.def("derive", [](const SystemParams& p) {
        const auto d = derive(p);
        py::dict out;
        out["qubit_freq"] = d.qubit_freq;
        out["detuning"] = d.detuning;
        out["chi"] = d.chi;
        out["gamma"] = d.gamma;
        return out;
    });
    m.def("pulse_duration", &pulse_duration);
    m.def("damping_factor", py::overload_cast<double, const SystemParams&>(&damping_factor), py::arg("tau"),
          py::arg("params"));
    m.def("tau2_for_phi", &tau2_for_phi);

    py::class_<CatSpec>(m, "CatSpec")
        .def(py::init([](cplx beta, double phi, double theta, const std::string& sign) {
                 CatSpec c;
                 c.beta = beta;
                 c.phi = phi;
                 c.theta = theta;
                 c.sign = parse_sign(sign);
                 c.alpha_abs2 = std::norm(beta);
                 return c;
             }),
             py::arg("beta"), py::arg("phi"), py::arg("theta"), py::arg("sign") = "+")
        .def_readonly("beta", &CatSpec::beta)
        .def_readonly("phi", &CatSpec::phi)
        .def_readonly("theta", &CatSpec::theta)
        .def_readonly("alpha_abs2", &CatSpec::alpha_abs2)
        .def_property_readonly("sign", [](const CatSpec& c) { return std::string(to_string(c.sign)); })
        .def("norm_sq", &CatSpec::norm_sq);

    m.def(
        "prepare",
        [](double alpha, const SystemParams& p, double tau2, const std::string& outcome,
           std::optional<int> nmax, std::optional<double> theta_override) {
            if (outcome != "g" && outcome != "e") throw DomainError("outcome must be 'g' or 'e'");
            ProtocolOptions o;
            o.theta_override = theta_override;
            const Preparation prep = prepare_cat(alpha, p, tau2, outcome == "g" ? Outcome::Ground : Outcome::Excited,
                                                 nmax.value_or(auto_nmax(std::abs(alpha))), o);
            py::dict d;
            d["cat"] = prep.projected.cat;
            d["field"] = Eigen::VectorXcd(prep.projected.field);
            d["probability_ground"] = prep.probability_ground;
            d["probability_excited"] = prep.probability_excited;
            d["warnings"] = prep.dispersed.warnings;
            return d;
        },
        py::arg("alpha"), py::arg("params"), py::arg("tau2"), py::arg("outcome") = "e", py::arg("nmax") = py::none(),
        py::arg("theta_override") = py::none());

    m.def(
        "cat_wigner",
        [](const CatSpec& c, double u, std::array<double, 4> box, int nx, int np, const std::string& mode) {
            GridSpec g{box[0], box[1], box[2], box[3], nx, np};
            return wigner_to_dict(cat_wigner(damped_cat_at(c, u), g, parse_mode(mode)));
        },
        py::arg("cat"), py::arg("u") = 1.0, py::arg("box") = std::array<double, 4>{-8, 8, -8, 8},
        py::arg("nx") = 257, py::arg("np") = 257, py::arg("mode") = "unit");

    m.def(
        "numeric_wigner",
        [](const CatSpec& c, double u, int nmax, std::array<double, 4> box, int nx, int np) {
            GridSpec g{box[0], box[1], box[2], box[3], nx, np};
            return wigner_to_dict(numeric_wigner(realize_density(damped_cat_at(c, u), nmax), g));
        },
        py::arg("cat"), py::arg("u"), py::arg("nmax"), py::arg("box") = std::array<double, 4>{-8, 8, -8, 8},
        py::arg("nx") = 65, py::arg("np") = 65);

    m.def(
        "readout_probability",
        [](const SystemParams& p, const CatSpec& c, double tau, std::optional<double> tau4,
           std::optional<double> omega_minus_tau4_mod) {
            const ReadoutConfig rc = make_readout_config(p, c.sign, tau, tau4, omega_minus_tau4_mod);
            const Probabilities pr = probability_closed_form(rc, p, c);
            return py::make_tuple(pr.p_g, pr.p_e);
        },
        py::arg("params"), py::arg("cat"), py::arg("tau"), py::arg("tau4") = py::none(),
        py::arg("omega_minus_tau4_mod") = py::none());

    m.def(
        "readout_curve",
        [](const SystemParams& p, const CatSpec& c, std::vector<double> taus, std::optional<double> tau4,
           std::optional<double> omega_minus_tau4_mod, std::int64_t shots, std::uint64_t seed) {
            const ReadoutConfig rc = make_readout_config(p, c.sign, 0.0, tau4, omega_minus_tau4_mod);
            std::optional<ShotNoise> noise;
            if (shots > 0) noise = ShotNoise{shots, seed};
            const ReadoutCurve cv = curve(rc, p, c, taus, noise);
            std::vector<double> pg, pe;
            for (const auto& s : cv.samples) {
                pg.push_back(s.p_g);
                pe.push_back(s.p_e);
            }
            return py::make_tuple(taus, pg, pe);
        },
        py::arg("params"), py::arg("cat"), py::arg("taus"), py::arg("tau4") = py::none(),
        py::arg("omega_minus_tau4_mod") = py::none(), py::arg("shots") = 0, py::arg("seed") = 0);

    m.def(
        "fit_q",
        [](const SystemParams& p, const CatSpec& c, std::vector<double> taus, std::vector<double> p_g, double q_lo,
           double q_hi, std::optional<double> tau4, std::optional<double> omega_minus_tau4_mod) {
            if (taus.size() != p_g.size()) throw DomainError("taus and p_g differ in length");
            std::vector<ReadoutSample> samples;
            for (std::size_t i = 0; i < taus.size(); ++i) samples.push_back({taus[i], p_g[i], 1.0 - p_g[i]});
            const ReadoutConfig rc = make_readout_config(p, c.sign, 0.0, tau4, omega_minus_tau4_mod);
            const FitResult r = fit_q(samples, rc, p, c, q_lo, q_hi);
            py::dict d;
            d["q_hat"] = r.q_hat;
            d["residual"] = r.residual;
            d["iterations"] = r.iterations;
            d["ci_68"] = r.ci_68;
            return d;
        },
        py::arg("params"), py::arg("cat"), py::arg("taus"), py::arg("p_g"), py::arg("q_lo") = 1e4,
        py::arg("q_hi") = 1e8, py::arg("tau4") = py::none(), py::arg("omega_minus_tau4_mod") = py::none());

    m.def(
        "dispersive_vs_full",
        [](double g, double detuning, double alpha, double t) {
            const int nmax = auto_nmax(std::abs(alpha));
            QubitFieldState s;
            const FockState a = coherent_state(alpha, nmax);
            s.ground = a / std::sqrt(2.0);
            s.excited = cplx(0.0, 1.0) * a / std::sqrt(2.0);
            const auto r = dispersive_vs_full(g, detuning, s, t);
            py::dict d;
            d["fidelity"] = r.fidelity;
            d["generator_error"] = r.generator_error;
            return d;
        },
        py::arg("g"), py::arg("detuning"), py::arg("alpha"), py::arg("t"));

    m.def(
        "validate",
        [](double perturb) {
            ValidationOptions o;
            o.perturb = perturb;
            const ValidationReport rep = run_validation(o);
            py::list checks;
            for (const auto& c : rep.checks) {
                py::dict d;
                d["name"] = c.name;
                d["value"] = c.value;
                d["tolerance"] = c.tolerance;
                d["passed"] = c.passed;
                checks.append(d);
            }
            return py::make_tuple(rep.all_passed(), checks);
        },
        py::arg("perturb") = 0.0);
}
