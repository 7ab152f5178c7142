#include "cavq/hamiltonians.hpp"

#include "cavq/errors.hpp"
#include "cavq/phase.hpp"

#include <cmath>

namespace cavq {

Eigen::Matrix2cd sigma_x() {
    Eigen::Matrix2cd m;
    m << 0, 1, 1, 0;
    return m;
}

Eigen::Matrix2cd sigma_z() {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, -1;
    return m;
}

Eigen::Matrix2cd sigma_plus() {
    Eigen::Matrix2cd m;
    m << 0, 1, 0, 0;
    return m;
}

Eigen::Matrix2cd projector_ground() {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, 0;
    return m;
}

Eigen::Matrix2cd projector_excited() {
    Eigen::Matrix2cd m;
    m << 0, 0, 0, 1;
    return m;
}

Eigen::MatrixXcd qubit_kron(const Eigen::Matrix2cd& q, const Eigen::MatrixXcd& f) {
    const Eigen::Index d = f.rows();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2 * d, 2 * d);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (q(i, j) != 0.0) out.block(i * d, j * d, d, d) = q(i, j) * f;
    return out;
}

Eigen::MatrixXcd build(const HamiltonianSpec& spec, int nmax) {
    const SystemParams& p = spec.params;
    const FockOperator a = annihilation(nmax);
    const FockOperator ad = a.adjoint();
    const FockOperator num = number_operator(nmax);
    const FockOperator id = identity(nmax);
    const double ez = charging_energy(p);
    const double flux_phase = spec.flux_on ? kPi / 2.0 : 0.0;

    Eigen::MatrixXcd h = qubit_kron(Eigen::Matrix2cd::Identity(), p.omega * num);

    switch (spec.kind) {
    case HamiltonianKind::Free:
        h += qubit_kron(ez * sigma_z(), id);
        h -= qubit_kron(p.ej * sigma_x(), id);
        break;

    case HamiltonianKind::Linearized: {
        h += qubit_kron(ez * sigma_z(), id);
        h -= qubit_kron(p.ej * std::cos(flux_phase) * sigma_x(), id);
        const double s = p.ej * std::sin(flux_phase);
        if (spec.rotating_wave) {
            const FockOperator up = p.eta_ratio * a;  // pairs with sigma_+
            h += qubit_kron(s * sigma_plus(), up);
            h += qubit_kron(s * sigma_plus().adjoint(), up.adjoint());
        } else {
            const FockOperator x = p.eta_ratio * a + std::conj(p.eta_ratio) * ad;
            h += qubit_kron(s * sigma_x(), x);
        }
        break;
    }

    case HamiltonianKind::FullCosine: {
        h += qubit_kron(ez * sigma_z(), id);
        const FockOperator x = p.eta_ratio * a + std::conj(p.eta_ratio) * ad;
        const FockOperator cos_arg =
            hermitian_function(x, [flux_phase](double v) { return std::cos(flux_phase + v); });
        h -= qubit_kron(p.ej * sigma_x(), cos_arg);
        break;
    }

    case HamiltonianKind::Dispersive: {
        const auto d = derive(p);
        if (!(d.detuning > 0.0)) throw DomainError("dispersive Hamiltonian requires Delta > 0");
        const double chi = d.chi;
        h = qubit_kron(Eigen::Matrix2cd::Identity(), (p.omega - chi) * num);
        h += qubit_kron(0.5 * d.qubit_freq * sigma_z(), id);
        h += qubit_kron(projector_excited(), chi * (id + 2.0 * num));
        break;
    }
    }
    return h;
}

QubitFieldState BranchPropagator::apply(const QubitFieldState& s, bool include_qubit_phases) const {
    QubitFieldState out{ground.cwiseProduct(s.ground), excited.cwiseProduct(s.excited)};
    if (include_qubit_phases) {
        out.ground *= std::polar(1.0, -ground_phase);
        out.excited *= std::polar(1.0, -excited_phase);
    }
    return out;
}

BranchPropagator dispersive_propagator(const SystemParams& params, double t, int nmax) {
    const auto d = derive(params);
    if (!(d.detuning > 0.0)) throw DomainError("dispersive propagator requires Delta > 0");
    const double omega_minus = params.omega - d.chi;
    const double omega_plus = params.omega + d.chi;

    BranchPropagator u;
    u.ground = number_phases(omega_minus, t, nmax);
    u.excited = number_phases(omega_plus, t, nmax) * std::polar(1.0, -reduce_phase(d.chi, t));
    u.ground_phase = reduce_phase(0.5 * d.qubit_freq, t);
    u.excited_phase = wrap_two_pi(-u.ground_phase);
    return u;
}

Eigen::Matrix2cd pulse_rotation(double ej, double t) {
    const double angle = reduce_phase(ej, t);
    Eigen::Matrix2cd r;
    const cplx c = std::cos(angle);
    const cplx is = cplx(0.0, std::sin(angle));
    r << c, is, is, c;
    return r;
}

QubitFieldState apply_free_pulse(const QubitFieldState& s, const SystemParams& params, double t,
                                 bool keep_free_phase) {
    const Eigen::Matrix2cd r = pulse_rotation(params.ej, t);
    QubitFieldState out{r(0, 0) * s.ground + r(0, 1) * s.excited,
                        r(1, 0) * s.ground + r(1, 1) * s.excited};
    if (keep_free_phase) {
        const Eigen::VectorXcd ph = number_phases(params.omega, t, s.nmax());
        out.ground = out.ground.cwiseProduct(ph);
        out.excited = out.excited.cwiseProduct(ph);
    }
    return out;
}

QubitFieldState strip_global_phase(const QubitFieldState& s, const QubitFieldState& reference) {
    const cplx overlap = reference.stacked().dot(s.stacked());
    if (std::abs(overlap) == 0.0) return s;
    const cplx fix = std::conj(overlap) / std::abs(overlap);
    return {s.ground * fix, s.excited * fix};
}

}  // namespace cavq
