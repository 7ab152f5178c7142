#include "cavq/fock.hpp"

#include "cavq/errors.hpp"
#include "cavq/phase.hpp"

#include <cmath>
#include <string>

namespace cavq {

Eigen::VectorXcd QubitFieldState::stacked() const {
    Eigen::VectorXcd v(ground.size() + excited.size());
    v << ground, excited;
    return v;
}

QubitFieldState QubitFieldState::from_stacked(const Eigen::VectorXcd& v) {
    const Eigen::Index half = v.size() / 2;
    return {v.head(half), v.tail(half)};
}

int auto_nmax(double alpha_abs) {
    const double n = alpha_abs * alpha_abs;
    return static_cast<int>(std::ceil(n + 8.0 * std::sqrt(n + 1.0) + 10.0));
}

FockOperator annihilation(int nmax) {
    FockOperator a = FockOperator::Zero(nmax + 1, nmax + 1);
    for (int n = 1; n <= nmax; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

FockOperator creation(int nmax) { return annihilation(nmax).adjoint(); }

FockOperator number_operator(int nmax) {
    FockOperator m = FockOperator::Zero(nmax + 1, nmax + 1);
    for (int n = 0; n <= nmax; ++n) m(n, n) = static_cast<double>(n);
    return m;
}

FockOperator identity(int nmax) { return FockOperator::Identity(nmax + 1, nmax + 1); }

FockState vacuum(int nmax) { return number_state(0, nmax); }

FockState number_state(int n, int nmax) {
    if (n < 0 || n > nmax) throw DomainError("number state outside truncation");
    FockState s = FockState::Zero(nmax + 1);
    s[n] = 1.0;
    return s;
}

double coherent_tail_mass(double alpha_abs2, int nmax) {
    if (alpha_abs2 == 0.0) return 0.0;
    // Poisson pmf at nmax+1 in log space, then accumulate the decaying tail.
    const int k0 = nmax + 1;
    double log_term = -alpha_abs2 + k0 * std::log(alpha_abs2) - std::lgamma(k0 + 1.0);
    double term = std::exp(log_term);
    double sum = 0.0;
    for (int k = k0; k < k0 + 100000; ++k) {
        sum += term;
        term *= alpha_abs2 / (k + 1.0);
        if (k > alpha_abs2 && term < 1e-20 * sum) break;
        if (sum == 0.0 && term == 0.0) break;
    }
    return sum;
}

FockState coherent_amplitudes(cplx alpha, int nmax) {
    FockState s(nmax + 1);
    s[0] = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n <= nmax; ++n) s[n] = s[n - 1] * alpha / std::sqrt(static_cast<double>(n));
    return s;
}

FockState coherent_state(cplx alpha, int nmax, double tail_tol) {
    const double tail = coherent_tail_mass(std::norm(alpha), nmax);
    if (tail > tail_tol)
        throw TruncationError("coherent state |alpha|=" + std::to_string(std::abs(alpha)) +
                              " leaves tail mass " + std::to_string(tail) + " beyond nmax=" +
                              std::to_string(nmax));
    FockState s = coherent_amplitudes(alpha, nmax);
    s.normalize();
    return s;
}

Eigen::VectorXcd number_phases(double rate, double t, int nmax) {
    Eigen::VectorXcd d(nmax + 1);
    const double unit = reduce_phase(rate, t);
    for (int n = 0; n <= nmax; ++n) {
        const double ph = reduce_phase(unit, static_cast<double>(n));
        d[n] = std::polar(1.0, -ph);
    }
    return d;
}

FockOperator number_phase_propagator(double rate, double t, int nmax) {
    return number_phases(rate, t, nmax).asDiagonal();
}

bool is_hermitian(const Eigen::MatrixXcd& m, double tol) {
    if (m.rows() != m.cols()) return false;
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

Eigen::MatrixXcd expm(const Eigen::MatrixXcd& h, double t) {
    if (!is_hermitian(h)) throw DomainError("expm: operator is not Hermitian");
    return hermitian_function(h, [t](double lambda) { return std::polar(1.0, -lambda * t); });
}

double unitarity_defect(const Eigen::MatrixXcd& u, Eigen::Index keep) {
    const Eigen::Index n = keep < 0 ? u.rows() : std::min(keep, u.rows());
    const Eigen::MatrixXcd prod = u.adjoint() * u;
    return (prod.topLeftCorner(n, n) - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

double fidelity(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    return std::abs(a.dot(b)) / (a.norm() * b.norm());
}

double trace_distance(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& sigma) {
    const Eigen::MatrixXcd diff = rho - sigma;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (diff + diff.adjoint()),
                                                       Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

cplx expectation(const Eigen::MatrixXcd& op, const Eigen::VectorXcd& state) {
    return state.dot(op * state) / state.squaredNorm();
}

double mean_photon_number(const FockState& state) {
    double num = 0.0;
    for (Eigen::Index n = 0; n < state.size(); ++n) num += static_cast<double>(n) * std::norm(state[n]);
    return num / state.squaredNorm();
}

}  // namespace cavq
