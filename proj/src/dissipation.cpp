#include "cavq/dissipation.hpp"

#include "cavq/errors.hpp"

#include <cmath>
#include <string>

namespace cavq {

double damping_factor(double tau, double omega, double quality) {
    if (tau < 0.0) throw DomainError("damping time must be non-negative");
    if (!(quality > 0.0)) throw DomainError("quality factor must be positive");
    return std::exp(-omega * tau / (2.0 * quality));
}

double damping_factor(double tau, const SystemParams& params) {
    if (!params.quality) throw DomainError("damping_factor needs a quality factor");
    return damping_factor(tau, params.omega, *params.quality);
}

cplx cross_coefficient(double alpha_abs2, double phi, double theta, double u) {
    const cplx one_minus = 1.0 - std::polar(1.0, -phi);
    return std::polar(1.0, theta) * std::exp(alpha_abs2 * one_minus * (u * u - 1.0));
}

DampedCat damped_cat_at(const CatSpec& spec, double u) {
    if (spec.u != 1.0) throw DomainError("damped_cat expects a pure cat on input");
    if (!(u >= 0.0 && u <= 1.0)) throw DomainError("damping factor must lie in [0, 1]");
    DampedCat dc;
    dc.spec = spec;
    dc.spec.u = u;
    dc.cross_coeff = cross_coefficient(spec.alpha_abs2, spec.phi, spec.theta, u);
    return dc;
}

DampedCat damped_cat(const CatSpec& spec, double tau, const SystemParams& params) {
    return damped_cat_at(spec, damping_factor(tau, params));
}

namespace {

void check_tail(const DampedCat& dc, int nmax, double tail_tol) {
    const double tail = coherent_tail_mass(std::norm(dc.beta_damped()), nmax);
    if (tail > tail_tol)
        throw TruncationError("damped cat tail mass " + std::to_string(tail) + " beyond nmax=" +
                              std::to_string(nmax));
}

}  // namespace

FockOperator realize_mixture(const DampedCat& dc, int nmax) {
    const FockState b = coherent_amplitudes(dc.beta_damped(), nmax);
    const FockState bp = coherent_amplitudes(dc.beta_prime_damped(), nmax);
    return (b * b.adjoint() + bp * bp.adjoint()) / dc.spec.norm_sq();
}

FockOperator realize_density(const DampedCat& dc, int nmax, double tail_tol) {
    check_tail(dc, nmax, tail_tol);
    const FockState b = coherent_amplitudes(dc.beta_damped(), nmax);
    const FockState bp = coherent_amplitudes(dc.beta_prime_damped(), nmax);
    const double s = sign_value(dc.spec.sign);
    const cplx c = dc.cross_coeff;
    FockOperator rho = b * b.adjoint() + bp * bp.adjoint();
    rho += s * c * (bp * b.adjoint());
    rho += s * std::conj(c) * (b * bp.adjoint());
    rho /= dc.spec.norm_sq();

    const double lowest = min_eigenvalue(rho);
    if (lowest < -1e-8)
        throw TruncationError("realized density has eigenvalue " + std::to_string(lowest));
    return rho;
}

double purity(const FockOperator& rho) { return (rho * rho).trace().real(); }

double min_eigenvalue(const FockOperator& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (rho + rho.adjoint()),
                                                       Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

}  // namespace cavq
