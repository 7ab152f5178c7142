#pragma once

#include "cavq/fock.hpp"
#include "cavq/params.hpp"
#include "cavq/protocol.hpp"

namespace cavq {

/// u(tau) = exp(-omega tau / 2Q). Requires tau >= 0 and a quality factor.
double damping_factor(double tau, const SystemParams& params);
double damping_factor(double tau, double omega, double quality);

/// Cat after zero-temperature photon loss: components shrink to beta u and the
/// coherence picks up C = e^{i theta} exp{|alpha|^2 (1 - e^{-i phi})(u^2 - 1)}.
struct DampedCat {
    CatSpec spec;  ///< spec.u holds the damping factor
    cplx cross_coeff{1.0, 0.0};

    cplx beta_damped() const { return spec.beta * spec.u; }
    cplx beta_prime_damped() const { return spec.beta_prime() * spec.u; }
};

cplx cross_coefficient(double alpha_abs2, double phi, double theta, double u);

/// Damps a pure cat (spec.u must be 1) for time tau.
DampedCat damped_cat(const CatSpec& spec, double tau, const SystemParams& params);
/// Same with the damping factor given directly.
DampedCat damped_cat_at(const CatSpec& spec, double u);

/// Density matrix
///   (|bu><bu| + |b'u><b'u| +/- C |b'u><bu| +/- C* |bu><b'u|) / N^2
/// built from exact (unrenormalized) truncated coherent amplitudes. Throws
/// TruncationError when the coherent tails exceed tail_tol or an eigenvalue
/// falls below -1e-8.
FockOperator realize_density(const DampedCat& dc, int nmax, double tail_tol = kDefaultTailTol);

/// Same four-dyad assembly without the coherence terms: the classical
/// mixture (|bu><bu| + |b'u><b'u|)/N^2 reached once the fringes have decayed.
FockOperator realize_mixture(const DampedCat& dc, int nmax);

/// Purity Tr rho^2.
double purity(const FockOperator& rho);

/// Smallest eigenvalue of the Hermitian part.
double min_eigenvalue(const FockOperator& rho);

}  // namespace cavq
