#pragma once

#include "cavq/dissipation.hpp"
#include "cavq/fock.hpp"

#include <iosfwd>
#include <vector>

namespace cavq {

// Quadrature convention: x = (a + a^dag)/sqrt(2), p = (a - a^dag)/(i sqrt(2)),
// so a coherent state |beta> is a unit Gaussian centred at
// (sqrt(2) Re beta, sqrt(2) Im beta) with W = exp(-(x-x0)^2 - (p-p0)^2)/pi.

struct GridSpec {
    double x_min = -8.0;
    double x_max = 8.0;
    double p_min = -8.0;
    double p_max = 8.0;
    int nx = 257;
    int np = 257;

    std::vector<double> x_axis() const;
    std::vector<double> p_axis() const;
    double dx() const { return nx > 1 ? (x_max - x_min) / (nx - 1) : 0.0; }
    double dp() const { return np > 1 ? (p_max - p_min) / (np - 1) : 0.0; }
    void validate() const;
};

enum class WignerNormalization {
    UnitIntegral,  ///< integral of W over phase space is 1
    LobeHeight,     ///< W multiplied by pi N^2 (unit-height lobes)
};

const char* to_string(WignerNormalization m);

struct WignerGrid {
    std::vector<double> x_axis;
    std::vector<double> p_axis;
    Eigen::MatrixXd values;  ///< values(ix, ip)
    WignerNormalization normalization = WignerNormalization::UnitIntegral;

    /// Riemann sum of W dx dp.
    double integral() const;
    /// Value at the grid point nearest to (x, p).
    double nearest(double x, double p) const;
    /// Location of the largest value restricted to x >= 0 (or x < 0) and
    /// |x| >= min_abs_x. The exclusion keeps a tall central fringe out of a
    /// lobe search.
    std::pair<double, double> argmax(bool positive_x, double min_abs_x = 0.0) const;
};

/// Wigner function of the dyad |a><b| (complex unless a == b).
cplx coherent_overlap_wigner(cplx a, cplx b, double x, double p);

/// Closed-form unit-integral Wigner function of a (possibly damped) cat.
double cat_wigner_value(const DampedCat& dc, double x, double p);

WignerGrid cat_wigner(const DampedCat& dc, const GridSpec& grid,
                      WignerNormalization mode = WignerNormalization::UnitIntegral);

struct QuadratureOptions {
    /// Node spacing; <= 0 picks one from nmax and the momentum range.
    double step = 0.0;
    /// Convergence is asserted by halving the step on every `probe_stride`-th
    /// x column; the largest change must stay below `tolerance`.
    double tolerance = 1e-9;
    int probe_stride = 8;
};

/// Position-space Hermite functions psi_0..psi_nmax at s.
Eigen::VectorXd hermite_functions(double s, int nmax);

/// Definition-level Wigner function
///   W(x, p) = (1/pi) int <x - y|rho|x + y> e^{2 i p y} dy,
/// using Hermite-function wavefunctions and trapezoidal quadrature in y
/// (spectrally accurate for these Gaussian-decaying integrands). Result is
/// unit-integral times `scale`. Throws ConvergenceError if step halving moves
/// any probed value by more than the tolerance, DomainError if rho is not
/// unit trace or W picks up an imaginary part above 1e-10.
WignerGrid numeric_wigner(const FockOperator& rho, const GridSpec& grid,
                          const QuadratureOptions& quad = {}, double scale = 1.0,
                          WignerNormalization label = WignerNormalization::UnitIntegral);

/// CSV: header `x,p,w`, x-major rows, %.17g floats.
void write_csv(const WignerGrid& grid, std::ostream& out);

}  // namespace cavq
