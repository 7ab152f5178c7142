#include "cavq/wigner.hpp"

#include "cavq/errors.hpp"
#include "cavq/phase.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace cavq {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = n > 1 ? lo + (hi - lo) * i / (n - 1) : lo;
    return v;
}

double gaussian(double x, double p, cplx centre) {
    const double dx = x - kSqrt2 * centre.real();
    const double dp = p - kSqrt2 * centre.imag();
    return std::exp(-dx * dx - dp * dp);
}

}  // namespace

std::vector<double> GridSpec::x_axis() const { return linspace(x_min, x_max, nx); }
std::vector<double> GridSpec::p_axis() const { return linspace(p_min, p_max, np); }

void GridSpec::validate() const {
    if (nx < 2 || np < 2) throw DomainError("grid needs at least 2 points per axis");
    if (!(x_max > x_min) || !(p_max > p_min)) throw DomainError("grid bounds must be increasing");
}

const char* to_string(WignerNormalization m) {
    return m == WignerNormalization::UnitIntegral ? "unit_integral" : "paper_fig1";
}

double WignerGrid::integral() const {
    if (x_axis.size() < 2 || p_axis.size() < 2) return 0.0;
    const double dx = x_axis[1] - x_axis[0];
    const double dp = p_axis[1] - p_axis[0];
    return values.sum() * dx * dp;
}

double WignerGrid::nearest(double x, double p) const {
    auto idx = [](const std::vector<double>& axis, double v) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < axis.size(); ++i)
            if (std::abs(axis[i] - v) < std::abs(axis[best] - v)) best = i;
        return static_cast<Eigen::Index>(best);
    };
    return values(idx(x_axis, x), idx(p_axis, p));
}

std::pair<double, double> WignerGrid::argmax(bool positive_x, double min_abs_x) const {
    double best = -INFINITY;
    std::pair<double, double> at{0.0, 0.0};
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
        const double x = x_axis[static_cast<std::size_t>(i)];
        if ((x >= 0.0) != positive_x || std::abs(x) < min_abs_x) continue;
        for (Eigen::Index j = 0; j < values.cols(); ++j)
            if (values(i, j) > best) {
                best = values(i, j);
                at = {x, p_axis[static_cast<std::size_t>(j)]};
            }
    }
    return at;
}

cplx coherent_overlap_wigner(cplx a, cplx b, double x, double p) {
    const cplx q1 = (a + std::conj(b)) / kSqrt2;
    const cplx q2 = (a - std::conj(b)) / kSqrt2;
    const cplx prefactor = -0.5 * (std::norm(a) + std::norm(b) - 2.0 * a * std::conj(b));
    const cplx xs = x - q1;
    const cplx ps = p + cplx(0.0, 1.0) * q2;
    return std::exp(prefactor - xs * xs - ps * ps) / kPi;
}

double cat_wigner_value(const DampedCat& dc, double x, double p) {
    const CatSpec& c = dc.spec;
    const double u = c.u;
    const cplx beta = c.beta;
    const cplx beta_p = c.beta_prime();
    const cplx wp1 = (beta + std::conj(beta_p)) / kSqrt2;
    const cplx wp2 = (beta - std::conj(beta_p)) / kSqrt2;

    const double lobes = gaussian(x, p, u * beta) + gaussian(x, p, u * beta_p);

    // P = e^{-i theta} exp[-|alpha|^2 (1 - e^{i phi})], folded into one exponent.
    const cplx log_p = cplx(0.0, -c.theta) - c.alpha_abs2 * (1.0 - std::polar(1.0, c.phi));
    const cplx xs = x - u * wp1;
    const cplx ps = p + cplx(0.0, 1.0) * u * wp2;
    const double fringe = 2.0 * std::exp(log_p - xs * xs - ps * ps).real();

    return (lobes + sign_value(c.sign) * fringe) / (kPi * c.norm_sq());
}

WignerGrid cat_wigner(const DampedCat& dc, const GridSpec& grid, WignerNormalization mode) {
    grid.validate();
    WignerGrid out;
    out.x_axis = grid.x_axis();
    out.p_axis = grid.p_axis();
    out.normalization = mode;
    out.values.resize(grid.nx, grid.np);
    const double scale = mode == WignerNormalization::LobeHeight ? kPi * dc.spec.norm_sq() : 1.0;
    for (int i = 0; i < grid.nx; ++i)
        for (int j = 0; j < grid.np; ++j)
            out.values(i, j) = scale * cat_wigner_value(dc, out.x_axis[static_cast<std::size_t>(i)],
                                                        out.p_axis[static_cast<std::size_t>(j)]);
    return out;
}

Eigen::VectorXd hermite_functions(double s, int nmax) {
    Eigen::VectorXd psi(nmax + 1);
    psi[0] = std::pow(kPi, -0.25) * std::exp(-0.5 * s * s);
    if (nmax >= 1) psi[1] = kSqrt2 * s * psi[0];
    for (int n = 1; n < nmax; ++n)
        psi[n + 1] = std::sqrt(2.0 / (n + 1)) * s * psi[n] - std::sqrt(static_cast<double>(n) / (n + 1)) * psi[n - 1];
    return psi;
}

namespace {

struct Nodes {
    Eigen::VectorXd y;
    double h = 0.0;
    Eigen::MatrixXcd fourier;  ///< (h/pi) e^{2 i p_j y_k}
};

Nodes trapezoid_nodes(int nmax, const std::vector<double>& p_axis, double p_extent, double step) {
    const double turning = std::sqrt(2.0 * nmax + 1.0);
    const double half_width = turning + 8.0;
    const double h = step > 0.0 ? step : kTwoPi / (2.0 * turning + 2.0 * p_extent + 20.0);
    const int half = static_cast<int>(std::ceil(half_width / h));
    Nodes n;
    n.h = h;
    n.y.resize(2 * half + 1);
    for (int k = -half; k <= half; ++k) n.y[k + half] = k * h;
    n.fourier.resize(static_cast<Eigen::Index>(p_axis.size()), n.y.size());
    for (std::size_t j = 0; j < p_axis.size(); ++j)
        for (Eigen::Index k = 0; k < n.y.size(); ++k)
            n.fourier(static_cast<Eigen::Index>(j), k) = std::polar(h / kPi, 2.0 * p_axis[j] * n.y[k]);
    return n;
}

// Column W(x, .) for one x: (h/pi) sum_k s_k e^{2 i p y_k} with
// s_k = sum_mn psi_m(x - y_k) rho_mn psi_n(x + y_k).
Eigen::VectorXcd wigner_column(const FockOperator& rho, double x, const Nodes& nodes) {
    const int nmax = static_cast<int>(rho.rows()) - 1;
    const Eigen::Index k = nodes.y.size();
    Eigen::MatrixXcd minus(k, nmax + 1);
    Eigen::MatrixXcd plus(k, nmax + 1);
    for (Eigen::Index i = 0; i < k; ++i) {
        minus.row(i) = hermite_functions(x - nodes.y[i], nmax).transpose().cast<cplx>();
        plus.row(i) = hermite_functions(x + nodes.y[i], nmax).transpose().cast<cplx>();
    }
    const Eigen::VectorXcd s = (minus * rho).cwiseProduct(plus).rowwise().sum();
    return nodes.fourier * s;
}

}  // namespace

WignerGrid numeric_wigner(const FockOperator& rho, const GridSpec& grid, const QuadratureOptions& quad,
                          double scale, WignerNormalization label) {
    grid.validate();
    if (rho.rows() != rho.cols() || rho.rows() < 1) throw DomainError("rho must be square");
    if (std::abs(rho.trace() - 1.0) > 1e-6) throw DomainError("numeric_wigner expects a unit-trace rho");

    const int nmax = static_cast<int>(rho.rows()) - 1;
    const double p_extent = std::max(std::abs(grid.p_min), std::abs(grid.p_max));
    WignerGrid out;
    out.x_axis = grid.x_axis();
    out.p_axis = grid.p_axis();
    const Nodes nodes = trapezoid_nodes(nmax, out.p_axis, p_extent, quad.step);
    const Nodes fine = trapezoid_nodes(nmax, out.p_axis, p_extent, 0.5 * nodes.h);
    out.normalization = label;
    out.values.resize(grid.nx, grid.np);

    double worst_imag = 0.0;
    double worst_change = 0.0;
    for (int i = 0; i < grid.nx; ++i) {
        const double x = out.x_axis[static_cast<std::size_t>(i)];
        const Eigen::VectorXcd col = wigner_column(rho, x, nodes);
        worst_imag = std::max(worst_imag, col.imag().cwiseAbs().maxCoeff());
        out.values.row(i) = scale * col.real().transpose();
        if (quad.probe_stride > 0 && i % quad.probe_stride == 0) {
            const Eigen::VectorXcd ref = wigner_column(rho, x, fine);
            worst_change = std::max(worst_change, (ref.real() - col.real()).cwiseAbs().maxCoeff());
        }
    }
    if (worst_imag > 1e-10)
        throw DomainError("numeric Wigner has imaginary residue " + std::to_string(worst_imag));
    if (worst_change > quad.tolerance)
        throw ConvergenceError("Wigner quadrature changed by " + std::to_string(worst_change) +
                               " when the step was halved");
    return out;
}

void write_csv(const WignerGrid& grid, std::ostream& out) {
    out << "x,p,w\n";
    char buf[96];
    for (std::size_t i = 0; i < grid.x_axis.size(); ++i)
        for (std::size_t j = 0; j < grid.p_axis.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", grid.x_axis[i], grid.p_axis[j],
                          grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
            out << buf;
        }
}

}  // namespace cavq
