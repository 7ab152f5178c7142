#include "cavq/oracle.hpp"

#include "cavq/errors.hpp"
#include "cavq/phase.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cavq {

namespace {

constexpr double kGammaGuard = 1e-3;
constexpr double kHamiltonianGuard = 1e-2;
constexpr double kTraceDriftLimit = 1e-6;

// Splits H = c + omega n when H is diagonal and linear in n.
std::optional<double> number_rate(const FockOperator& h) {
    const Eigen::Index dim = h.rows();
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if ((h - FockOperator(h.diagonal().asDiagonal())).cwiseAbs().maxCoeff() > 1e-12 * scale)
        return std::nullopt;
    if (dim < 2) return 0.0;
    const double rate = (h(1, 1) - h(0, 0)).real();
    for (Eigen::Index n = 0; n < dim; ++n) {
        const cplx expected = h(0, 0) + rate * static_cast<double>(n);
        if (std::abs(h(n, n) - expected) > 1e-12 * scale) return std::nullopt;
    }
    return rate;
}

// gamma (a rho a^dag - {n, rho}/2), elementwise in the number basis.
void add_loss(const FockOperator& rho, double gamma, FockOperator& out) {
    const Eigen::Index dim = rho.rows();
    for (Eigen::Index n = 0; n < dim; ++n) {
        for (Eigen::Index m = 0; m < dim; ++m) {
            cplx v = -0.5 * static_cast<double>(m + n) * rho(m, n);
            if (m + 1 < dim && n + 1 < dim)
                v += std::sqrt(static_cast<double>((m + 1) * (n + 1))) * rho(m + 1, n + 1);
            out(m, n) += gamma * v;
        }
    }
}

}  // namespace

LindbladResult lindblad_evolve(const LindbladProblem& p) {
    const Eigen::Index dim = p.initial.rows();
    if (dim == 0 || p.initial.cols() != dim) throw DomainError("initial density matrix must be square");
    if (p.decay_rate < 0.0) throw DomainError("decay rate must be non-negative");
    if (p.t_final < 0.0) throw DomainError("t_final must be non-negative");

    LindbladResult res;
    std::optional<FockOperator> h;
    double frame_rate = 0.0;
    if (p.hamiltonian) {
        if (p.hamiltonian->rows() != dim || p.hamiltonian->cols() != dim)
            throw DomainError("Hamiltonian and density matrix dimensions differ");
        if (!is_hermitian(*p.hamiltonian, 1e-9 * std::max(1.0, p.hamiltonian->cwiseAbs().maxCoeff())))
            throw DomainError("Hamiltonian is not Hermitian");
        if (auto rate = number_rate(*p.hamiltonian)) {
            frame_rate = *rate;
            res.rotating_frame = true;
        } else {
            h = *p.hamiltonian;
        }
    } else {
        res.rotating_frame = true;
    }

    const double h_norm = h ? h->cwiseAbs().rowwise().sum().maxCoeff() : 0.0;
    double dt_max = INFINITY;
    if (p.decay_rate > 0.0) dt_max = std::min(dt_max, kGammaGuard / p.decay_rate);
    if (h_norm > 0.0) dt_max = std::min(dt_max, kHamiltonianGuard / h_norm);

    double dt = 0.0;
    long steps = 0;
    if (p.t_final > 0.0) {
        if (p.dt) {
            if (!(*p.dt > 0.0)) throw DomainError("dt must be positive");
            if (*p.dt > dt_max * (1.0 + 1e-12)) {
                std::ostringstream os;
                os << "dt = " << *p.dt << " violates the stability guards (max " << dt_max << ")";
                throw DomainError(os.str());
            }
            steps = static_cast<long>(std::ceil(p.t_final / *p.dt - 1e-9));
        } else {
            steps = std::isfinite(dt_max) ? static_cast<long>(std::ceil(p.t_final / dt_max)) : 1;
        }
        steps = std::max(steps, 1L);
        dt = p.t_final / static_cast<double>(steps);
    }

    auto rhs = [&](const FockOperator& rho) {
        FockOperator d = FockOperator::Zero(dim, dim);
        if (h) d.noalias() = cplx(0.0, -1.0) * (*h * rho - rho * *h);
        if (p.decay_rate > 0.0) add_loss(rho, p.decay_rate, d);
        return d;
    };

    FockOperator rho = p.initial;
    const cplx trace0 = rho.trace();
    for (long s = 0; s < steps; ++s) {
        const FockOperator k1 = rhs(rho);
        const FockOperator k2 = rhs(rho + 0.5 * dt * k1);
        const FockOperator k3 = rhs(rho + 0.5 * dt * k2);
        const FockOperator k4 = rhs(rho + dt * k3);
        rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }

    // The loss channel only ever moves population downwards; with a truncated
    // basis the trace is preserved exactly up to rounding and step error.
    res.trace_drift = std::abs(rho.trace() - trace0);
    if (res.trace_drift > kTraceDriftLimit) {
        std::ostringstream os;
        os << "Lindblad integration unstable: trace drift " << res.trace_drift << " after " << steps
           << " steps of dt = " << dt;
        throw InstabilityError(os.str());
    }
    if (res.rotating_frame && frame_rate != 0.0) {
        const Eigen::VectorXcd ph = number_phases(frame_rate, p.t_final, static_cast<int>(dim) - 1);
        rho = ph.asDiagonal() * rho * ph.conjugate().asDiagonal();
    }
    res.hermiticity_defect = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    res.rho = std::move(rho);
    res.steps = steps;
    res.dt = dt;
    return res;
}

namespace {

// Time-ordered double integral int_0^T dt1 int_0^t1 dt2 exp(i s Delta (t1 - t2))
// by cumulative trapezoid sums.
cplx dyson_integral(double detuning, double t, int points, double s) {
    const double h = t / points;
    cplx inner = 0.0;  // int_0^t1 exp(-i s Delta t2)
    cplx outer = 0.0;
    cplx prev = 0.0;   // outer integrand at t1 = 0
    for (int k = 1; k <= points; ++k) {
        const double t0 = (k - 1) * h;
        const double t1 = k * h;
        inner += 0.5 * h * (std::polar(1.0, -s * detuning * t0) + std::polar(1.0, -s * detuning * t1));
        const cplx term = std::polar(1.0, s * detuning * t1) * inner;
        outer += 0.5 * h * (prev + term);
        prev = term;
    }
    return outer;
}

}  // namespace

EffectiveHamiltonianReport dispersive_vs_full(double g, double detuning, const QubitFieldState& initial,
                                              double t, int dyson_points) {
    if (!(detuning > 0.0)) throw DomainError("dispersive comparison requires Delta > 0");
    if (g < 0.0 || t < 0.0) throw DomainError("g and t must be non-negative");
    const int nmax = initial.nmax();
    const Eigen::Index dim = nmax + 1;
    const double chi = g * g / detuning;

    // Full rotating-frame Hamiltonian on [g-block; e-block].
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2 * dim, 2 * dim);
    h.bottomRightCorner(dim, dim) = detuning * identity(nmax);
    // g a s+ : |g, n> -> sqrt(n) |e, n-1>
    h.block(dim, 0, dim, dim) = g * annihilation(nmax);
    h.block(0, dim, dim, dim) = g * creation(nmax);
    const Eigen::VectorXcd psi0 = initial.stacked();
    const Eigen::VectorXcd full = expm(h, t) * psi0;

    // Dispersive evolution is diagonal; a a^dag has eigenvalue n + 1.
    Eigen::VectorXcd disp(2 * dim);
    for (Eigen::Index n = 0; n < dim; ++n) {
        const double nd = static_cast<double>(n);
        disp[n] = psi0[n] * std::polar(1.0, wrap_two_pi(chi * nd * t));
        disp[dim + n] = psi0[dim + n] *
                        std::polar(1.0, -wrap_two_pi(detuning * t + chi * (nd + 1.0) * t));
    }

    EffectiveHamiltonianReport r;
    r.g = g;
    r.detuning = detuning;
    r.t = t;
    r.fidelity = fidelity(full, disp);
    r.infidelity = 1.0 - r.fidelity;

    if (g > 0.0 && t > 0.0) {
        // Interaction picture w.r.t. Delta |e><e|. Second-order term:
        //   U2 = -g^2 [a^dag a |g><g| I(-) + a a^dag |e><e| I(+)],
        // I(s) = int int_{t2<t1} exp(i s Delta (t1 - t2)). Generator estimate i U2 / t.
        int points = dyson_points;
        if (points <= 0) points = std::max(2000, static_cast<int>(std::ceil(detuning * t / (kTwoPi) * 40.0)));
        const cplx i_minus = dyson_integral(detuning, t, points, -1.0);
        const cplx i_plus = dyson_integral(detuning, t, points, +1.0);
        const cplx c_g = cplx(0.0, 1.0) * (-g * g) * i_minus / t;
        const cplx c_e = cplx(0.0, 1.0) * (-g * g) * i_plus / t;
        r.chi_ground_estimate = c_g.real();
        r.chi_excited_estimate = c_e.real();
        r.generator_error = std::max(std::abs(c_g + chi), std::abs(c_e - chi)) / chi;
    }
    return r;
}

EffectiveHamiltonianReport dispersive_vs_full(const SystemParams& params, const QubitFieldState& initial,
                                              double t, int dyson_points) {
    return dispersive_vs_full(params.coupling_abs(), derive(params).detuning, initial, t, dyson_points);
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw DomainError("slope needs at least two matched points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw DomainError("log-log slope needs positive data");
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace cavq
