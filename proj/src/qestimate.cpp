#include "cavq/qestimate.hpp"

#include "cavq/dissipation.hpp"
#include "cavq/errors.hpp"
#include "cavq/phase.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <vector>

namespace cavq {

namespace {

constexpr double kGolden = 0.6180339887498949;

struct Minimum {
    double x = 0.0;
    double f = 0.0;
    int evaluations = 0;
};

template <typename F>
Minimum golden_section(F&& f, double lo, double hi, double tol, int max_iter) {
    double a = lo, b = hi;
    double c = b - kGolden * (b - a);
    double d = a + kGolden * (b - a);
    double fc = f(c), fd = f(d);
    int evals = 2;
    while (std::abs(b - a) > tol && evals < max_iter) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kGolden * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kGolden * (b - a);
            fd = f(d);
        }
        ++evals;
    }
    return fc < fd ? Minimum{c, fc, evals} : Minimum{d, fd, evals};
}

// Best phase offset for a fixed Q: 32-point scan on [0, 2pi) then golden section.
std::pair<double, double> best_offset(std::span<const ReadoutSample> samples, const ReadoutConfig& cfg,
                                      const SystemParams& params, const CatSpec& cat, double q) {
    constexpr int kScan = 32;
    const double step = kTwoPi / kScan;
    int best = 0;
    double fbest = INFINITY;
    for (int i = 0; i < kScan; ++i) {
        const double f = fit_objective(samples, cfg, params, cat, q, i * step);
        if (f < fbest) {
            fbest = f;
            best = i;
        }
    }
    auto obj = [&](double off) { return fit_objective(samples, cfg, params, cat, q, off); };
    const Minimum m = golden_section(obj, (best - 1) * step, (best + 1) * step, 1e-9, 200);
    return {wrap_two_pi(m.x), m.f};
}

}  // namespace

double fit_objective(std::span<const ReadoutSample> samples, const ReadoutConfig& cfg,
                     const SystemParams& params, const CatSpec& cat, double q, double phase_offset) {
    ReadoutConfig c = cfg;
    const double base = omega_minus_tau4(cfg, params);
    c.omega_minus_tau4_mod = wrap_two_pi(base + phase_offset);
    double sse = 0.0;
    for (const auto& s : samples) {
        const double u = damping_factor(s.tau, params.omega, q);
        const Probabilities p = probability_closed_form_at(c, params, cat, u);
        const double r = p.p_g - s.p_g;
        sse += r * r;
    }
    return sse;
}

FitResult fit_q(std::span<const ReadoutSample> samples, const ReadoutConfig& cfg, const SystemParams& params,
                const CatSpec& cat, double q_lo, double q_hi, const FitOptions& opts) {
    if (samples.size() < 5) throw DomainError("Q fit needs at least 5 samples");
    if (!(q_lo > 0.0) || !(q_hi > q_lo)) throw DomainError("Q bracket must satisfy 0 < q_lo < q_hi");
    if (opts.grid_points < 3) throw DomainError("grid scan needs at least 3 points");

    const SystemParams base = params.with_quality(std::nullopt);
    auto objective = [&](double log_q, double* offset_out) {
        const double q = std::exp(log_q);
        if (!opts.fit_phase_offset) return fit_objective(samples, cfg, base, cat, q);
        const auto [off, f] = best_offset(samples, cfg, base, cat, q);
        if (offset_out) *offset_out = off;
        return f;
    };

    const double a = std::log(q_lo);
    const double b = std::log(q_hi);
    const int n = opts.grid_points;
    std::vector<double> fs(n);
    for (int i = 0; i < n; ++i) fs[i] = objective(a + (b - a) * i / (n - 1), nullptr);

    const auto [fmin_it, fmax_it] = std::minmax_element(fs.begin(), fs.end());
    const double spread = *fmax_it - *fmin_it;
    if (spread <= std::max(1e-24, opts.flat_tol * *fmax_it))
        throw NonIdentifiableError("objective is flat in Q over the bracket: the data carry no quality-factor information");

    const int imin = static_cast<int>(fmin_it - fs.begin());
    if (imin == 0 || imin == n - 1) {
        std::ostringstream os;
        os << "best grid point lies on the bracket edge (Q = " << std::exp(a + (b - a) * imin / (n - 1))
           << "); widen the bracket";
        throw BracketError(os.str());
    }

    const double lo = a + (b - a) * (imin - 1) / (n - 1);
    const double hi = a + (b - a) * (imin + 1) / (n - 1);
    // Relative tolerance on Q is an absolute tolerance on log Q.
    const Minimum m = golden_section([&](double x) { return objective(x, nullptr); }, lo, hi,
                                     opts.rel_tol * 0.5, opts.max_iterations);

    FitResult r;
    r.q_hat = std::exp(m.x);
    r.iterations = m.evaluations;
    double offset = 0.0;
    r.residual = objective(m.x, &offset);
    if (opts.fit_phase_offset) r.phase_offset = offset;

    if (opts.compute_interval && samples.size() > 1) {
        // Curvature of the SSE in Q; sigma^2 from the residual per degree of freedom.
        const double hq = 1e-3 * r.q_hat;
        auto fq = [&](double q) { return objective(std::log(q), nullptr); };
        const double curv = (fq(r.q_hat + hq) - 2.0 * r.residual + fq(r.q_hat - hq)) / (hq * hq);
        const double dof = static_cast<double>(samples.size()) - (opts.fit_phase_offset ? 2.0 : 1.0);
        const double sigma2 = dof > 0 ? r.residual / dof : 0.0;
        if (curv > 0.0) {
            const double half = std::sqrt(2.0 * sigma2 / curv);
            r.ci_68 = std::make_pair(r.q_hat - half, r.q_hat + half);
        }
    }
    return r;
}

void write_fit_report(const FitResult& r, std::ostream& out) {
    char buf[128];
    auto line = [&](const char* key, double v) {
        std::snprintf(buf, sizeof buf, "%s = %.17g\n", key, v);
        out << buf;
    };
    line("q_hat", r.q_hat);
    line("residual", r.residual);
    out << "iterations = " << r.iterations << '\n';
    if (r.ci_68) {
        line("ci68_low", r.ci_68->first);
        line("ci68_high", r.ci_68->second);
    }
    if (r.phase_offset) line("phase_offset", *r.phase_offset);
}

}  // namespace cavq
