#include "cavq/phase.hpp"

#include <cmath>

namespace cavq {

namespace {

// 2pi split into two doubles: kTwoPiHi + kTwoPiLo == 2pi to ~1e-32.
constexpr double kTwoPiHi = 6.283185307179586232;
constexpr double kTwoPiLo = 2.449293598294706414e-16;

}  // namespace

double wrap_two_pi(double angle) {
    double r = std::fmod(angle, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r -= kTwoPi;
    return r;
}

double wrap_pi(double angle) {
    double r = wrap_two_pi(angle);
    return r > kPi ? r - kTwoPi : r;
}

double reduce_phase(double rate, double t) {
    const double hi = rate * t;
    const double lo = std::fma(rate, t, -hi);
    if (!std::isfinite(hi)) return hi;

    const double k = std::floor(hi / kTwoPiHi);
    // k * kTwoPiHi is formed exactly as qh + ql.
    const double qh = k * kTwoPiHi;
    const double ql = std::fma(k, kTwoPiHi, -qh);
    const double r = ((hi - qh) - ql) + (lo - k * kTwoPiLo);
    return wrap_two_pi(r);
}

}  // namespace cavq
