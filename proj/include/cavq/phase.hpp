#pragma once

namespace cavq {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Wraps an angle into [0, 2pi).
double wrap_two_pi(double angle);

/// Returns (rate * t) mod 2pi.
///
/// The product is formed as an unevaluated double-double (hi + lo via fma)
/// and reduced against a double-double 2pi, so accumulated phases of order
/// 1e5..1e7 rad keep ~1e-15 rad absolute accuracy after reduction.
double reduce_phase(double rate, double t);

/// Wraps an angle into (-pi, pi].
double wrap_pi(double angle);

}  // namespace cavq
