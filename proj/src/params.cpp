#include "cavq/params.hpp"

#include "cavq/errors.hpp"
#include "cavq/phase.hpp"

#include <cmath>
#include <string>

namespace cavq {

double ghz_to_rad_s(double ghz) { return kTwoPi * ghz * 1e9; }
double rad_s_to_ghz(double rad_s) { return rad_s / (kTwoPi * 1e9); }

void SystemParams::validate() const {
    if (!(omega > 0.0)) throw DomainError("omega must be positive");
    if (!(ej > 0.0)) throw DomainError("ej must be positive");
    if (!(ech > 0.0)) throw DomainError("ech must be positive");
    const double eta = std::abs(eta_ratio);
    if (!(eta > 0.0 && eta < 1.0))
        throw DomainError("eta_ratio must lie in (0, 1), got " + std::to_string(eta));
    if (quality && !(*quality > 0.0)) throw DomainError("quality factor must be positive");
}

SystemParams SystemParams::from_ghz(double ej_ghz, double ech4_ghz, double ng, double omega_ghz,
                                    std::complex<double> eta_ratio,
                                    std::optional<double> quality) {
    SystemParams p;
    p.ej = ghz_to_rad_s(ej_ghz);
    p.ech = ghz_to_rad_s(ech4_ghz) / 4.0;
    p.ng = ng;
    p.omega = ghz_to_rad_s(omega_ghz);
    p.eta_ratio = eta_ratio;
    p.quality = quality;
    p.validate();
    return p;
}

SystemParams SystemParams::from_ghz_with_coupling(double ej_ghz, double ech4_ghz, double ng,
                                                  double omega_ghz, double g_rad_s,
                                                  std::optional<double> quality) {
    const double ej = ghz_to_rad_s(ej_ghz);
    if (!(ej > 0.0)) throw DomainError("ej must be positive");
    return from_ghz(ej_ghz, ech4_ghz, ng, omega_ghz, {g_rad_s / ej, 0.0}, quality);
}

double charging_energy(const SystemParams& p) { return -2.0 * p.ech * (1.0 - 2.0 * p.ng); }

double qubit_frequency(const SystemParams& p) { return -4.0 * p.ech * (1.0 - 2.0 * p.ng); }

DerivedQuantities derive(const SystemParams& p) {
    DerivedQuantities d;
    d.qubit_freq = qubit_frequency(p);
    d.detuning = d.qubit_freq - p.omega;
    const double g = p.coupling_abs();
    d.chi = d.detuning != 0.0 ? g * g / d.detuning : 0.0;
    if (p.quality) d.gamma = p.omega / *p.quality;
    return d;
}

double pulse_duration(const SystemParams& p) { return kPi / (4.0 * p.ej); }

DispersiveReport check_dispersive(const SystemParams& p, double threshold) {
    const auto d = derive(p);
    if (!(d.detuning > 0.0))
        throw DomainError("dispersive treatment requires Delta = Omega - omega > 0, got " +
                          std::to_string(d.detuning) + " rad/s");
    const double g = p.coupling_abs();
    DispersiveReport r;
    r.threshold = threshold;
    r.g_over_detuning = g / d.detuning;
    r.detuning_over_g = g > 0.0 ? d.detuning / g : INFINITY;
    r.acceptable = r.g_over_detuning < threshold;
    return r;
}

double coupling_ratio_estimate(double omega, double squid_side) {
    using namespace constants;
    const double lambda = kTwoPi * speed_of_light / omega;
    const double volume = lambda * lambda * lambda;
    // Single-photon magnetic field amplitude at an antinode.
    const double b_field =
        std::sqrt(hbar * omega / (vacuum_permittivity * volume * speed_of_light * speed_of_light));
    const double eta = b_field * squid_side * squid_side;
    return kPi * eta / flux_quantum;
}

CouplingRange estimate_coupling_range(double omega_low, double omega_high, double squid_side) {
    if (!(omega_low > 0.0 && omega_low < omega_high))
        throw DomainError("estimate_coupling_range needs 0 < omega_low < omega_high");
    if (squid_side < 0.0) throw DomainError("squid side must be non-negative");
    return {coupling_ratio_estimate(omega_low, squid_side),
            coupling_ratio_estimate(omega_high, squid_side)};
}

}  // namespace cavq
