#pragma once

#include <complex>
#include <optional>

namespace cavq {

namespace constants {
inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double planck = 6.62607015e-34;      // J s
inline constexpr double elementary_charge = 1.602176634e-19;
inline constexpr double speed_of_light = 299792458.0;  // m/s
inline constexpr double vacuum_permittivity = 8.8541878128e-12;
inline constexpr double flux_quantum = planck / (2.0 * elementary_charge);  // Wb
}  // namespace constants

/// Converts an ordinary frequency in GHz into an angular frequency in rad/s.
double ghz_to_rad_s(double ghz);
double rad_s_to_ghz(double rad_s);

/// Physical parameters of the charge-qubit/cavity system.
///
/// Energies are stored as angular frequencies (E/hbar, rad/s). The coupling
/// is carried as the dimensionless flux ratio pi*eta/Phi_0; only its modulus
/// enters downstream formulas.
struct SystemParams {
    double ej = 0.0;    ///< Josephson energy E_J/hbar
    double ech = 0.0;   ///< single-electron charging energy E_ch/hbar
    double ng = 0.5;    ///< gate charge
    double omega = 0.0; ///< cavity angular frequency
    std::complex<double> eta_ratio{0.0, 0.0};  ///< pi*eta/Phi_0
    std::optional<double> quality;             ///< absent for a lossless cavity

    /// Throws DomainError if any invariant is violated.
    void validate() const;

    /// g = eta_ratio * E_J/hbar (rad/s).
    std::complex<double> coupling() const { return eta_ratio * ej; }
    double coupling_abs() const { return std::abs(coupling()); }

    /// Builds the parameter set from the units used in configuration files.
    /// `ech4_ghz` is 4E_ch/h and `ej_ghz` is E_J/h, both in GHz.
    static SystemParams from_ghz(double ej_ghz, double ech4_ghz, double ng, double omega_ghz,
                                 std::complex<double> eta_ratio,
                                 std::optional<double> quality = std::nullopt);

    /// Same, but with the coupling |g| given directly in rad/s.
    static SystemParams from_ghz_with_coupling(double ej_ghz, double ech4_ghz, double ng,
                                               double omega_ghz, double g_rad_s,
                                               std::optional<double> quality = std::nullopt);

    SystemParams with_quality(std::optional<double> q) const {
        SystemParams out = *this;
        out.quality = q;
        return out;
    }
};

struct DerivedQuantities {
    double qubit_freq = 0.0;  ///< Omega
    double detuning = 0.0;    ///< Delta = Omega - omega
    double chi = 0.0;         ///< |g|^2 / Delta
    std::optional<double> gamma;  ///< omega / Q
};

/// E_z/hbar = -2 (E_ch/hbar)(1 - 2 n_g).
double charging_energy(const SystemParams& p);

/// Omega = -4 E_ch (1 - 2 n_g)/hbar = 2 E_z/hbar.
double qubit_frequency(const SystemParams& p);

/// Derived rates. chi is only meaningful when the detuning is positive; it is
/// still computed (as |g|^2/Delta) for any nonzero detuning.
DerivedQuantities derive(const SystemParams& p);

/// Duration of the pi/2 qubit rotation under -E_J sigma_x: hbar*pi/(4 E_J).
double pulse_duration(const SystemParams& p);

struct DispersiveReport {
    double detuning_over_g = 0.0;
    double g_over_detuning = 0.0;
    double threshold = 0.5;
    bool acceptable = false;  ///< advisory: |g|/Delta < threshold
};

/// Large-detuning check. Throws DomainError when Delta <= 0.
DispersiveReport check_dispersive(const SystemParams& p, double threshold = 0.5);

struct CouplingRange {
    double low = 0.0;
    double high = 0.0;
};

/// Order-of-magnitude flux ratio pi*eta/Phi_0 for a square SQUID loop of the
/// given side sitting at an antinode of a full-wave cavity (mode volume
/// lambda^3), evaluated at both band edges.
double coupling_ratio_estimate(double omega, double squid_side);
CouplingRange estimate_coupling_range(double omega_low, double omega_high, double squid_side);

}  // namespace cavq
