#pragma once

// Unit convention used throughout the library:
//   * energies are stored in eV,
//   * times in ps,
//   * spectral axes and rates are displayed in angular THz (rad/ps).
// The single conversion constant is hbar expressed in eV.ps: an energy E [eV]
// corresponds to the angular frequency E / hbar_ev_ps [rad/ps], i.e.
// 1 eV = 1519.2676 rad/ps.  Mixing these two unit systems anywhere else is a
// bug; every interface documents which one it expects.

namespace fsrs {

// CODATA: reduced Planck constant in eV.ps (6.582119569e-16 eV.s).
inline constexpr double hbar_ev_ps = 6.582119569e-4;

// Boltzmann constant in eV/K.
inline constexpr double k_boltzmann_ev = 8.617333262e-5;

// Angular frequency [rad/ps] of a 1 eV quantum.
inline constexpr double radps_per_ev = 1.0 / hbar_ev_ps;

constexpr double ev_to_radps(double energy_ev) { return energy_ev * radps_per_ev; }
constexpr double radps_to_ev(double omega_radps) { return omega_radps * hbar_ev_ps; }

// Thermal energy k_B T in eV for a temperature in kelvin.
constexpr double thermal_energy_ev(double temperature_k) {
    return k_boltzmann_ev * temperature_k;
}

}  // namespace fsrs
