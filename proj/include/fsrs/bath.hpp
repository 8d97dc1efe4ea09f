#pragma once

namespace fsrs::bath {

// Drude bath shared by all molecules plus a uniform phenomenological
// dephasing for every coherence.  lambda0 is an energy (eV); gamma0 and
// extra_dephasing are angular rates (rad/ps).
struct BathSpec {
    double lambda0 = 9.8e-4;         // reorganization energy (eV); calibrated default
    double gamma0 = 50.0;            // Drude cutoff (rad/ps)
    double temperature = 300.0;      // kelvin
    double extra_dephasing = 10.0;   // extra linewidth on every coherence (rad/ps)

    void validate() const;  // throws ConfigError naming the offending field
};

// Drude spectral density J(w) = 2 lambda0 w gamma0 / (w^2 + gamma0^2),
// evaluated at an angular frequency [rad/ps] and returned as a rate [rad/ps]
// (lambda0 is converted internally).  Odd in w, peaks at w = gamma0 with
// value lambda0.
double spectral_density(double omega_radps, const BathSpec& bath);

// Bose-Einstein occupation at angular frequency w [rad/ps].  Throws
// ComputeError for |w| below 1e-9 rad/ps: degenerate pairs must use
// degenerate_transfer_limit instead of the 0/0 product J(w) n(w).
double bose_occupation(double omega_radps, double temperature_k);

// Analytic w -> 0 limit of J(w) n(w) (= of J(w) (n(w)+1)):
// 2 lambda0 k_B T / (hbar gamma0), returned in rad/ps.  This is the transfer
// rate scale between degenerate levels.
double degenerate_transfer_limit(const BathSpec& bath);

}  // namespace fsrs::bath
