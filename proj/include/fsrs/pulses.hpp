#pragma once

#include <complex>

namespace fsrs::response {

// One-sided exponential pulse set.  epsilon_1 is the broadband resonant pump
// (arrives at t1; a second copy at t1_prime probes the pump-frequency axis),
// epsilon_2 the narrowband Raman pump and epsilon_3 the broadband probe,
// both arriving together at t2 = t3.
//
// Center frequencies are stored in eV; only the Raman detuning
// delta = w2 - w3 enters the detected signal, so w2/w3 themselves are
// conventional carriers.
struct PulseSpec {
    double t1 = 0.0;        // resonant pump arrival (ps)
    double t1_prime = 0.0;  // second pump arrival, t0 = t1_prime - t1 (ps)
    double t2 = 0.0;        // Raman pump arrival (ps)
    double t3 = 0.0;        // probe arrival, must equal t2 (ps)
    double w1 = 0.0;        // resonant pump center (eV)
    double w2 = 0.0;        // Raman pump center (eV)
    double w3 = 0.0;        // probe center (eV)
    double s1 = 0.015;      // pump duration (ps)
    double s2 = 1.0;        // Raman pump duration (ps)
    double s3 = 0.035;      // probe duration (ps)

    double delta_ev() const { return w2 - w3; }
    double delta_radps() const;
    double t0() const { return t1_prime - t1; }
    double big_t() const { return t2 - t1; }

    // The doorway-window factorization assumes the preparation is complete
    // before the Raman pulse pair acts; delays shorter than the Raman pump
    // duration violate that and are flagged (still computable).
    bool pulse_overlap(double delay_ps) const { return delay_ps < s2; }

    void validate() const;  // throws ConfigError (non-positive sigma, t2 != t3)
};

// theta(t - center) * exp(-(t - center)/sigma) * exp(-i w t) with w in eV.
std::complex<double> pulse_envelope(double t_ps, double center_ps, double sigma_ps,
                                    double omega_ev);

}  // namespace fsrs::response
