#include "fsrs/pulses.hpp"

#include <cmath>

#include "fsrs/constants.hpp"
#include "fsrs/errors.hpp"

namespace fsrs::response {

double PulseSpec::delta_radps() const { return ev_to_radps(delta_ev()); }

void PulseSpec::validate() const {
    if (!(s1 > 0.0)) throw ConfigError("pulse spec: s1 must be positive");
    if (!(s2 > 0.0)) throw ConfigError("pulse spec: s2 must be positive");
    if (!(s3 > 0.0)) throw ConfigError("pulse spec: s3 must be positive");
    if (std::abs(t2 - t3) > 1e-12)
        throw ConfigError("pulse spec: Raman pump and probe must share an arrival time (t2 = t3)");
}

std::complex<double> pulse_envelope(double t_ps, double center_ps, double sigma_ps,
                                    double omega_ev) {
    if (!(sigma_ps > 0.0)) throw ConfigError("pulse_envelope: sigma must be positive");
    if (t_ps < center_ps) return {0.0, 0.0};
    const double decay = std::exp(-(t_ps - center_ps) / sigma_ps);
    const double phase = -ev_to_radps(omega_ev) * t_ps;
    return std::complex<double>(decay * std::cos(phase), decay * std::sin(phase));
}

}  // namespace fsrs::response
