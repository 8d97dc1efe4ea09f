#include "fsrs/bath.hpp"

#include <cmath>

#include "fsrs/constants.hpp"
#include "fsrs/errors.hpp"

namespace fsrs::bath {

void BathSpec::validate() const {
    if (lambda0 < 0.0) throw ConfigError("bath spec: lambda0 must be nonnegative");
    if (!(gamma0 > 0.0)) throw ConfigError("bath spec: gamma0 must be positive");
    if (!(temperature > 0.0)) throw ConfigError("bath spec: temperature must be positive");
    if (extra_dephasing < 0.0) throw ConfigError("bath spec: extra_dephasing must be nonnegative");
}

double spectral_density(double omega_radps, const BathSpec& bath) {
    const double lam = ev_to_radps(bath.lambda0);
    return 2.0 * lam * omega_radps * bath.gamma0 /
           (omega_radps * omega_radps + bath.gamma0 * bath.gamma0);
}

double bose_occupation(double omega_radps, double temperature_k) {
    if (std::abs(omega_radps) < 1e-9)
        throw ComputeError("bose_occupation: frequency too close to zero; use "
                           "degenerate_transfer_limit for degenerate pairs");
    const double x = radps_to_ev(omega_radps) / thermal_energy_ev(temperature_k);
    return 1.0 / std::expm1(x);
}

double degenerate_transfer_limit(const BathSpec& bath) {
    const double lam = ev_to_radps(bath.lambda0);
    const double kt = ev_to_radps(thermal_energy_ev(bath.temperature));
    return 2.0 * lam * kt / bath.gamma0;
}

}  // namespace fsrs::bath
