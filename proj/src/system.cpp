#include "fsrs/system.hpp"

#include <cmath>
#include <string>

#include "fsrs/errors.hpp"

namespace fsrs::core {

double SystemSpec::omega_up() const {
    const double v = omega_cavity, w = omega_exciton;
    const double split = std::sqrt(4.0 * n_molecules * coupling_g * coupling_g + (w - v) * (w - v));
    return 0.5 * (v + w) + 0.5 * split;
}

double SystemSpec::omega_lp() const {
    const double v = omega_cavity, w = omega_exciton;
    const double split = std::sqrt(4.0 * n_molecules * coupling_g * coupling_g + (w - v) * (w - v));
    return 0.5 * (v + w) - 0.5 * split;
}

void SystemSpec::validate() const {
    auto fail = [](const std::string& msg) { throw ConfigError("system spec: " + msg); };

    if (n_molecules < 2) fail("n_molecules must be >= 2 (dark states need N >= 2)");
    if (!(omega_exciton > 0.0)) fail("omega_exciton must be positive");
    if (!(omega_cavity > 0.0)) fail("omega_cavity must be positive");
    if (coupling_g < 0.0) fail("coupling_g must be nonnegative");
    if (exciton_interaction_u < 0.0) fail("exciton_interaction_u must be nonnegative");

    const auto n = static_cast<std::size_t>(n_molecules);
    if (molecular_dipoles.size() != n) fail("molecular_dipoles must have length N");
    if (near_edge_energies.size() != n) fail("near_edge_energies must have length N");
    if (near_edge_dipoles.size() != n) fail("near_edge_dipoles must have length N");

    const double up = omega_up();
    for (double wi : near_edge_energies) {
        if (!(wi > up))
            fail("near_edge_energies must lie strictly above the upper polariton (off-resonant)");
    }
    if (ct_energy) {
        if (!(*ct_energy > 0.0)) fail("ct_energy must be positive");
        if (!(*ct_energy < omega_lp()))
            fail("ct_energy must lie strictly below the lower polariton");
        if (!ct_dipoles || ct_dipoles->size() != n)
            fail("ct_dipoles must be present with length N when ct_energy is set");
    } else if (ct_dipoles) {
        fail("ct_dipoles given without ct_energy");
    }
}

}  // namespace fsrs::core
