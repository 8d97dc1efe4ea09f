#pragma once

#include <optional>
#include <vector>

namespace fsrs::core {

// Static description of the coupled molecule-cavity system.  Energies in eV,
// dipoles in arbitrary (consistent) units.  The single-excitation sector of
// N identical two-level molecules coupled to one cavity mode is the state
// space every signal lives in; the quartic exciton-exciton interaction `u`
// only acts for two or more excitations and is therefore carried but inert.
struct SystemSpec {
    int n_molecules = 0;             // N >= 2 (dark states require at least two)
    double omega_exciton = 0.0;      // molecular excitation energy (eV)
    double omega_cavity = 0.0;       // cavity mode energy (eV)
    double coupling_g = 0.0;         // single-molecule light-matter coupling (eV)
    double exciton_interaction_u = 0.0;  // quartic exciton-exciton strength (eV)

    std::vector<double> molecular_dipoles;   // p_j, length N
    std::vector<double> near_edge_energies;  // omega_i (eV), length N, above omega_up
    std::vector<double> near_edge_dipoles;   // P_i, length N

    std::optional<double> ct_energy;            // charge-transfer level (eV), below omega_lp
    std::optional<std::vector<double>> ct_dipoles;  // mu_{ri,ct}, length N

    // Detuning convention: exciton minus cavity energy.
    double detuning() const { return omega_exciton - omega_cavity; }

    // Analytic bright-branch energies: 0.5*(v + w) +/- 0.5*sqrt(4Ng^2 + (w-v)^2).
    double omega_up() const;
    double omega_lp() const;

    // Throws ConfigError naming the offending field when an invariant is
    // violated (N < 2, non-positive energies, near-edge levels not above the
    // upper branch, CT level not below the lower branch, length mismatches).
    void validate() const;
};

}  // namespace fsrs::core
