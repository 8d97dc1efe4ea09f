#pragma once

#include <Eigen/Dense>
#include <optional>

#include "fsrs/system.hpp"

namespace fsrs::core {

// Eigenbasis of the single-excitation molecule-cavity block together with all
// state-dependent coupling quantities derived from it.
//
// Manifold ordering (row index of `transform`, entry of `frequencies`):
//   0            lower polariton (lp)
//   1 .. N-1     dark states (ds), all at the bare exciton energy
//   N            upper polariton (up)
// Columns of `transform`: excitons 0..N-1, then the photon (column N).
//
// The dark subspace is degenerate, so its basis is a convention.  We fix the
// deterministic "difference" basis d_n = (e_1 + ... + e_n - n e_{n+1}) /
// sqrt(n(n+1)) over the exciton coordinates, which makes every downstream
// output reproducible.  Aggregated dark-state observables are independent of
// this choice; per-member ones are not and are documented as
// convention-dependent.
struct PolaritonBasis {
    int n_molecules = 0;
    Eigen::VectorXd frequencies;          // eV, ascending: lp, ds x (N-1), up
    Eigen::MatrixXd transform;            // (N+1)x(N+1) real orthogonal U
    Eigen::VectorXd dipoles_ge;           // mu_{g,e} per polariton state
    Eigen::MatrixXd alpha;                // symmetric Raman polarizability
    std::optional<Eigen::VectorXd> alpha_ct;  // Raman polarizability into the CT level

    int lp_index() const { return 0; }
    int up_index() const { return n_molecules; }
    bool is_dark(int e) const { return e > 0 && e < n_molecules; }
    int n_states() const { return n_molecules + 1; }

    double omega_up() const { return frequencies(up_index()); }
    double omega_lp() const { return frequencies(lp_index()); }
    double omega_ds() const { return frequencies(1); }
};

// Single-excitation Hamiltonian: diag(w, ..., w, v) with coupling g between
// every exciton and the photon column.  The quartic exciton-exciton term does
// not act in this sector.
Eigen::MatrixXd build_hamiltonian_m1(const SystemSpec& spec);

// Diagonalizes `h` into the canonical polariton basis (closed-form bright
// rotation + difference dark basis) and verifies U h U^T is diagonal.  Throws
// ComputeError when the up/lp splitting is below 1e-14 (unresolvable
// labeling) or when `h` is not of the uniform molecule-cavity form.
PolaritonBasis diagonalize_polaritons(const Eigen::MatrixXd& h, const SystemSpec& spec);

// Quartic interaction kernel K_{klmn} = sum_j U_{kj} U_{lj} U_{mj} U_{nj}
// (molecule columns only).  Exposed for completeness; inert for M <= 1.
// Indices are 0-based positions in the polariton manifold.
double k_tensor(const PolaritonBasis& basis, int k, int l, int m, int n);

// mu_{g,e} = sum_j U_{e,j} p_j over molecule columns.  Dark entries vanish
// for uniform dipoles.
Eigen::VectorXd transition_dipoles(const SystemSpec& spec, const PolaritonBasis& basis);

// Raman polarizability with the random-phase ensemble average applied as the
// magnitude convention:
//   alpha_{ee'} = sum_i (P_i^2/hbar) |U_{e,i}| |U_{e',i}|
//                 * (1/(w_i - w_{e'}) + 1/(w_i - w_e)).
// Throws ComputeError when any near-edge level is resonant with a polariton.
Eigen::MatrixXd raman_polarizability(const SystemSpec& spec, const PolaritonBasis& basis);

// Charge-transfer-terminated variant:
//   alpha_{e,ct} = sum_i (P_i mu_{ri,ct}/hbar) |U_{e,i}|
//                  * (1/(w_i - w_ct) + 1/(w_i - w_e)).
// Requires ct_energy/ct_dipoles; throws ConfigError otherwise.
Eigen::VectorXd ct_polarizability(const SystemSpec& spec, const PolaritonBasis& basis);

// Convenience: hamiltonian -> diagonalization -> dipoles -> polarizabilities
// (CT block filled when configured).
PolaritonBasis build_basis(const SystemSpec& spec);

}  // namespace fsrs::core
