#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "fsrs/bath.hpp"
#include "fsrs/polariton.hpp"

namespace fsrs::bath {

// One dissipation channel between a pair of polariton manifold states
// (indices in the lp/ds/up ordering of PolaritonBasis).  `upper` has the
// higher (or equal) energy.  rate_down multiplies D[|lower><upper|]
// (emission), rate_up multiplies D[|upper><lower|] (absorption).  For
// degenerate pairs both equal the analytic J*n limit times the overlap
// weight and `gamma` is zero.
struct RateChannel {
    int upper = 0;
    int lower = 0;
    double omega_radps = 0.0;  // energy gap (rad/ps)
    double weight = 0.0;       // sum_i |U_{upper,i}|^2 |U_{lower,i}|^2 over molecules
    double gamma = 0.0;        // J(omega) * weight (rad/ps)
    double rate_up = 0.0;      // rad/ps
    double rate_down = 0.0;    // rad/ps
};

// Full-space level bookkeeping.  Level 0 is the electronic ground state;
// levels 1..N+1 are the polariton manifold in basis order (lp, ds..., up);
// the optional charge-transfer level sits last.
struct LevelSpace {
    int n_molecules = 0;
    bool has_ct = false;
    int dimension() const { return n_molecules + 2 + (has_ct ? 1 : 0); }
    int ground() const { return 0; }
    int level_of(int manifold_index) const { return manifold_index + 1; }
    int ct_level() const { return n_molecules + 2; }
    bool is_manifold(int level) const { return level >= 1 && level <= n_molecules + 1; }
};

// The Liouvillian over vectorized density matrices together with the rate
// and dephasing tables it was assembled from.
//
// Vectorization is column-major: element rho(r, c) sits at index r + D*c of
// vec(rho), so a sandwich A rho B maps to (B^T (x) A) on vectors.
//
// matrix = -i[H0, .] + sum over channels of the Lindblad dissipator + the
// uniform extra dephasing sum_a gamma_extra D[|a><a|].  Populations and
// coherences decouple exactly: each coherence (a, b) is an eigenmode with
// eigenvalue -i xi_ab, where xi_ab = omega_ab - i(gamma_ab + gamma_extra)
// and gamma_ab is the half-sum of the two states' total outgoing rates.
struct RedfieldGenerator {
    LevelSpace levels;
    Eigen::VectorXd energies_ev;     // per level (ground = 0)
    Eigen::MatrixXcd matrix;         // D^2 x D^2, rad/ps
    std::vector<RateChannel> rates;  // one entry per manifold pair
    Eigen::VectorXd out_rates;       // per level: total outgoing population rate (rad/ps)
    Eigen::MatrixXd dephasing;       // gamma_ab = (out_a + out_b)/2, all level pairs
    BathSpec bath;
};

// Pairwise relaxation channels gamma_mn = J(omega_mn) sum_i |U_mi|^2 |U_ni|^2
// for all manifold pairs, with the degenerate-pair limit applied where the
// gap vanishes.
std::vector<RateChannel> relaxation_rates(const core::PolaritonBasis& basis,
                                          const BathSpec& bath);

// Assembles the Liouvillian.  The charge-transfer level, when given, is
// carried as a spectator: it has no bath channels (only the uniform
// dephasing broadens coherences into it).
RedfieldGenerator build_generator(const core::PolaritonBasis& basis, const BathSpec& bath,
                                  std::optional<double> ct_energy_ev = std::nullopt);

// Dephasing-augmented complex line frequencies over all level pairs:
// xi_ab = omega_ab - i(gamma_ab + gamma_extra), in rad/ps.  Coherence (a, b)
// of the generator evolves as exp(-i xi_ab t).  Diagonal entries follow the
// same formula (omega_aa = 0) but describe no physical line.
Eigen::MatrixXcd complex_line_frequencies(const RedfieldGenerator& gen);

// Boltzmann populations over the excited manifold at the bath temperature,
// indexed like the basis (lp, ds..., up).  This is the unique stationary
// distribution of the rate channels.
Eigen::VectorXd gibbs_populations(const core::PolaritonBasis& basis, double temperature_k);

}  // namespace fsrs::bath
