#include "fsrs/polariton.hpp"

#include <cmath>
#include <string>

#include "fsrs/constants.hpp"
#include "fsrs/errors.hpp"

namespace fsrs::core {

Eigen::MatrixXd build_hamiltonian_m1(const SystemSpec& spec) {
    spec.validate();
    const int n = spec.n_molecules;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (int j = 0; j < n; ++j) h(j, j) = spec.omega_exciton;
    h(n, n) = spec.omega_cavity;
    for (int j = 0; j < n; ++j) {
        h(j, n) = spec.coupling_g;
        h(n, j) = spec.coupling_g;
    }
    return h;
}

PolaritonBasis diagonalize_polaritons(const Eigen::MatrixXd& h, const SystemSpec& spec) {
    const int n = spec.n_molecules;
    if (h.rows() != n + 1 || h.cols() != n + 1)
        throw ComputeError("diagonalize_polaritons: dimension mismatch with spec");
    if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw ComputeError("diagonalize_polaritons: Hamiltonian not symmetric");

    const double w = spec.omega_exciton;
    const double v = spec.omega_cavity;
    const double s = spec.coupling_g * std::sqrt(static_cast<double>(n));  // collective coupling
    const double delta = w - v;
    const double split = std::sqrt(4.0 * s * s + delta * delta);  // omega_up - omega_lp
    if (split < 1e-14)
        throw ComputeError("diagonalize_polaritons: up/lp splitting below 1e-14, "
                           "polariton labeling unresolvable");

    // Bright sector: the symmetric exciton combination and the photon form a
    // 2x2 block [[w, s], [s, v]]; mixing angle t from tan(2t) = 2s/delta.
    const double t = 0.5 * std::atan2(2.0 * s, delta);
    const double c = std::cos(t), sn = std::sin(t);

    PolaritonBasis basis;
    basis.n_molecules = n;
    basis.frequencies = Eigen::VectorXd::Constant(n + 1, w);
    basis.frequencies(0) = 0.5 * (w + v) - 0.5 * split;  // lp
    basis.frequencies(n) = 0.5 * (w + v) + 0.5 * split;  // up

    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n + 1, n + 1);
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    for (int j = 0; j < n; ++j) {
        u(n, j) = c * inv_sqrt_n;   // up: exciton share
        u(0, j) = sn * inv_sqrt_n;  // lp: exciton share
    }
    u(n, n) = sn;  // up: photon share
    u(0, n) = -c;  // lp: photon share (sign fixed below)

    // Dark rows: difference basis over the exciton coordinates, no photon
    // component.  Row k (k = 1..N-1) mixes excitons 0..k.
    for (int k = 1; k < n; ++k) {
        const double norm = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
        for (int j = 0; j < k; ++j) u(k, j) = norm;
        u(k, k) = -static_cast<double>(k) * norm;
    }

    // Sign convention: first nonzero component of each row positive, which in
    // particular makes both bright transition dipoles nonnegative for
    // nonnegative molecular dipoles.
    for (int e = 0; e <= n; ++e) {
        for (int j = 0; j <= n; ++j) {
            if (std::abs(u(e, j)) > 1e-15) {
                if (u(e, j) < 0.0) u.row(e) = -u.row(e);
                break;
            }
        }
    }
    basis.transform = u;

    // The closed-form construction assumes the uniform molecule-cavity block;
    // verify against the supplied Hamiltonian.
    Eigen::MatrixXd residual = u * h * u.transpose();
    residual -= basis.frequencies.asDiagonal();
    if (residual.cwiseAbs().maxCoeff() > 1e-9)
        throw ComputeError("diagonalize_polaritons: Hamiltonian is not of the uniform "
                           "molecule-cavity single-excitation form");
    return basis;
}

double k_tensor(const PolaritonBasis& basis, int k, int l, int m, int n) {
    const int dim = basis.n_states();
    for (int idx : {k, l, m, n}) {
        if (idx < 0 || idx >= dim)
            throw ComputeError("k_tensor: state index out of range");
    }
    double sum = 0.0;
    for (int j = 0; j < basis.n_molecules; ++j)
        sum += basis.transform(k, j) * basis.transform(l, j) * basis.transform(m, j) *
               basis.transform(n, j);
    return sum;
}

Eigen::VectorXd transition_dipoles(const SystemSpec& spec, const PolaritonBasis& basis) {
    const int n = spec.n_molecules;
    Eigen::VectorXd mu = Eigen::VectorXd::Zero(n + 1);
    for (int e = 0; e <= n; ++e) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += basis.transform(e, j) * spec.molecular_dipoles[j];
        mu(e) = acc;
    }
    return mu;
}

namespace {

// Shared off-resonance guard for the polarizability denominators.
void check_off_resonant(double w_i, double w_state) {
    if (!(w_i - w_state > 1e-9))
        throw ComputeError("raman polarizability: near-edge level resonant with a "
                           "polariton or CT state (divergent denominator)");
}

}  // namespace

Eigen::MatrixXd raman_polarizability(const SystemSpec& spec, const PolaritonBasis& basis) {
    const int n = spec.n_molecules;
    Eigen::MatrixXd alpha = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (int e = 0; e <= n; ++e)
        for (int ep = e; ep <= n; ++ep) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i) {
                const double w_i = spec.near_edge_energies[i];
                check_off_resonant(w_i, basis.frequencies(e));
                check_off_resonant(w_i, basis.frequencies(ep));
                const double p2 = spec.near_edge_dipoles[i] * spec.near_edge_dipoles[i];
                acc += (p2 / hbar_ev_ps) *
                       std::abs(basis.transform(e, i)) * std::abs(basis.transform(ep, i)) *
                       (1.0 / (w_i - basis.frequencies(ep)) + 1.0 / (w_i - basis.frequencies(e)));
            }
            alpha(e, ep) = acc;
            alpha(ep, e) = acc;
        }
    return alpha;
}

Eigen::VectorXd ct_polarizability(const SystemSpec& spec, const PolaritonBasis& basis) {
    if (!spec.ct_energy || !spec.ct_dipoles)
        throw ConfigError("ct_polarizability: charge-transfer level not configured");
    const int n = spec.n_molecules;
    const double w_ct = *spec.ct_energy;
    Eigen::VectorXd act = Eigen::VectorXd::Zero(n + 1);
    for (int e = 0; e <= n; ++e) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            const double w_i = spec.near_edge_energies[i];
            check_off_resonant(w_i, basis.frequencies(e));
            check_off_resonant(w_i, w_ct);
            acc += (spec.near_edge_dipoles[i] * (*spec.ct_dipoles)[i] / hbar_ev_ps) *
                   std::abs(basis.transform(e, i)) *
                   (1.0 / (w_i - w_ct) + 1.0 / (w_i - basis.frequencies(e)));
        }
        act(e) = acc;
    }
    return act;
}

PolaritonBasis build_basis(const SystemSpec& spec) {
    PolaritonBasis basis = diagonalize_polaritons(build_hamiltonian_m1(spec), spec);
    basis.dipoles_ge = transition_dipoles(spec, basis);
    basis.alpha = raman_polarizability(spec, basis);
    if (spec.ct_energy) basis.alpha_ct = ct_polarizability(spec, basis);
    return basis;
}

}  // namespace fsrs::core
