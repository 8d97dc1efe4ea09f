#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "fsrs/polariton.hpp"
#include "fsrs/propagator.hpp"
#include "fsrs/pulses.hpp"
#include "fsrs/spectrum.hpp"

namespace fsrs::engine {

// Axes and evaluation budget for a signal request.  threads = 0 defers to
// FSRS_THREADS / hardware concurrency.
struct GridRequest {
    std::vector<double> shift_axis;  // rad/ps
    std::vector<double> pump_axis;   // rad/ps; unused by signal_1d
    std::vector<double> delay_axis;  // ps
    std::size_t max_points = 50'000'000;
    int threads = 0;
};

// Exact diagonal/off-diagonal decomposition of a density matrix in the
// polariton basis; feeding the parts through the signal contraction gives
// the population and coherence channels.
std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> split_channels(const Eigen::MatrixXcd& rho);

// Broadband-pump initial condition over the full level space: the normalized
// bright superposition (mu_up |up> + mu_lp |lp>) / N with N^2 = mu_up^2 +
// mu_lp^2 (dark states carry no dipole and are not pumped).
Eigen::MatrixXcd initial_pumped_state(const core::PolaritonBasis& basis,
                                      const bath::LevelSpace& levels);

// Core contraction shared by all signals: for a (possibly non-hermitian)
// manifold operator rho,
//   S(v) = (1/pi) Im sum_{a != b} f(v, xi_ab) alpha_ab (alpha rho + rho alpha)_ab,
// i.e. both loop pathways of each inelastic line; the elastic a = b terms
// (Rayleigh line) are omitted.  For diagonal rho each line at omega_ab
// reports alpha_ab^2 (rho_aa + rho_bb).
std::vector<double> spectrum_from_state(const core::PolaritonBasis& basis,
                                        const Eigen::MatrixXcd& xi_manifold,
                                        const response::PulseSpec& pulse,
                                        const Eigen::MatrixXcd& rho_manifold,
                                        const std::vector<double>& probe_freqs);

// One-dimensional protocol: broadband pump prepares the bright superposition,
// the Raman pair probes after delay T.
SpectrumGrid signal_1d(const core::PolaritonBasis& basis, const bath::Propagator& prop,
                       const response::PulseSpec& pulse, const GridRequest& grids);

// Two-dimensional protocol: a pump-delay pair resolves the preparation
// frequency w0; each bright state contributes a doorway slice weighted by a
// Lorentzian in w0, evolved by the dissipative propagator and probed like the
// 1D signal.
SpectrumGrid signal_2d(const core::PolaritonBasis& basis, const bath::Propagator& prop,
                       const response::PulseSpec& pulse, const GridRequest& grids);

// Charge-transfer-terminated variant: the Raman pair transfers population to
// the CT level, so only dissipative pathways survive and each line at
// omega_{e,ct} reports the single population rho_ee.  The dissipative
// evolution between the window opening and the first Raman interaction is
// kept exactly through the generator's eigenmodes.
SpectrumGrid signal_ct(const core::PolaritonBasis& basis, const bath::Propagator& prop,
                       const response::PulseSpec& pulse, const GridRequest& grids);

// Doorway slice weight in the pump-frequency dimension: the positive
// Lorentzian l_e(w0) = 2 Gamma_ge / ((w0 - w_eg)^2 + Gamma_ge^2).
double doorway_lorentzian(double w0_radps, std::complex<double> xi_eg);

}  // namespace fsrs::engine
