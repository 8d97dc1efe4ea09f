#pragma once

#include <Eigen/Dense>
#include <complex>
#include <limits>
#include <vector>

#include "fsrs/polariton.hpp"
#include "fsrs/pulses.hpp"

namespace fsrs::response {

// Closed forms of the window and doorway time integrals over the polariton
// manifold.  `xi` is the manifold-indexed table of complex line frequencies
// xi_ab [rad/ps]; alpha the Raman polarizability.  The signal engine composes
// the fully time-ordered f_function instead; these operators are its
// factorized large-separation limits and are exposed for diagnostics and for
// the quadrature cross-checks.

// Raman detection window, one operator per grid frequency v [rad/ps]:
//   W(v)_ab = alpha_ab Int_0^inf dt exp[i(v - xi_ab) t] exp[-t/s2]
//           = alpha_ab / (1/s2 - i(v - xi_ab)).
std::vector<Eigen::MatrixXcd> window_w(const Eigen::MatrixXd& alpha,
                                       const Eigen::MatrixXcd& xi, const PulseSpec& pulse,
                                       const std::vector<double>& shift_grid);

// Raman excitation window up to time T [ps] after the pulse pair arrives:
//   V_ab = alpha_ab Int_0^T dtau exp[i(delta + xi_ab) tau] exp[-(1/s2 + 1/s3) tau];
// the default upper limit is infinite (the factorized limit).
Eigen::MatrixXcd window_v(const Eigen::MatrixXd& alpha, const Eigen::MatrixXcd& xi,
                          const PulseSpec& pulse,
                          double t_upper_ps = std::numeric_limits<double>::infinity());

// Resonant-pump doorway weight of excited state e at pump frequency w0
// [rad/ps], given the ground-excited line frequencies:
//   Lambda_e(w0) = 1/(-w0 - xi_ge) + 1/(w0 - xi_eg)
//                = -2i Gamma_ge / ((w0 - w_eg)^2 + Gamma_ge^2),
// a purely imaginary Lorentzian in w0.
std::complex<double> doorway_weight(double w0_radps, std::complex<double> xi_eg);

// Time-domain doorway kernel whose Fourier transform over the pump delay T0
// is exactly doorway_weight:
//   d_e(T0) = -i [ theta(T0) exp(-i xi_eg T0) + theta(-T0) exp(-i conj(xi_eg) T0) ].
std::complex<double> doorway_kernel(double t0_ps, std::complex<double> xi_eg);

// Doorway matrices over the polariton manifold in the printed asymmetric
// form D_{e2,e1} = mu_{e2} mu_{e1} * weight(e1), with the weight attached to
// the second interaction's state only.  `xi_eg` holds xi_{e,g} per manifold
// state.
Eigen::MatrixXcd doorway_matrix_time(const core::PolaritonBasis& basis,
                                     const Eigen::VectorXcd& xi_eg, double t0_ps);
Eigen::MatrixXcd doorway_matrix_freq(const core::PolaritonBasis& basis,
                                     const Eigen::VectorXcd& xi_eg, double w0_radps);

}  // namespace fsrs::response
