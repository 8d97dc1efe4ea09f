#pragma once

#include <complex>
#include <numbers>

namespace fsrs::response {

// Closed form of the ordered two-time window integral
//
//   f(v, xi) = Int_0^inf dt Int_0^t dtau  exp[(i v - 1/s2) t]
//              * exp[(i delta - 1/s2 - 1/s3) tau] * exp[-i xi (t - tau)]
//
// where v is the Raman shift, xi the complex line frequency of the coherence
// created by the first Raman interaction, delta the pump-probe detuning and
// s2/s3 the pulse durations.  With a = i(delta + xi) - 1/s2 - 1/s3 and
// b = i(v - xi) - 1/s2 it evaluates to (1/a)(1/b - 1/(a+b)).  All frequencies
// in rad/ps, durations in ps.
//
// Throws ComputeError on an exact pole, which only occurs for an unphysical
// lossless configuration (all widths zero).
std::complex<double> f_function(double v, std::complex<double> xi, double s2, double s3,
                                double delta);

// Generalization where the dissipative propagator contributes a mode
// exp(lambda * tau) between the window opening and the first Raman
// interaction: a -> a + lambda, i.e.
//
//   f_mode(v, xi, lambda) = Int_0^inf dt Int_0^t dtau  exp[(i v - 1/s2) t]
//       * exp[(i delta - 1/s2 - 1/s3) tau] * exp[lambda tau] * exp[-i xi (t - tau)].
//
// f_mode(v, xi, 0) == f_function(v, xi).
std::complex<double> f_function_mode(double v, std::complex<double> xi, double s2, double s3,
                                     double delta, std::complex<double> lambda);

// Pinned spectral extraction: (1/pi) Im f is an absorptive line peaked at
// v = Re(xi), positive for population contributions.  Used uniformly by the
// signal engine and the resolver coefficients.
inline double absorptive(std::complex<double> f) { return f.imag() / std::numbers::pi; }

}  // namespace fsrs::response
