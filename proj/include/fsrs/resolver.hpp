#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "fsrs/polariton.hpp"
#include "fsrs/propagator.hpp"
#include "fsrs/pulses.hpp"

namespace fsrs::resolver {

enum class Variant { one_dimensional, two_dimensional };

// Linear inversion of the three inelastic peak intensities into the three
// pairwise population sums (rho_up + rho_ds, rho_ds + rho_lp, rho_up +
// rho_lp), where rho_ds is the per-member dark population.  Rows correspond
// to the probe frequencies omega_{up,ds}, omega_{ds,lp}, omega_{up,lp};
// columns to the transition classes, each coefficient summing the full
// lineshape of every class member at that frequency.  Peaks are sampled at
// the analytic centers, never at a grid argmax.
struct ResolutionSystem {
    Variant variant = Variant::one_dimensional;
    int slice_state = -1;                // pumped manifold state (2D only)
    int n_dark = 0;                      // N - 1
    std::array<double, 3> peak_freqs{};  // rad/ps
    Eigen::Matrix3d coefficients = Eigen::Matrix3d::Zero();
    Eigen::Vector3d peak_values = Eigen::Vector3d::Zero();  // filled before resolve()
    double condition_number = 0.0;
};

struct ResolvedPopulations {
    double up = 0.0;
    double dark_aggregate = 0.0;  // (N-1) * dark_per_member
    double lp = 0.0;
    double dark_per_member = 0.0;
};

// Builds coefficients and records the condition number.  The two-dimensional
// variant scales the system by the pumped state's squared dipole and
// resonant doorway weight so that resolved values are normalized to a unit
// initial population.  Throws DegenerateConfigError when the up/ds and ds/lp
// lines are too close to separate (small detuning): use the two-dimensional
// protocol or resolve_merged_bright instead.
ResolutionSystem build_resolution_system(const core::PolaritonBasis& basis,
                                         const bath::RedfieldGenerator& gen,
                                         const response::PulseSpec& pulse, Variant variant,
                                         int slice_state = -1);

// Solves the 3x3 system in `peak_values` and recombines into individual
// populations.  A recovered population below -negative_tolerance signals a
// model/signal mismatch and throws ComputeError.
ResolvedPopulations resolve(const ResolutionSystem& system, double negative_tolerance = 0.02);

// Zero-detuning fallback: only the combined bright population rho_up +
// rho_lp is recoverable.  Takes the signal sampled at the merged dark-line
// center (half the up/lp gap) and at the omega_{up,lp} line; the first
// sample pins the combined dark contribution so its tails can be removed
// from the bright line before inverting.
double resolve_merged_bright(const core::PolaritonBasis& basis,
                             const bath::RedfieldGenerator& gen,
                             const response::PulseSpec& pulse, double merged_line_value,
                             double bright_line_value);

struct TrajectoryPoint {
    double delay_ps = 0.0;
    std::array<double, 3> master{};    // up, dark aggregate, lp
    std::array<double, 3> resolved{};  // same ordering
};

struct ComparisonReport {
    Variant variant = Variant::one_dimensional;
    int slice_state = -1;
    std::vector<TrajectoryPoint> points;
    std::array<double, 3> max_abs_dev{};
    std::array<double, 3> rms_dev{};
    double condition_number = 0.0;
    double tolerance = 0.05;
    bool pass = false;
};

// Forward-synthesizes the population-channel peak samples along the delay
// grid (including, for the 2D variant, the off-resonant contamination from
// the other bright slice), resolves them, and reports deviations from the
// directly propagated populations.  This quantifies the end-to-end model
// error of the inversion.
ComparisonReport compare_with_master(const core::PolaritonBasis& basis,
                                     const bath::Propagator& prop,
                                     const response::PulseSpec& pulse,
                                     const std::vector<double>& t_grid, Variant variant,
                                     int slice_state = -1, double tolerance = 0.05);

}  // namespace fsrs::resolver
