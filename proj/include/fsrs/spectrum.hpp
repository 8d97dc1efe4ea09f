#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace fsrs::engine {

// Real-valued signal sampled on (Raman shift x pump frequency x delay), with
// the exact channel decomposition total = population + coherence.  The pump
// axis is empty for one-dimensional signals.  Values are raw (unnormalized);
// serialization applies any display normalization.
//
// Storage layout: index = (d * n_pump + p) * n_shift + s.
struct SpectrumGrid {
    std::vector<double> shift_axis;  // rad/ps
    std::vector<double> pump_axis;   // rad/ps, may be empty
    std::vector<double> delay_axis;  // ps
    std::vector<std::uint8_t> pulse_overlap;  // per delay: doorway-window validity flag

    std::vector<double> total;
    std::vector<double> population;
    std::vector<double> coherence;

    std::size_t n_shift() const { return shift_axis.size(); }
    std::size_t n_pump() const { return pump_axis.empty() ? 1 : pump_axis.size(); }
    std::size_t n_delay() const { return delay_axis.size(); }
    std::size_t size() const { return n_shift() * n_pump() * n_delay(); }

    std::size_t index(std::size_t d, std::size_t p, std::size_t s) const {
        return (d * n_pump() + p) * n_shift() + s;
    }

    // Allocates the channel arrays, throwing ComputeError with a sizing hint
    // when the grid exceeds `max_points`.
    static SpectrumGrid allocate(std::vector<double> shift, std::vector<double> pump,
                                 std::vector<double> delays, std::size_t max_points);
};

// Inclusive linear axis [min, max] with the given step (max is included when
// it falls within half a step of the last sample).
std::vector<double> make_axis(double min, double max, double step);

}  // namespace fsrs::engine
