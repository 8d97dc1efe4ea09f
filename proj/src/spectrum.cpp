#include "fsrs/spectrum.hpp"

#include <cmath>
#include <string>

#include "fsrs/errors.hpp"

namespace fsrs::engine {

SpectrumGrid SpectrumGrid::allocate(std::vector<double> shift, std::vector<double> pump,
                                    std::vector<double> delays, std::size_t max_points) {
    SpectrumGrid grid;
    grid.shift_axis = std::move(shift);
    grid.pump_axis = std::move(pump);
    grid.delay_axis = std::move(delays);
    grid.pulse_overlap.assign(grid.delay_axis.size(), 0);

    if (grid.shift_axis.empty() || grid.delay_axis.empty())
        throw ComputeError("spectrum grid: shift and delay axes must be nonempty");

    const std::size_t points = grid.size();
    if (points > max_points)
        throw ComputeError(
            "spectrum grid: " + std::to_string(points) + " points exceeds the budget of " +
            std::to_string(max_points) +
            "; coarsen an axis (points = n_shift * n_pump * n_delay) or raise grids.max_points");

    grid.total.assign(points, 0.0);
    grid.population.assign(points, 0.0);
    grid.coherence.assign(points, 0.0);
    return grid;
}

std::vector<double> make_axis(double min, double max, double step) {
    if (!(step > 0.0)) throw ComputeError("make_axis: step must be positive");
    if (max < min) throw ComputeError("make_axis: max below min");
    std::vector<double> axis;
    const auto count = static_cast<std::size_t>(std::floor((max - min) / step + 0.5)) + 1;
    axis.reserve(count);
    for (std::size_t i = 0; i < count; ++i) axis.push_back(min + static_cast<double>(i) * step);
    return axis;
}

}  // namespace fsrs::engine
