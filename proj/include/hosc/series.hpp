#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hosc {

/// Density-of-states values on an ascending energy grid, together with the
/// Gaussian smoothing width and a provenance tag naming what was summed.
struct DosSeries {
    std::vector<double> energies;
    std::vector<double> values;
    double width = 0.0;
    std::string provenance;
};

/// Uniform grid of `count` energies from start to stop inclusive.
inline std::vector<double> make_grid(double start, double stop, std::size_t count) {
    if (count < 2) throw std::invalid_argument("grid needs at least 2 points");
    if (!(start < stop)) throw std::invalid_argument("grid start must be < stop");
    std::vector<double> grid(count);
    const double step = (stop - start) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) grid[i] = start + step * static_cast<double>(i);
    return grid;
}

} // namespace hosc
