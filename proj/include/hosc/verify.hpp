#pragma once

#include "hosc/oscillator.hpp"
#include "hosc/series.hpp"
#include "hosc/symmetry.hpp"
#include "hosc/trace.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace hosc {

/// Outcome of comparing two series; relative errors are normalized by the
/// larger series' peak value, which stays well defined at mid-gap zeros.
struct ComparisonReport {
    double max_abs_error = 0.0;
    double max_rel_error = 0.0;
    double worst_energy = 0.0;
    std::size_t worst_index = 0;
    double tolerance = 0.0;
    bool pass = false;
};

/// Gaussian-broadened exact spectrum: sum_n g_n N(E - E_n; w) on the grid.
DosSeries smoothed_exact_dos(const std::vector<Level>& levels, std::span<const double> grid,
                             double width);

/// Exact levels of one symmetry class: the irrep-filtered spectrum, at
/// energies hbar omega (n + zeta + (k1+k2)/2k1k2) with degeneracy n+1.
std::vector<Level> reduced_exact_levels(const OscillatorConfig& config, const Irrep& irrep,
                                        double e_max);

/// Cumulative level count N(E) = sum of degeneracies with E_n <= E.
long long staircase(const std::vector<Level>& levels, double energy);

/// Integrated semiclassical density from 0 to E: the classical term
/// analytically plus term-by-term analytic integrals of the damped series.
double staircase_semiclassical(const OscillatorConfig& config, double energy,
                               const SmoothingSpec& smoothing);

/// Compare two series sharing one grid and width.
ComparisonReport compare(const DosSeries& a, const DosSeries& b, double tolerance);

} // namespace hosc
