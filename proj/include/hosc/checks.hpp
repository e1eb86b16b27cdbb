#pragma once

#include "hosc/oscillator.hpp"

#include <string>
#include <vector>

namespace hosc::checks {

/// One verification outcome; `measured` is the worst observed deviation in
/// the units of the check and must stay at or below `tolerance`.
struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

// Identity suite: closed forms against independent numeric routes.
CheckResult matrizant_determinant();
CheckResult stability_closed_vs_numeric();
CheckResult poisson_algebra();
CheckResult casimir_analytic();
CheckResult casimir_leapfrog();
CheckResult character_orthogonality();
CheckResult selection_rule();
CheckResult irrep_sum_vs_family();
CheckResult reduced_maslov_isotropic_limit();
CheckResult maslov_phase_identity();
CheckResult partition_closed_vs_sum();

// DOS suite: smoothed semiclassical sums against the exact spectrum.
CheckResult smoothing_commensurate(double tolerance);
CheckResult smoothing_isotropic(double tolerance);
CheckResult smoothing_incommensurate(double tolerance);
CheckResult staircase_midgap(const OscillatorConfig& config, double width,
                             const std::string& name);
CheckResult cancellation_sub_ground();
CheckResult figure3_first_peak();
CheckResult one_d_comb();
CheckResult folding_closure(int k1, int k2);
CheckResult truncation_soundness();

/// Per-irrep reduced family series against the irrep-filtered exact
/// spectrum. The family series carries weight E/(hbar omega) per peak while
/// the filtered spectrum carries the integer degeneracy, so this comparison
/// measures the isolated orbits' per-irrep share rather than zero.
CheckResult reduced_vs_filtered_exact(double tolerance);

std::vector<CheckResult> identity_checks();
std::vector<CheckResult> dos_checks(double tolerance);

} // namespace hosc::checks
