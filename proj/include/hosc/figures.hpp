#pragma once

#include "hosc/verify.hpp"

#include <span>
#include <utility>
#include <vector>

namespace hosc {

/// The three-panel decomposition of the commensurate density of states:
/// (a) per-irrep reduced family series plus their sum, (b) the isolated
/// orbit contributions, (c) the total, checked against the smoothed exact
/// spectrum on the same grid.
struct Figure3Panels {
    std::vector<std::pair<Irrep, DosSeries>> reduced; // rho_bar/k1k2 + reduced series
    DosSeries family_plus_classical;                  // panel (a) sum
    DosSeries isolated_mode1;
    DosSeries isolated_mode2;
    DosSeries isolated_sum;
    DosSeries total;
    DosSeries exact;
    ComparisonReport report;
};

Figure3Panels figure3_panels(const OscillatorConfig& config, std::span<const double> grid,
                             const SmoothingSpec& smoothing, double tolerance);

} // namespace hosc
