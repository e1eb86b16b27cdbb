#include "hosc/figures.hpp"

#include <cmath>
#include <string>

namespace hosc {

namespace {

DosSeries series_from_terms(std::span<const TraceTerm> terms, double classical_coefficient,
                            std::span<const double> grid, double width,
                            std::string provenance) {
    DosSeries series;
    series.energies.assign(grid.begin(), grid.end());
    series.values.reserve(grid.size());
    series.width = width;
    series.provenance = std::move(provenance);
    for (double energy : grid) {
        if (energy <= 0.0) {
            series.values.push_back(0.0);
            continue;
        }
        series.values.push_back(classical_coefficient * energy
                                + sum_terms(terms, energy, width));
    }
    return series;
}

} // namespace

Figure3Panels figure3_panels(const OscillatorConfig& config, std::span<const double> grid,
                             const SmoothingSpec& smoothing, double tolerance) {
    if (config.regime() == Regime::Incommensurate) {
        throw RegimeError("figure3 panels require a commensurate config");
    }
    const int k1 = config.k1();
    const int k2 = config.k2();
    const double classical_coeff =
        1.0 / (config.hbar * config.hbar * config.omega1 * config.omega2);
    const double w = smoothing.width;

    Figure3Panels panels;
    for (int l1 = 0; l1 < k1; ++l1) {
        for (int l2 = 0; l2 < k2; ++l2) {
            const Irrep irrep{l1, l2};
            const auto terms = reduced_terms(config, irrep, smoothing);
            auto series = series_from_terms(terms, classical_coeff / (k1 * k2), grid, w,
                                            "reduced(" + std::to_string(l1) + ","
                                                + std::to_string(l2) + ")");
            panels.reduced.emplace_back(irrep, std::move(series));
        }
    }
    panels.family_plus_classical =
        series_from_terms(family_terms(config, smoothing), classical_coeff, grid, w,
                          "semiclassical[classical+family]");
    panels.isolated_mode1 = series_from_terms(isolated_mode_terms(config, 1, smoothing), 0.0,
                                              grid, w, "semiclassical[isolated1]");
    panels.isolated_mode2 = series_from_terms(isolated_mode_terms(config, 2, smoothing), 0.0,
                                              grid, w, "semiclassical[isolated2]");
    panels.isolated_sum = panels.isolated_mode1;
    panels.isolated_sum.provenance = "semiclassical[isolated]";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        panels.isolated_sum.values[i] += panels.isolated_mode2.values[i];
    }
    panels.total = total_dos(config, grid, smoothing);

    const double margin = 15.0 * w;
    const auto levels = exact_levels(config, grid.back() + margin);
    panels.exact = smoothed_exact_dos(levels, grid, w);
    panels.report = compare(panels.total, panels.exact, tolerance);
    return panels;
}

} // namespace hosc
