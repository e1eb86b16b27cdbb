#include "hosc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hosc {

namespace {

// Gaussians beyond this many widths contribute below 1e-22 of a peak.
constexpr double gaussian_window = 10.0;

double gaussian(double x, double width) {
    return std::exp(-0.5 * (x / width) * (x / width))
         / (width * std::sqrt(2.0 * std::numbers::pi));
}

} // namespace

DosSeries smoothed_exact_dos(const std::vector<Level>& levels, std::span<const double> grid,
                             double width) {
    if (!(width > 0.0)) throw std::domain_error("smoothing width must be > 0");
    DosSeries series;
    series.energies.assign(grid.begin(), grid.end());
    series.values.assign(grid.size(), 0.0);
    series.width = width;
    series.provenance = "exact";
    const double window = gaussian_window * width;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double energy = grid[i];
        // levels are sorted ascending; only those within the window matter
        auto lo = std::lower_bound(levels.begin(), levels.end(), energy - window,
                                   [](const Level& level, double e) { return level.energy < e; });
        double value = 0.0;
        for (auto it = lo; it != levels.end() && it->energy <= energy + window; ++it) {
            value += it->degeneracy * gaussian(energy - it->energy, width);
        }
        series.values[i] = value;
    }
    return series;
}

std::vector<Level> reduced_exact_levels(const OscillatorConfig& config, const Irrep& irrep,
                                        double e_max) {
    if (config.regime() == Regime::Incommensurate) {
        throw std::domain_error("reduced spectra require a commensurate config");
    }
    const CyclicProductGroup group(config.k1(), config.k2());
    zeta(irrep, group); // validates the label
    if (config.regime() == Regime::Isotropic) {
        return exact_levels(config, e_max); // the only symmetry class is (0,0)
    }
    std::vector<Level> out;
    for (const Level& level : exact_levels(config, e_max)) {
        if (level.irrep && (*level.irrep)[0] == irrep.lambda1
            && (*level.irrep)[1] == irrep.lambda2) {
            out.push_back(level);
        }
    }
    return out;
}

long long staircase(const std::vector<Level>& levels, double energy) {
    long long count = 0;
    for (const Level& level : levels) {
        if (level.energy > energy) break;
        count += level.degeneracy;
    }
    return count;
}

double staircase_semiclassical(const OscillatorConfig& config, double energy,
                               const SmoothingSpec& smoothing) {
    if (!(energy > 0.0)) return 0.0;
    const TotalTerms total = total_terms(config, smoothing);
    double n = 0.5 * total.classical_coefficient * energy * energy;
    for (const TraceTerm& term : total.oscillatory) {
        n += term.smoothed_integral(energy, smoothing.width);
    }
    return n;
}

ComparisonReport compare(const DosSeries& a, const DosSeries& b, double tolerance) {
    if (a.energies.size() != b.energies.size() || a.energies != b.energies) {
        throw std::invalid_argument("compared series must share one energy grid");
    }
    if (a.width != b.width) {
        throw std::invalid_argument("compared series must share one smoothing width");
    }
    double scale = 0.0;
    for (double v : a.values) scale = std::max(scale, std::abs(v));
    for (double v : b.values) scale = std::max(scale, std::abs(v));
    ComparisonReport report;
    report.tolerance = tolerance;
    if (!a.energies.empty()) report.worst_energy = a.energies.front();
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double err = std::abs(a.values[i] - b.values[i]);
        if (err > report.max_abs_error) {
            report.max_abs_error = err;
            report.worst_index = i;
            report.worst_energy = a.energies[i];
        }
    }
    report.max_rel_error = scale > 0.0 ? report.max_abs_error / scale : 0.0;
    report.pass = report.max_rel_error <= tolerance;
    return report;
}

} // namespace hosc
