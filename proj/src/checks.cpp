#include "hosc/checks.hpp"

#include "hosc/dynamics.hpp"
#include "hosc/figures.hpp"
#include "hosc/series.hpp"
#include "hosc/symmetry.hpp"
#include "hosc/trace.hpp"
#include "hosc/verify.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <utility>

namespace hosc::checks {

namespace {

constexpr double golden_ratio = 1.6180339887498949;
constexpr double two_pi = 2.0 * std::numbers::pi;

CheckResult make_result(std::string name, double measured, double tolerance,
                        std::string detail = {}) {
    CheckResult r;
    r.name = std::move(name);
    r.measured = measured;
    r.tolerance = tolerance;
    r.pass = measured <= tolerance;
    r.detail = std::move(detail);
    return r;
}

std::vector<double> midgap_energies(const std::vector<Level>& levels, double e_max) {
    std::vector<double> out;
    if (levels.empty()) return out;
    if (levels.front().energy / 2.0 <= e_max) out.push_back(levels.front().energy / 2.0);
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
        const double mid = 0.5 * (levels[i].energy + levels[i + 1].energy);
        if (mid <= e_max) out.push_back(mid);
    }
    return out;
}

struct Peak {
    double energy = 0.0;
    double height = 0.0;
};

/// First local maximum above `floor`, refined by parabolic interpolation.
Peak first_peak(const DosSeries& series, double floor) {
    for (std::size_t i = 1; i + 1 < series.values.size(); ++i) {
        const double v0 = series.values[i - 1];
        const double v1 = series.values[i];
        const double v2 = series.values[i + 1];
        if (v1 > floor && v1 >= v0 && v1 >= v2) {
            const double denom = v0 - 2.0 * v1 + v2;
            const double offset = denom != 0.0 ? 0.5 * (v0 - v2) / denom : 0.0;
            const double step = series.energies[i] - series.energies[i - 1];
            Peak peak;
            peak.energy = series.energies[i] + offset * step;
            peak.height = v1 - 0.25 * (v0 - v2) * offset;
            return peak;
        }
    }
    return {};
}

CheckResult smoothing_check(std::string name, const OscillatorConfig& config, double start,
                            double stop, double width, double tolerance) {
    const SmoothingSpec smoothing{width, 1e-12, 1e-8};
    const auto grid = make_grid(start, stop, 2000);
    const DosSeries semiclassical = total_dos(config, grid, smoothing);
    const auto levels = exact_levels(config, stop + 15.0 * width);
    const DosSeries exact = smoothed_exact_dos(levels, grid, width);
    const ComparisonReport report = compare(semiclassical, exact, tolerance);
    return make_result(std::move(name), report.max_rel_error, tolerance,
                       "worst at E = " + std::to_string(report.worst_energy));
}

} // namespace

CheckResult matrizant_determinant() {
    std::mt19937_64 rng(271828);
    std::uniform_real_distribution<double> omega_dist(0.1, 10.0);
    std::uniform_real_distribution<double> mass_dist(0.2, 5.0);
    std::uniform_real_distribution<double> time_dist(0.0, 50.0);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const Matrizant2x2 x = matrizant(omega_dist(rng), mass_dist(rng), time_dist(rng));
        worst = std::max(worst, std::abs(x.det() - 1.0));
    }
    return make_result("matrizant-determinant", worst, 1e-12);
}

CheckResult stability_closed_vs_numeric() {
    std::mt19937_64 rng(314159);
    std::uniform_real_distribution<double> omega_dist(0.2, 5.0);
    std::uniform_int_distribution<int> rep_dist(1, 20);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double omega_other = omega_dist(rng);
        const double omega_orbit = omega_dist(rng);
        const int r = rep_dist(rng);
        const double closed = stability_factor(omega_other, omega_orbit, r);
        const double numeric = stability_factor_numeric(omega_other, omega_orbit, r);
        worst = std::max(worst, std::abs(closed - numeric));
    }
    return make_result("stability-closed-vs-numeric", worst, 1e-10);
}

CheckResult poisson_algebra() {
    const double m = 1.0;
    const double omega = 1.0;
    const PhaseFunction j1 = [&](const PhaseState& s) { return conserved_J(s, m, omega).j1; };
    const PhaseFunction j2 = [&](const PhaseState& s) { return conserved_J(s, m, omega).j2; };
    const PhaseFunction j3 = [&](const PhaseState& s) { return conserved_J(s, m, omega).j3; };
    const PhaseFunction h = [&](const PhaseState& s) {
        return mode_energy(s.q1, s.p1, m, omega) + mode_energy(s.q2, s.p2, m, omega);
    };
    std::mt19937_64 rng(141421);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    const double step = 1e-5;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const PhaseState s{coord(rng), coord(rng), coord(rng), coord(rng)};
        worst = std::max(worst, std::abs(poisson_bracket_numeric(j1, j2, s, step) - j3(s)));
        worst = std::max(worst, std::abs(poisson_bracket_numeric(j2, j3, s, step) - j1(s)));
        worst = std::max(worst, std::abs(poisson_bracket_numeric(j3, j1, s, step) - j2(s)));
        worst = std::max(worst, std::abs(poisson_bracket_numeric(j2, j2, s, step)));
        for (const auto& f : {j1, j2, j3}) {
            worst = std::max(worst, std::abs(poisson_bracket_numeric(h, f, s, step)));
        }
    }
    return make_result("poisson-algebra", worst, 1e-7);
}

CheckResult casimir_analytic() {
    std::mt19937_64 rng(577215);
    std::uniform_real_distribution<double> omega_dist(0.5, 2.0);
    std::uniform_real_distribution<double> mass_dist(0.5, 2.0);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const double omega = omega_dist(rng);
        const double m = mass_dist(rng);
        const auto config = OscillatorConfig::isotropic(omega, m);
        const PhaseState init{coord(rng), coord(rng), coord(rng), coord(rng)};
        const double energy = total_energy(config, init);
        if (energy <= 1e-3) continue;
        const double target = j_vector_magnitude(energy, omega) * j_vector_magnitude(energy, omega);
        auto grid = make_grid(0.0, two_pi / omega, 50);
        for (const PhaseState& s : trajectory_analytic(config, init, grid)) {
            const JVector j = conserved_J(s, m, omega);
            const double casimir = j.j1 * j.j1 + j.j2 * j.j2 + j.j3 * j.j3;
            worst = std::max(worst, std::abs(casimir - target) / target);
        }
    }
    return make_result("casimir-analytic", worst, 1e-10);
}

CheckResult casimir_leapfrog() {
    const auto config = OscillatorConfig::isotropic(1.0);
    const PhaseState init{0.4, 0.3, -0.2, 0.5};
    const int steps = 10000;
    const double dt = two_pi / steps;
    double worst = 0.0;
    for (const PhaseState& s : integrate_numeric(config, init, dt, steps)) {
        const double energy = total_energy(config, s);
        const JVector j = conserved_J(s, config.m, 1.0);
        const double casimir = j.j1 * j.j1 + j.j2 * j.j2 + j.j3 * j.j3;
        const double target = j_vector_magnitude(energy, 1.0) * j_vector_magnitude(energy, 1.0);
        worst = std::max(worst, std::abs(casimir - target) / target);
    }
    return make_result("casimir-leapfrog", worst, 1e-8);
}

CheckResult character_orthogonality() {
    double worst = 0.0;
    bool rational_ok = true;
    for (const auto& [k1, k2] : std::vector<std::pair<int, int>>{{3, 2}, {5, 4}, {5, 3}}) {
        const CyclicProductGroup group(k1, k2);
        std::vector<Irrep> irreps;
        for (int l1 = 0; l1 < k1; ++l1) {
            for (int l2 = 0; l2 < k2; ++l2) irreps.push_back({l1, l2});
        }
        for (const Irrep& a : irreps) {
            for (const Irrep& b : irreps) {
                std::complex<double> sum{0.0, 0.0};
                for (int s = 1; s <= group.order(); ++s) {
                    sum += character(a, group, s) * std::conj(character(b, group, s));
                }
                sum /= static_cast<double>(group.order());
                const bool same = a.lambda1 == b.lambda1 && a.lambda2 == b.lambda2;
                // exact route: distinct labels never share a phase mod 1
                const bool phases_equal = mod1(zeta(a, group) - zeta(b, group)) == Fraction(0);
                if (phases_equal != same) rational_ok = false;
                worst = std::max(worst, std::abs(sum - (same ? 1.0 : 0.0)));
            }
        }
    }
    auto result = make_result("character-orthogonality", worst, 1e-12);
    result.pass = result.pass && rational_ok;
    return result;
}

CheckResult selection_rule() {
    double worst = 0.0;
    bool exact_ok = true;
    for (const auto& [k1, k2] :
         std::vector<std::pair<int, int>>{{2, 1}, {3, 2}, {5, 4}, {5, 3}}) {
        const CyclicProductGroup group(k1, k2);
        for (long long r = 1; r <= 100; ++r) {
            std::complex<double> brute{0.0, 0.0};
            for (int l1 = 0; l1 < k1; ++l1) {
                for (int l2 = 0; l2 < k2; ++l2) {
                    brute += std::conj(character({l1, l2}, group, r));
                }
            }
            const long long closed = character_sum_selection(r, group);
            const bool divisible = r % (static_cast<long long>(k1) * k2) == 0;
            if (closed != (divisible ? group.order() : 0)) exact_ok = false;
            worst = std::max(worst, std::abs(brute - static_cast<double>(closed)));
        }
    }
    auto result = make_result("selection-rule", worst, 1e-10);
    result.pass = result.pass && exact_ok;
    return result;
}

CheckResult irrep_sum_vs_family() {
    std::mt19937_64 rng(662607);
    std::uniform_real_distribution<double> energy_dist(0.2, 10.0);
    std::uniform_real_distribution<double> width_dist(0.01, 0.1);
    double worst = 0.0;
    for (const auto& [k1, k2] : std::vector<std::pair<int, int>>{{3, 2}, {5, 4}}) {
        const auto config = OscillatorConfig::commensurate(k1, k2, 1.0);
        for (int i = 0; i < 50; ++i) {
            const double energy = energy_dist(rng);
            const SmoothingSpec smoothing{width_dist(rng), 1e-12, 1e-8};
            double irrep_sum = 0.0;
            for (int l1 = 0; l1 < k1; ++l1) {
                for (int l2 = 0; l2 < k2; ++l2) {
                    irrep_sum += delta_rho_reduced(config, {l1, l2}, energy, smoothing);
                }
            }
            const double family = delta_rho_family(config, energy, smoothing);
            worst = std::max(worst,
                             std::abs(irrep_sum - family) / std::max(1.0, std::abs(family)));
        }
    }
    return make_result("irrep-sum-vs-family", worst, 1e-10);
}

CheckResult reduced_maslov_isotropic_limit() {
    bool ok = true;
    for (int r = 1; r <= 200; ++r) {
        if (maslov_commensurate_reduced(r, 1, 1) != Fraction(maslov_isotropic(r))) ok = false;
    }
    auto result = make_result("reduced-maslov-isotropic-limit", ok ? 0.0 : 1.0, 0.0);
    return result;
}

CheckResult maslov_phase_identity() {
    bool ok = true;
    for (const auto& [k1, k2] :
         std::vector<std::pair<int, int>>{{3, 2}, {5, 4}, {5, 3}, {2, 1}}) {
        for (int r = 1; r <= 200; ++r) {
            const Fraction lhs =
                mod1((maslov_commensurate_reduced(r, k1, k2) + Fraction(1)) / Fraction(4));
            const Fraction rhs =
                mod1(Fraction(static_cast<long long>(r) * (k1 + k2), 2LL * k1 * k2));
            if (lhs != rhs) ok = false;
        }
    }
    return make_result("maslov-phase-identity", ok ? 0.0 : 1.0, 0.0);
}

CheckResult partition_closed_vs_sum() {
    double worst = 0.0;
    const std::vector<OscillatorConfig> configs = {
        OscillatorConfig::isotropic(1.0),
        OscillatorConfig::commensurate(3, 2, 1.0),
        OscillatorConfig::incommensurate(1.0, golden_ratio),
    };
    for (const auto& config : configs) {
        const auto levels = exact_levels(config, 70.0 * config.hbar_omega_ref());
        for (double beta : {0.5, 1.0, 2.0, 3.0}) {
            const double closed = partition_function_closed(config, beta);
            const double summed = partition_function_from_levels(levels, beta);
            worst = std::max(worst, std::abs(closed - summed) / closed);
        }
    }
    return make_result("partition-closed-vs-sum", worst, 1e-10);
}

CheckResult smoothing_commensurate(double tolerance) {
    return smoothing_check("smoothing-commensurate-3:2",
                           OscillatorConfig::commensurate(3, 2, 1.0), 0.05, 10.0, 0.02,
                           tolerance);
}

CheckResult smoothing_isotropic(double tolerance) {
    return smoothing_check("smoothing-isotropic", OscillatorConfig::isotropic(1.0), 0.5, 20.0,
                           0.05, tolerance);
}

CheckResult smoothing_incommensurate(double tolerance) {
    return smoothing_check("smoothing-incommensurate-golden",
                           OscillatorConfig::incommensurate(1.0, golden_ratio), 0.5, 15.0,
                           0.05, tolerance);
}

CheckResult staircase_midgap(const OscillatorConfig& config, double width,
                             const std::string& name) {
    const double e_max = 10.0 * config.hbar_omega_ref();
    const auto levels = exact_levels(config, e_max + config.hbar_omega_ref());
    const SmoothingSpec smoothing{width, 1e-12, 1e-8};
    double worst = 0.0;
    for (double mid : midgap_energies(levels, e_max)) {
        const double counted = staircase_semiclassical(config, mid, smoothing);
        const auto exact = static_cast<double>(staircase(levels, mid));
        worst = std::max(worst, std::abs(counted - exact));
    }
    return make_result(name, worst, 1e-4);
}

CheckResult cancellation_sub_ground() {
    const auto config = OscillatorConfig::commensurate(3, 2, 1.0);
    const SmoothingSpec smoothing{0.02, 1e-12, 1e-8};
    const double peak = total_dos_value(config, 5.0 / 12.0, smoothing);
    const double worst = std::max(std::abs(total_dos_value(config, 1.0 / 12.0, smoothing)),
                                  std::abs(total_dos_value(config, 0.25, smoothing)));
    return make_result("cancellation-sub-ground", worst / peak, 1e-6);
}

CheckResult figure3_first_peak() {
    const auto config = OscillatorConfig::commensurate(3, 2, 1.0);
    const SmoothingSpec smoothing{0.02, 1e-12, 1e-8};
    const auto grid = make_grid(0.02, 2.0, 9901);
    const auto panels = figure3_panels(config, grid, smoothing, 1e-5);
    const Peak peak = first_peak(panels.total, 1.0);
    const double error = std::abs(peak.energy - 5.0 / 12.0);
    return make_result("figure3-first-peak", error, smoothing.width / 10.0,
                       "peak at E = " + std::to_string(peak.energy));
}

CheckResult one_d_comb() {
    const double omega = 1.0;
    const double hbar = 1.0;
    const SmoothingSpec smoothing{0.05, 1e-12, 1e-8};
    const double peak_height = 1.0 / (smoothing.width * std::sqrt(two_pi));
    double worst = 0.0;
    for (int n = 0; n < 10; ++n) {
        const double at_peak = classical_dos_1d(omega, hbar)
                             + delta_rho_1d(omega, hbar, n + 0.5, smoothing);
        worst = std::max(worst, std::abs(at_peak - peak_height) / peak_height);
        const double mid = classical_dos_1d(omega, hbar)
                         + delta_rho_1d(omega, hbar, n + 1.0, smoothing);
        worst = std::max(worst, std::abs(mid));
    }
    return make_result("one-d-comb", worst, 1e-6);
}

CheckResult folding_closure(int k1, int k2) {
    const auto config = OscillatorConfig::commensurate(k1, k2, 1.0);
    const double omega = config.omega();
    const PhaseState init{0.4, 0.3, -0.2, 0.5};

    auto folded_state = [&](double t) {
        const PhaseState s = state_at(config, init, t);
        const ActionAngle aa = action_angles(config, s);
        const ModeActionAngle f1 = fold(aa.W1, aa.theta1, config.k1());
        const ModeActionAngle f2 = fold(aa.W2, aa.theta2, config.k2());
        const auto [q1, p1] = mode_state_from_action_angle(f1, config.m, omega);
        const auto [q2, p2] = mode_state_from_action_angle(f2, config.m, omega);
        return PhaseState{q1, p1, q2, p2};
    };

    const auto segments = segment_decomposition(config, init);
    double worst = segments.size() == static_cast<std::size_t>(k1 * k2) ? 0.0 : 1.0;

    // closure of the folded orbit after one isotropic period
    for (double t : {0.1, 0.73, 1.9}) {
        const PhaseState a = folded_state(t);
        const PhaseState b = folded_state(t + two_pi / omega);
        worst = std::max({worst, std::abs(a.q1 - b.q1), std::abs(a.p1 - b.p1),
                          std::abs(a.q2 - b.q2), std::abs(a.p2 - b.p2)});
    }

    // the conserved vector of the folded motion stays put inside each segment
    for (const Segment& segment : segments) {
        const double span = segment.t_end - segment.t_begin;
        JVector first{};
        bool have_first = false;
        for (int i = 1; i <= 5; ++i) {
            const double t = segment.t_begin + span * i / 6.0;
            const JVector j = conserved_J(folded_state(t), config.m, omega);
            if (!have_first) {
                first = j;
                have_first = true;
            } else {
                worst = std::max({worst, std::abs(j.j1 - first.j1), std::abs(j.j2 - first.j2),
                                  std::abs(j.j3 - first.j3)});
            }
        }
    }
    return make_result("folding-closure-" + std::to_string(k1) + ":" + std::to_string(k2),
                       worst, 1e-8);
}

CheckResult truncation_soundness() {
    double worst = 0.0;
    const std::vector<OscillatorConfig> configs = {
        OscillatorConfig::isotropic(1.0),
        OscillatorConfig::commensurate(3, 2, 1.0),
        OscillatorConfig::incommensurate(1.0, golden_ratio),
    };
    for (const auto& config : configs) {
        const auto grid = make_grid(0.3, 10.0, 100);
        const DosSeries loose = total_dos(config, grid, SmoothingSpec{0.02, 1e-12, 1e-8});
        const DosSeries tight = total_dos(config, grid, SmoothingSpec{0.02, 1e-15, 1e-8});
        double scale = 0.0;
        for (double v : tight.values) scale = std::max(scale, std::abs(v));
        for (std::size_t i = 0; i < grid.size(); ++i) {
            worst = std::max(worst, std::abs(loose.values[i] - tight.values[i]) / scale);
        }
    }
    return make_result("truncation-soundness", worst, 1e-9);
}

CheckResult reduced_vs_filtered_exact(double tolerance) {
    const auto config = OscillatorConfig::commensurate(3, 2, 1.0);
    const SmoothingSpec smoothing{0.02, 1e-12, 1e-8};
    const auto grid = make_grid(0.05, 8.0, 3200);
    const double classical_share =
        1.0 / (config.hbar * config.hbar * config.omega1 * config.omega2 * 6.0);
    double worst = 0.0;
    std::string detail;
    for (int l1 = 0; l1 < 3; ++l1) {
        for (int l2 = 0; l2 < 2; ++l2) {
            const Irrep irrep{l1, l2};
            DosSeries trace_side;
            trace_side.energies = grid;
            trace_side.width = smoothing.width;
            trace_side.provenance = "semiclassical[classical/6+reduced]";
            const auto terms = reduced_terms(config, irrep, smoothing);
            for (double energy : grid) {
                trace_side.values.push_back(classical_share * energy
                                            + sum_terms(terms, energy, smoothing.width));
            }
            const auto levels =
                reduced_exact_levels(config, irrep, grid.back() + 15.0 * smoothing.width);
            const DosSeries exact = smoothed_exact_dos(levels, grid, smoothing.width);
            const ComparisonReport report = compare(trace_side, exact, tolerance);
            if (report.max_rel_error > worst) {
                worst = report.max_rel_error;
                detail = "worst irrep (" + std::to_string(l1) + "," + std::to_string(l2)
                       + ") at E = " + std::to_string(report.worst_energy);
            }
        }
    }
    return make_result("reduced-vs-filtered-exact", worst, tolerance, detail);
}

std::vector<CheckResult> identity_checks() {
    return {
        matrizant_determinant(),
        stability_closed_vs_numeric(),
        poisson_algebra(),
        casimir_analytic(),
        casimir_leapfrog(),
        character_orthogonality(),
        selection_rule(),
        irrep_sum_vs_family(),
        reduced_maslov_isotropic_limit(),
        maslov_phase_identity(),
        partition_closed_vs_sum(),
    };
}

std::vector<CheckResult> dos_checks(double tolerance) {
    return {
        smoothing_commensurate(tolerance),
        smoothing_isotropic(tolerance),
        smoothing_incommensurate(tolerance),
        staircase_midgap(OscillatorConfig::isotropic(1.0), 0.01, "staircase-isotropic"),
        staircase_midgap(OscillatorConfig::commensurate(3, 2, 1.0), 0.01,
                         "staircase-commensurate-3:2"),
        staircase_midgap(OscillatorConfig::incommensurate(1.0, golden_ratio), 0.008,
                         "staircase-incommensurate-golden"),
        cancellation_sub_ground(),
        figure3_first_peak(),
        one_d_comb(),
        folding_closure(3, 2),
        folding_closure(5, 4),
        truncation_soundness(),
    };
}

} // namespace hosc::checks
