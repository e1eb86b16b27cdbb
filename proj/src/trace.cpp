#include "hosc/trace.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace hosc {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr long long max_harmonics = 5'000'000;

void require_positive_energy(double energy) {
    if (!(energy > 0.0)) {
        throw std::domain_error("trace formulas are valid only for positive energies");
    }
}

void require_width(const SmoothingSpec& smoothing) {
    if (!(smoothing.width > 0.0)) throw std::domain_error("smoothing width must be > 0");
    if (!(smoothing.damping_eps > 0.0) || smoothing.damping_eps >= 1.0) {
        throw std::domain_error("damping_eps must lie in (0, 1)");
    }
    if (smoothing.divisor_floor < 0.0) {
        throw std::domain_error("divisor_floor must be >= 0");
    }
}

[[noreturn]] void too_many_terms() {
    throw std::runtime_error("smoothing width too small: harmonic cutoff exceeds "
                             + std::to_string(max_harmonics) + " terms");
}

/// sin(pi * num/den) evaluated from the exact residue num mod 2*den, so the
/// sign pattern stays exact at large repetition indices.
double sin_pi_rational(long long num, long long den) {
    const long long m = ((num % (2 * den)) + 2 * den) % (2 * den);
    return std::sin(std::numbers::pi * static_cast<double>(m) / static_cast<double>(den));
}

} // namespace

double TraceTerm::damping(double width) const {
    return std::exp(-0.5 * alpha * alpha * width * width);
}

double TraceTerm::value(double energy) const {
    const double envelope = energy_power ? coefficient * energy : coefficient;
    return envelope * std::cos(alpha * energy + phase);
}

double TraceTerm::smoothed_value(double energy, double width) const {
    const double d = damping(width);
    const double end = alpha * energy + phase;
    if (energy_power == 0) return d * coefficient * std::cos(end);
    // Gaussian convolution of the linear envelope picks up a first-moment
    // term: (x cos(ax+p)) * G_w = D [x cos(ax+p) - a w^2 sin(ax+p)].
    return d * coefficient * (energy * std::cos(end) - alpha * width * width * std::sin(end));
}

double TraceTerm::smoothed_integral(double energy, double width) const {
    const double d = damping(width);
    const double end = alpha * energy + phase;
    if (energy_power == 0) {
        return coefficient * d * (std::sin(end) - std::sin(phase)) / alpha;
    }
    const double cos_diff = std::cos(end) - std::cos(phase);
    return coefficient * d
         * (energy * std::sin(end) / alpha + cos_diff / (alpha * alpha)
            + width * width * cos_diff);
}

int maslov_incommensurate(int r, double omega_orbit, double omega_other) {
    if (r < 1) throw std::domain_error("repetition index must be >= 1");
    return 2 * r + 1 + 2 * static_cast<int>(std::floor(r * omega_other / omega_orbit));
}

int maslov_isotropic(int r) {
    if (r < 1) throw std::domain_error("repetition index must be >= 1");
    return 4 * r - 1;
}

Fraction maslov_commensurate_reduced(int r, int k1, int k2) {
    if (r < 1) throw std::domain_error("repetition index must be >= 1");
    if (k1 < 1 || k2 < 1) throw std::domain_error("k1, k2 must be >= 1");
    return Fraction(2LL * r * (k1 + k2), static_cast<long long>(k1) * k2) - Fraction(1);
}

double family_orbit_period(double omega) { return two_pi / omega; }

double bloch_sphere_volume() { return 4.0 * std::numbers::pi; }

double j_vector_magnitude(double energy, double omega) { return energy / (2.0 * omega); }

double family_orbit_action(double energy, double omega) { return two_pi * energy / omega; }

std::vector<TraceTerm> isotropic_terms(const OscillatorConfig& config,
                                       const SmoothingSpec& smoothing) {
    if (config.regime() != Regime::Isotropic) {
        throw RegimeError("isotropic trace formula requires equal frequencies");
    }
    require_width(smoothing);
    const double hw = config.hbar * config.omega();
    const double coeff = 2.0 / (config.hbar * hw * config.omega());
    std::vector<TraceTerm> terms;
    for (long long r = 1;; ++r) {
        TraceTerm term{coeff, 1, two_pi * r / hw, 0.0, r};
        if (term.damping(smoothing.width) < smoothing.damping_eps) break;
        terms.push_back(term);
        if (r > max_harmonics) too_many_terms();
    }
    return terms;
}

std::vector<TraceTerm> incommensurate_mode_terms(const OscillatorConfig& config, int mode,
                                                 const SmoothingSpec& smoothing) {
    if (config.regime() != Regime::Incommensurate) {
        throw RegimeError("this trace formula requires incommensurate frequencies");
    }
    if (mode != 1 && mode != 2) throw std::domain_error("mode must be 1 or 2");
    require_width(smoothing);
    const double omega_orbit = (mode == 1) ? config.omega1 : config.omega2;
    const double omega_other = (mode == 1) ? config.omega2 : config.omega1;
    const double hw = config.hbar * omega_orbit;
    std::vector<TraceTerm> terms;
    for (int r = 1;; ++r) {
        const double alpha = two_pi * r / hw;
        TraceTerm term{0.0, 0, alpha, 0.0, r};
        if (term.damping(smoothing.width) < smoothing.damping_eps) break;
        const double divisor = std::abs(std::sin(std::numbers::pi * r * omega_other / omega_orbit));
        if (divisor < smoothing.divisor_floor) {
            throw SmallDivisorError(
                "stability divisor |sin(pi r omega_other/omega_orbit)| = "
                    + std::to_string(divisor) + " below floor at repetition r = "
                    + std::to_string(r) + "; treat this ratio as commensurate",
                r);
        }
        // (1/pi hbar) * T_orbit / (2 |sin|), phase -sigma/4 turns with sigma odd.
        term.coefficient = 1.0 / (hw * divisor);
        const int sigma = maslov_incommensurate(r, omega_orbit, omega_other);
        term.phase = turns_to_radians(mod1(Fraction(-sigma, 4)));
        terms.push_back(term);
        if (r > max_harmonics) too_many_terms();
    }
    return terms;
}

std::vector<TraceTerm> isolated_mode_terms(const OscillatorConfig& config, int mode,
                                           const SmoothingSpec& smoothing) {
    if (config.regime() == Regime::Incommensurate) {
        throw RegimeError("isolated-orbit series requires a commensurate config");
    }
    if (mode != 1 && mode != 2) throw std::domain_error("mode must be 1 or 2");
    require_width(smoothing);
    const int k_orbit = (mode == 1) ? config.k1() : config.k2();
    const int k_other = (mode == 1) ? config.k2() : config.k1();
    const double hw = config.hbar * config.omega();
    std::vector<TraceTerm> terms;
    for (long long r = 1;; ++r) {
        const double alpha = two_pi * k_orbit * r / hw;
        TraceTerm term{0.0, 0, alpha, 0.0, r};
        if (term.damping(smoothing.width) < smoothing.damping_eps) break;
        if (r % k_other != 0) { // primed sum: skip vanishing denominators
            const double divisor = sin_pi_rational(r * k_orbit, k_other);
            const double sign = (r % 2 == 0) ? 1.0 : -1.0;
            // (k_orbit/hbar omega) (-1)^r sin(...)/sin(...) as a cosine term
            term.coefficient = k_orbit * sign / (hw * divisor);
            term.phase = turns_to_radians(Fraction(-1, 4)); // sin x = cos(x - pi/2)
            terms.push_back(term);
        }
        if (r > max_harmonics) too_many_terms();
    }
    return terms;
}

std::vector<TraceTerm> reduced_terms(const OscillatorConfig& config, const Irrep& irrep,
                                     const SmoothingSpec& smoothing) {
    if (config.regime() == Regime::Incommensurate) {
        throw RegimeError("reduced family series requires a commensurate config");
    }
    require_width(smoothing);
    const int k1 = config.k1();
    const int k2 = config.k2();
    const CyclicProductGroup group(k1, k2);
    const Fraction zeta_turns = zeta(irrep, group);
    const double hw = config.hbar * config.omega();
    const double coeff = 2.0 / (config.hbar * hw * config.omega());
    std::vector<TraceTerm> terms;
    for (long long r = 1;; ++r) {
        TraceTerm term{coeff, 1, two_pi * r / hw, 0.0, r};
        if (term.damping(smoothing.width) < smoothing.damping_eps) break;
        // phase turns: -r zeta - (sigma_tilde + 1)/4, all exact rationals
        const Fraction maslov = maslov_commensurate_reduced(static_cast<int>(r), k1, k2);
        const Fraction turns = Fraction(-r) * zeta_turns - (maslov + Fraction(1)) / Fraction(4);
        term.phase = turns_to_radians(turns);
        terms.push_back(term);
        if (r > max_harmonics) too_many_terms();
    }
    return terms;
}

std::vector<TraceTerm> family_terms(const OscillatorConfig& config,
                                    const SmoothingSpec& smoothing) {
    if (config.regime() == Regime::Incommensurate) {
        throw RegimeError("family series requires a commensurate config");
    }
    require_width(smoothing);
    const long long k1 = config.k1();
    const long long k2 = config.k2();
    const double hw = config.hbar * config.omega();
    const double coeff = 2.0 * k1 * k2 / (config.hbar * hw * config.omega());
    std::vector<TraceTerm> terms;
    for (long long k = 1;; ++k) {
        TraceTerm term{coeff, 1, two_pi * k1 * k2 * k / hw, 0.0, k};
        if (term.damping(smoothing.width) < smoothing.damping_eps) break;
        const bool negative = (k * (k1 + k2)) % 2 != 0;
        term.coefficient = negative ? -coeff : coeff;
        terms.push_back(term);
        if (k > max_harmonics) too_many_terms();
    }
    return terms;
}

std::vector<TraceTerm> one_d_terms(double omega, double hbar,
                                   const SmoothingSpec& smoothing) {
    if (!(omega > 0.0) || !(hbar > 0.0)) {
        throw std::domain_error("omega and hbar must be positive");
    }
    require_width(smoothing);
    const double hw = hbar * omega;
    std::vector<TraceTerm> terms;
    for (long long r = 1;; ++r) {
        TraceTerm term{2.0 / hw, 0, two_pi * r / hw, 0.0, r};
        if (term.damping(smoothing.width) < smoothing.damping_eps) break;
        term.phase = turns_to_radians(mod1(Fraction(-r, 2)));
        terms.push_back(term);
        if (r > max_harmonics) too_many_terms();
    }
    return terms;
}

double sum_terms(std::span<const TraceTerm> terms, double energy, double width) {
    double total = 0.0;
    for (const TraceTerm& term : terms) total += term.smoothed_value(energy, width);
    return total;
}

double delta_rho_incommensurate(const OscillatorConfig& config, double energy,
                                const SmoothingSpec& smoothing) {
    require_positive_energy(energy);
    const auto terms1 = incommensurate_mode_terms(config, 1, smoothing);
    const auto terms2 = incommensurate_mode_terms(config, 2, smoothing);
    return sum_terms(terms1, energy, smoothing.width)
         + sum_terms(terms2, energy, smoothing.width);
}

double delta_rho_isotropic(const OscillatorConfig& config, double energy,
                           const SmoothingSpec& smoothing) {
    require_positive_energy(energy);
    return sum_terms(isotropic_terms(config, smoothing), energy, smoothing.width);
}

double delta_rho_isolated(const OscillatorConfig& config, double energy,
                          const SmoothingSpec& smoothing) {
    require_positive_energy(energy);
    return sum_terms(isolated_mode_terms(config, 1, smoothing), energy, smoothing.width)
         + sum_terms(isolated_mode_terms(config, 2, smoothing), energy, smoothing.width);
}

double delta_rho_reduced(const OscillatorConfig& config, const Irrep& irrep, double energy,
                         const SmoothingSpec& smoothing) {
    require_positive_energy(energy);
    return sum_terms(reduced_terms(config, irrep, smoothing), energy, smoothing.width);
}

double delta_rho_family(const OscillatorConfig& config, double energy,
                        const SmoothingSpec& smoothing) {
    require_positive_energy(energy);
    return sum_terms(family_terms(config, smoothing), energy, smoothing.width);
}

double delta_rho_1d(double omega, double hbar, double energy,
                    const SmoothingSpec& smoothing) {
    require_positive_energy(energy);
    return sum_terms(one_d_terms(omega, hbar, smoothing), energy, smoothing.width);
}

double classical_dos_1d(double omega, double hbar) { return 1.0 / (hbar * omega); }

TotalTerms total_terms(const OscillatorConfig& config, const SmoothingSpec& smoothing,
                       const TermSelection& selection) {
    require_width(smoothing);
    TotalTerms total;
    std::string tags;
    if (selection.classical) {
        total.classical_coefficient =
            1.0 / (config.hbar * config.hbar * config.omega1 * config.omega2);
        tags += "classical";
    }
    auto append = [&](std::vector<TraceTerm> terms, const char* tag) {
        total.oscillatory.insert(total.oscillatory.end(), terms.begin(), terms.end());
        if (!tags.empty()) tags += "+";
        tags += tag;
    };
    switch (config.regime()) {
    case Regime::Isotropic:
        if (selection.family) append(isotropic_terms(config, smoothing), "family");
        break;
    case Regime::Commensurate:
        if (selection.family) append(family_terms(config, smoothing), "family");
        if (selection.isolated) {
            append(isolated_mode_terms(config, 1, smoothing), "isolated1");
            append(isolated_mode_terms(config, 2, smoothing), "isolated2");
        }
        break;
    case Regime::Incommensurate:
        if (selection.isolated) {
            append(incommensurate_mode_terms(config, 1, smoothing), "isolated1");
            append(incommensurate_mode_terms(config, 2, smoothing), "isolated2");
        }
        break;
    }
    total.provenance = "semiclassical[" + tags + "]";
    return total;
}

double total_dos_value(const OscillatorConfig& config, double energy,
                       const SmoothingSpec& smoothing) {
    if (energy <= 0.0) return 0.0;
    const TotalTerms total = total_terms(config, smoothing);
    return total.classical_coefficient * energy
         + sum_terms(total.oscillatory, energy, smoothing.width);
}

DosSeries total_dos(const OscillatorConfig& config, std::span<const double> grid,
                    const SmoothingSpec& smoothing, const TermSelection& selection) {
    const TotalTerms total = total_terms(config, smoothing, selection);
    DosSeries series;
    series.energies.assign(grid.begin(), grid.end());
    series.values.reserve(grid.size());
    series.width = smoothing.width;
    series.provenance = total.provenance;
    for (double energy : grid) {
        if (energy <= 0.0) {
            series.values.push_back(0.0);
            continue;
        }
        series.values.push_back(total.classical_coefficient * energy
                                + sum_terms(total.oscillatory, energy, smoothing.width));
    }
    return series;
}

} // namespace hosc
