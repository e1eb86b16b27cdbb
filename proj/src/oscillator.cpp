#include "hosc/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hosc {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0)) {
        throw std::domain_error(std::string(name) + " must be positive");
    }
}

} // namespace

FrequencyClass FrequencyClass::isotropic(double omega) {
    require_positive(omega, "omega");
    FrequencyClass fc;
    fc.regime = Regime::Isotropic;
    fc.k1 = fc.k2 = 1;
    fc.omega = omega;
    return fc;
}

FrequencyClass FrequencyClass::commensurate(int k1, int k2, double omega) {
    if (k1 < 1 || k2 < 1) throw std::domain_error("k1, k2 must be positive integers");
    if (std::gcd(k1, k2) != 1) throw std::domain_error("k1, k2 must be coprime");
    require_positive(omega, "omega");
    if (k1 == 1 && k2 == 1) return isotropic(omega);
    FrequencyClass fc;
    fc.regime = Regime::Commensurate;
    fc.k1 = k1;
    fc.k2 = k2;
    fc.omega = omega;
    return fc;
}

FrequencyClass FrequencyClass::incommensurate() {
    FrequencyClass fc;
    fc.regime = Regime::Incommensurate;
    fc.k1 = fc.k2 = 0;
    fc.omega = 0.0;
    return fc;
}

OscillatorConfig OscillatorConfig::isotropic(double omega, double m, double hbar) {
    require_positive(m, "m");
    require_positive(hbar, "hbar");
    OscillatorConfig c;
    c.m = m;
    c.hbar = hbar;
    c.omega1 = c.omega2 = omega;
    c.freq_class = FrequencyClass::isotropic(omega);
    return c;
}

OscillatorConfig OscillatorConfig::commensurate(int k1, int k2, double omega, double m,
                                                double hbar) {
    require_positive(m, "m");
    require_positive(hbar, "hbar");
    OscillatorConfig c;
    c.m = m;
    c.hbar = hbar;
    c.freq_class = FrequencyClass::commensurate(k1, k2, omega);
    c.omega1 = omega / c.freq_class.k1;
    c.omega2 = omega / c.freq_class.k2;
    return c;
}

OscillatorConfig OscillatorConfig::incommensurate(double omega1, double omega2, double m,
                                                  double hbar) {
    require_positive(m, "m");
    require_positive(hbar, "hbar");
    require_positive(omega1, "omega1");
    require_positive(omega2, "omega2");
    OscillatorConfig c;
    c.m = m;
    c.hbar = hbar;
    c.omega1 = omega1;
    c.omega2 = omega2;
    c.freq_class = FrequencyClass::incommensurate();
    return c;
}

double OscillatorConfig::omega() const {
    if (regime() == Regime::Incommensurate) {
        throw std::domain_error("no common frequency for incommensurate ratios");
    }
    return freq_class.omega;
}

double OscillatorConfig::omega_ref() const {
    return regime() == Regime::Incommensurate ? omega1 : freq_class.omega;
}

FrequencyClass classify_ratio(double omega1, double omega2, double tol,
                              int max_denominator) {
    require_positive(omega1, "omega1");
    require_positive(omega2, "omega2");
    require_positive(tol, "tol");
    if (max_denominator < 1) throw std::domain_error("max_denominator must be >= 1");

    const double x = omega1 / omega2; // equals k2/k1 in the commensurate case
    if (std::abs(x - 1.0) <= tol) return FrequencyClass::isotropic(omega1);

    // Continued-fraction convergents p/q of x; the first one inside tol is
    // the smallest-denominator convergent that matches.
    std::int64_t p_prev2 = 0, q_prev2 = 1;
    std::int64_t p_prev = 1, q_prev = 0;
    double frac = x;
    for (int iter = 0; iter < 64; ++iter) {
        const double a_float = std::floor(frac);
        if (a_float > 1e15) break;
        const auto a = static_cast<std::int64_t>(a_float);
        const std::int64_t p = a * p_prev + p_prev2;
        const std::int64_t q = a * q_prev + q_prev2;
        if (q > max_denominator) break;
        if (p >= 1 && std::abs(x - static_cast<double>(p) / static_cast<double>(q)) <= tol) {
            const int k1 = static_cast<int>(q);
            const int k2 = static_cast<int>(p);
            return FrequencyClass::commensurate(k1, k2, k1 * omega1);
        }
        p_prev2 = p_prev;
        q_prev2 = q_prev;
        p_prev = p;
        q_prev = q;
        const double rem = frac - a_float;
        if (rem < 1e-15) break; // exact rational reached
        frac = 1.0 / rem;
    }
    return FrequencyClass::incommensurate();
}

QuantumDecomposition decompose_quantum_numbers(int nu1, int nu2, int k1, int k2) {
    if (nu1 < 0 || nu2 < 0) throw std::domain_error("quantum numbers must be >= 0");
    if (k1 < 1 || k2 < 1) throw std::domain_error("k1, k2 must be >= 1");
    QuantumDecomposition d;
    d.n1 = nu1 / k1;
    d.lambda1 = nu1 % k1;
    d.n2 = nu2 / k2;
    d.lambda2 = nu2 % k2;
    return d;
}

Fraction commensurate_energy_fraction(int n1, int n2, int lambda1, int lambda2,
                                      int k1, int k2) {
    if (k1 < 1 || k2 < 1) throw std::domain_error("k1, k2 must be >= 1");
    if (n1 < 0 || n2 < 0) throw std::domain_error("n1, n2 must be >= 0");
    if (lambda1 < 0 || lambda1 >= k1 || lambda2 < 0 || lambda2 >= k2) {
        throw std::domain_error("lambda out of range [0, k)");
    }
    return Fraction(n1 + n2) + Fraction(lambda1, k1) + Fraction(lambda2, k2)
         + Fraction(k1 + k2, 2LL * k1 * k2);
}

double commensurate_energy(int n1, int n2, int lambda1, int lambda2,
                           const OscillatorConfig& config) {
    if (config.regime() == Regime::Incommensurate) {
        throw std::domain_error("commensurate_energy requires a commensurate config");
    }
    const Fraction u = commensurate_energy_fraction(n1, n2, lambda1, lambda2,
                                                    config.k1(), config.k2());
    return config.hbar * config.omega() * to_double(u);
}

std::vector<Level> exact_levels(const OscillatorConfig& config, double e_max) {
    std::vector<Level> out;
    if (!(e_max > 0.0)) return out;

    if (config.regime() == Regime::Incommensurate) {
        // Float enumeration with a narrow merge tolerance; incommensurate
        // spectra have no exact degeneracies to recover.
        struct Entry {
            double energy;
            std::array<int, 2> nu;
        };
        std::vector<Entry> entries;
        const double h = config.hbar;
        for (int nu1 = 0;; ++nu1) {
            const double e1 = h * config.omega1 * (nu1 + 0.5);
            if (e1 + h * config.omega2 * 0.5 > e_max) break;
            for (int nu2 = 0;; ++nu2) {
                const double e = e1 + h * config.omega2 * (nu2 + 0.5);
                if (e > e_max) break;
                entries.push_back({e, {nu1, nu2}});
            }
        }
        std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
            return a.energy < b.energy;
        });
        const double merge_tol = 1e-9 * config.hbar_omega_ref();
        for (const Entry& entry : entries) {
            if (!out.empty() && entry.energy - out.back().energy <= merge_tol) {
                out.back().degeneracy += 1;
                out.back().members.push_back(entry.nu);
            } else {
                out.push_back({entry.energy, 1, {entry.nu}, std::nullopt});
            }
        }
        return out;
    }

    // Commensurate/isotropic: merge on the exact integer key
    // 2*k1*k2*E/(hbar*omega) = k2*(2 nu1 + 1) + k1*(2 nu2 + 1).
    const int k1 = config.k1();
    const int k2 = config.k2();
    const double hw = config.hbar * config.omega();
    const double u_max = e_max / hw; // dimensionless cutoff
    std::map<std::int64_t, std::vector<std::array<int, 2>>> buckets;
    for (int nu1 = 0;; ++nu1) {
        const double u1 = (nu1 + 0.5) / k1;
        if (u1 + 0.5 / k2 > u_max) break;
        for (int nu2 = 0;; ++nu2) {
            const std::int64_t key = static_cast<std::int64_t>(k2) * (2 * nu1 + 1)
                                   + static_cast<std::int64_t>(k1) * (2 * nu2 + 1);
            const double u = static_cast<double>(key) / (2.0 * k1 * k2);
            if (u > u_max) break;
            buckets[key].push_back({nu1, nu2});
        }
    }
    for (auto& [key, members] : buckets) {
        std::sort(members.begin(), members.end());
        Level level;
        level.energy = hw * static_cast<double>(key) / (2.0 * k1 * k2);
        level.degeneracy = static_cast<int>(members.size());
        level.members = members;
        if (config.regime() == Regime::Commensurate) {
            const auto d =
                decompose_quantum_numbers(members.front()[0], members.front()[1], k1, k2);
            level.irrep = std::array<int, 2>{d.lambda1, d.lambda2};
        }
        out.push_back(std::move(level));
    }
    return out;
}

double classical_dos(const OscillatorConfig& config, double energy) {
    if (energy <= 0.0) return 0.0;
    return energy / (config.hbar * config.hbar * config.omega1 * config.omega2);
}

double partition_function_closed(const OscillatorConfig& config, double beta) {
    if (!(beta > 0.0)) throw std::domain_error("beta must be positive");
    const double h = config.hbar;
    return 1.0 / (4.0 * std::sinh(h * beta * config.omega1 / 2.0)
                      * std::sinh(h * beta * config.omega2 / 2.0));
}

double partition_function_from_levels(const std::vector<Level>& levels, double beta) {
    if (!(beta > 0.0)) throw std::domain_error("beta must be positive");
    double z = 0.0;
    // Sum smallest terms first: levels are sorted ascending in energy.
    for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
        z += it->degeneracy * std::exp(-beta * it->energy);
    }
    return z;
}

} // namespace hosc
