#pragma once

#include "hosc/rational.hpp"

#include <array>
#include <optional>
#include <vector>

namespace hosc {

enum class Regime { Isotropic, Commensurate, Incommensurate };

/// Frequency-ratio classification of a 2D harmonic oscillator. For the
/// commensurate case k1*omega1 = k2*omega2 = omega with gcd(k1,k2) = 1;
/// the isotropic case is the normalized form of k1 = k2 = 1.
struct FrequencyClass {
    Regime regime = Regime::Isotropic;
    int k1 = 1;
    int k2 = 1;
    double omega = 0.0; // common frequency k1*omega1; 0 for incommensurate

    static FrequencyClass isotropic(double omega);
    static FrequencyClass commensurate(int k1, int k2, double omega);
    static FrequencyClass incommensurate();
};

/// Physical parameters of the oscillator; the single source of masses,
/// frequencies and hbar for every other module.
struct OscillatorConfig {
    double m = 1.0;
    double hbar = 1.0;
    double omega1 = 1.0;
    double omega2 = 1.0;
    FrequencyClass freq_class;

    static OscillatorConfig isotropic(double omega, double m = 1.0, double hbar = 1.0);
    static OscillatorConfig commensurate(int k1, int k2, double omega, double m = 1.0,
                                         double hbar = 1.0);
    static OscillatorConfig incommensurate(double omega1, double omega2, double m = 1.0,
                                           double hbar = 1.0);

    Regime regime() const { return freq_class.regime; }
    int k1() const { return freq_class.k1; }
    int k2() const { return freq_class.k2; }
    /// Common frequency omega = k1*omega1 (commensurate/isotropic only).
    double omega() const;
    /// Reference frequency for dimensionless energies: omega for the
    /// commensurate/isotropic regimes, omega1 otherwise.
    double omega_ref() const;
    double hbar_omega_ref() const { return hbar * omega_ref(); }
};

/// One exact eigenenergy with its merged degeneracy, the contributing
/// quantum numbers (nu1, nu2), and the shared cyclic-group label in the
/// commensurate case.
struct Level {
    double energy = 0.0;
    int degeneracy = 0;
    std::vector<std::array<int, 2>> members;
    std::optional<std::array<int, 2>> irrep;
};

/// Euclidean split nu = n*k + lambda, 0 <= lambda < k, for both modes.
struct QuantumDecomposition {
    int n1 = 0;
    int lambda1 = 0;
    int n2 = 0;
    int lambda2 = 0;
};

/// Classify a frequency pair: isotropic when |omega1/omega2 - 1| <= tol,
/// else commensurate when a continued-fraction convergent k2/k1 with
/// k1 <= max_denominator matches the ratio within tol, else incommensurate.
FrequencyClass classify_ratio(double omega1, double omega2, double tol,
                              int max_denominator);

/// All exact levels with E <= e_max, merged and sorted ascending; members
/// are annotated with the irrep label in the commensurate case.
std::vector<Level> exact_levels(const OscillatorConfig& config, double e_max);

QuantumDecomposition decompose_quantum_numbers(int nu1, int nu2, int k1, int k2);

/// Commensurate eigenenergy hbar*omega*(n1 + n2 + l1/k1 + l2/k2 + (k1+k2)/2k1k2).
double commensurate_energy(int n1, int n2, int lambda1, int lambda2,
                           const OscillatorConfig& config);

/// Same energy in exact dimensionless form (units of hbar*omega).
Fraction commensurate_energy_fraction(int n1, int n2, int lambda1, int lambda2,
                                      int k1, int k2);

/// Thomas-Fermi density of states E/(hbar^2 omega1 omega2), zero for E <= 0.
double classical_dos(const OscillatorConfig& config, double energy);

/// Closed-form partition function 1/(4 sinh(hb w1/2) sinh(hb w2/2)).
double partition_function_closed(const OscillatorConfig& config, double beta);

/// Boltzmann sum over an explicit level list. The truncation remainder is
/// bounded by g_max * exp(-beta*E_max) / (1 - exp(-beta*Delta)) with E_max
/// the largest enumerated energy and Delta the smallest level spacing above
/// it; callers pick e_max so this bound is below their tolerance.
double partition_function_from_levels(const std::vector<Level>& levels, double beta);

} // namespace hosc
