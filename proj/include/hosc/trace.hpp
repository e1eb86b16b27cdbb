#pragma once

#include "hosc/oscillator.hpp"
#include "hosc/series.hpp"
#include "hosc/symmetry.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace hosc {

/// Gaussian regularization of the delta combs: every oscillatory term of
/// frequency alpha (radians per unit energy) is damped by exp(-alpha^2 w^2/2),
/// which is the exact convolution identity cos * Gaussian(w). Series are
/// truncated once the damping drops below damping_eps; incommensurate
/// stability divisors below divisor_floor abort with a diagnostic.
struct SmoothingSpec {
    double width = 0.02;
    double damping_eps = 1e-12;
    double divisor_floor = 1e-8;
};

/// One harmonic of a periodic-orbit series:
///   coefficient * E^energy_power * cos(alpha E + phase).
/// The phase offset is accumulated in exact rational turns before the final
/// float conversion.
struct TraceTerm {
    double coefficient = 0.0;
    int energy_power = 0; // 0 or 1
    double alpha = 0.0;   // radians per unit energy
    double phase = 0.0;   // radians
    long long repetition = 0;

    double damping(double width) const;
    double value(double energy) const;
    double smoothed_value(double energy, double width) const;
    /// Analytic integral of the damped term from 0 to `energy`.
    double smoothed_integral(double energy, double width) const;
};

/// Raised when the requested formula does not apply to the config's regime.
class RegimeError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when an incommensurate stability divisor falls below the floor;
/// names the offending repetition index.
class SmallDivisorError : public std::runtime_error {
public:
    SmallDivisorError(std::string message, int repetition_index)
        : std::runtime_error(std::move(message)), repetition(repetition_index) {}
    int repetition;
};

// Maslov indices ------------------------------------------------------------

/// Isolated normal mode of the incommensurate oscillator: 2r + 1 + 2[r w_o/w].
int maslov_incommensurate(int r, double omega_orbit, double omega_other);

/// Family orbit of the isotropic oscillator: 4r - 1.
int maslov_isotropic(int r);

/// Reduced family orbit of the commensurate oscillator: 2r(k1+k2)/k1k2 - 1,
/// an exact rational (integer only when k1 k2 divides 2r(k1+k2)).
Fraction maslov_commensurate_reduced(int r, int k1, int k2);

// Building blocks of the family trace formula, exposed for tests -----------

/// Period of a family orbit, T = 2 pi / omega.
double family_orbit_period(double omega);
/// Volume swept by the symmetry group: the surface 4 pi of the Bloch sphere.
double bloch_sphere_volume();
/// Magnitude |J| = E / 2 omega of the conserved vector.
double j_vector_magnitude(double energy, double omega);
/// Action of the family orbit, W = 2 pi E / omega.
double family_orbit_action(double energy, double omega);

// Term generators -----------------------------------------------------------

std::vector<TraceTerm> isotropic_terms(const OscillatorConfig& config,
                                       const SmoothingSpec& smoothing);
/// mode is 1 or 2; the other mode supplies the stability divisor.
std::vector<TraceTerm> incommensurate_mode_terms(const OscillatorConfig& config, int mode,
                                                 const SmoothingSpec& smoothing);
std::vector<TraceTerm> isolated_mode_terms(const OscillatorConfig& config, int mode,
                                           const SmoothingSpec& smoothing);
std::vector<TraceTerm> reduced_terms(const OscillatorConfig& config, const Irrep& irrep,
                                     const SmoothingSpec& smoothing);
std::vector<TraceTerm> family_terms(const OscillatorConfig& config,
                                    const SmoothingSpec& smoothing);
std::vector<TraceTerm> one_d_terms(double omega, double hbar,
                                   const SmoothingSpec& smoothing);

double sum_terms(std::span<const TraceTerm> terms, double energy, double width);

// Smoothed oscillating densities ---------------------------------------------

double delta_rho_incommensurate(const OscillatorConfig& config, double energy,
                                const SmoothingSpec& smoothing);
double delta_rho_isotropic(const OscillatorConfig& config, double energy,
                           const SmoothingSpec& smoothing);
/// Sum of both isolated-orbit series (the k1 <-> k2 pair).
double delta_rho_isolated(const OscillatorConfig& config, double energy,
                          const SmoothingSpec& smoothing);
double delta_rho_reduced(const OscillatorConfig& config, const Irrep& irrep, double energy,
                         const SmoothingSpec& smoothing);
double delta_rho_family(const OscillatorConfig& config, double energy,
                        const SmoothingSpec& smoothing);
/// Oscillating part of the 1D density of states.
double delta_rho_1d(double omega, double hbar, double energy,
                    const SmoothingSpec& smoothing);
double classical_dos_1d(double omega, double hbar);

/// Which oscillating contributions enter a total: used by the CLI to filter.
struct TermSelection {
    bool classical = true;
    bool family = true;   // family/continuous-symmetry series
    bool isolated = true; // isolated periodic orbits
};

/// Everything needed to evaluate or integrate the semiclassical total:
/// the classical coefficient (density = coeff * E for E > 0) plus all
/// oscillatory terms of the regime.
struct TotalTerms {
    double classical_coefficient = 0.0;
    std::vector<TraceTerm> oscillatory;
    std::string provenance;
};

TotalTerms total_terms(const OscillatorConfig& config, const SmoothingSpec& smoothing,
                       const TermSelection& selection = {});

/// Smoothed semiclassical density at one energy (0 for E <= 0).
double total_dos_value(const OscillatorConfig& config, double energy,
                       const SmoothingSpec& smoothing);

/// Smoothed semiclassical density of states over a grid; the provenance
/// records which terms contributed.
DosSeries total_dos(const OscillatorConfig& config, std::span<const double> grid,
                    const SmoothingSpec& smoothing, const TermSelection& selection = {});

} // namespace hosc
