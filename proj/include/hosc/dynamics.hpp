#pragma once

#include "hosc/oscillator.hpp"

#include <array>
#include <functional>
#include <span>
#include <vector>

namespace hosc {

/// A point (q1, p1, q2, p2) in four-dimensional phase space.
struct PhaseState {
    double q1 = 0.0;
    double p1 = 0.0;
    double q2 = 0.0;
    double p2 = 0.0;
};

/// 2x2 linear propagator of one oscillator mode; symplectic, det = 1.
struct Matrizant2x2 {
    double a = 1.0, b = 0.0;
    double c = 0.0, d = 1.0;

    double det() const { return a * d - b * c; }
    std::array<double, 2> apply(double q, double p) const {
        return {a * q + b * p, c * q + d * p};
    }
};

/// Action-angle pair of a single mode.
struct ModeActionAngle {
    double action = 0.0;
    double angle = 0.0; // radians in [0, 2pi)
};

/// Action-angle coordinates of both modes.
struct ActionAngle {
    double W1 = 0.0, W2 = 0.0;
    double theta1 = 0.0, theta2 = 0.0;
};

/// Conserved su(2) generators of the isotropic oscillator.
struct JVector {
    double j1 = 0.0, j2 = 0.0, j3 = 0.0;
};

/// One time slice of a commensurate period with its elementary-cell label.
struct Segment {
    double t_begin = 0.0;
    double t_end = 0.0;
    int cell1 = 0;
    int cell2 = 0;
};

using PhaseFunction = std::function<double(const PhaseState&)>;

double mode_energy(double q, double p, double m, double omega);
double total_energy(const OscillatorConfig& config, const PhaseState& state);

Matrizant2x2 matrizant(double omega, double m, double t);

/// Closed form 2|sin(pi r omega_other/omega_orbit)| of the stability
/// determinant; zero marks membership of an orbit family.
double stability_factor(double omega_other, double omega_orbit, int r);

/// Companion debug path: sqrt|det(X_other(r T_orbit) - 1)| evaluated from
/// the matrizant itself.
double stability_factor_numeric(double omega_other, double omega_orbit, int r);

std::vector<PhaseState> trajectory_analytic(const OscillatorConfig& config,
                                            const PhaseState& init,
                                            std::span<const double> t_grid);

PhaseState state_at(const OscillatorConfig& config, const PhaseState& init, double t);

/// Leapfrog (velocity Verlet) integration, used as an independent oracle
/// for the conservation tests. Returns steps+1 states including the
/// initial one.
std::vector<PhaseState> integrate_numeric(const OscillatorConfig& config,
                                          const PhaseState& init, double dt, int steps);

JVector conserved_J(const PhaseState& state, double m, double omega);

/// Central-difference Poisson bracket sum_i (df/dq_i dg/dp_i - df/dp_i dg/dq_i).
/// h <= 0 selects the default step 1e-5 * (1 + |state|).
double poisson_bracket_numeric(const PhaseFunction& f, const PhaseFunction& g,
                               const PhaseState& state, double h = 0.0);

/// Action W = 2 pi E_mode / omega_mode and full-branch angle
/// atan2(m*omega*q, k*p), with omega = k * omega_mode.
ModeActionAngle action_angle(double q, double p, double m, int k, double omega);

/// Action-angle coordinates of both modes of a commensurate/isotropic config.
ActionAngle action_angles(const OscillatorConfig& config, const PhaseState& state);

/// Folding map (W, theta) -> (W/k, k*theta mod 2pi); k copies of the
/// original angle interval land on one isotropic-oscillator torus.
ModeActionAngle fold(double action, double angle, int k);

/// Reconstruct the mode state of an isotropic oscillator (frequency omega)
/// from folded action-angle coordinates.
std::array<double, 2> mode_state_from_action_angle(const ModeActionAngle& aa, double m,
                                                   double omega);

/// Unit Bloch-sphere point (2 omega / E) * (J1, J2, J3).
std::array<double, 3> bloch_point(const PhaseState& state, double m, double omega);

/// Partition one fundamental period T = 2 pi k1 k2 / omega into k1*k2 equal
/// slices labeled by the elementary cell (floor(theta_i k_i / 2pi)) at the
/// slice start; consecutive slices differ by one generator application.
std::vector<Segment> segment_decomposition(const OscillatorConfig& config,
                                           const PhaseState& init);

} // namespace hosc
