#include "hosc/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hosc {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap_angle(double theta) {
    double x = std::fmod(theta, two_pi);
    if (x < 0.0) x += two_pi;
    return x;
}

} // namespace

double mode_energy(double q, double p, double m, double omega) {
    return p * p / (2.0 * m) + 0.5 * m * omega * omega * q * q;
}

double total_energy(const OscillatorConfig& config, const PhaseState& s) {
    return mode_energy(s.q1, s.p1, config.m, config.omega1)
         + mode_energy(s.q2, s.p2, config.m, config.omega2);
}

Matrizant2x2 matrizant(double omega, double m, double t) {
    if (!(omega > 0.0) || !(m > 0.0)) {
        throw std::domain_error("matrizant requires omega > 0 and m > 0");
    }
    const double c = std::cos(omega * t);
    const double s = std::sin(omega * t);
    return {c, s / (m * omega), -m * omega * s, c};
}

double stability_factor(double omega_other, double omega_orbit, int r) {
    if (r < 1) throw std::domain_error("repetition index must be >= 1");
    if (!(omega_other > 0.0) || !(omega_orbit > 0.0)) {
        throw std::domain_error("frequencies must be positive");
    }
    return 2.0 * std::abs(std::sin(std::numbers::pi * r * omega_other / omega_orbit));
}

double stability_factor_numeric(double omega_other, double omega_orbit, int r) {
    if (r < 1) throw std::domain_error("repetition index must be >= 1");
    const double t = r * two_pi / omega_orbit;
    const Matrizant2x2 x = matrizant(omega_other, 1.0, t);
    const double det = (x.a - 1.0) * (x.d - 1.0) - x.b * x.c;
    return std::sqrt(std::abs(det));
}

PhaseState state_at(const OscillatorConfig& config, const PhaseState& init, double t) {
    const Matrizant2x2 x1 = matrizant(config.omega1, config.m, t);
    const Matrizant2x2 x2 = matrizant(config.omega2, config.m, t);
    const auto [q1, p1] = x1.apply(init.q1, init.p1);
    const auto [q2, p2] = x2.apply(init.q2, init.p2);
    return {q1, p1, q2, p2};
}

std::vector<PhaseState> trajectory_analytic(const OscillatorConfig& config,
                                            const PhaseState& init,
                                            std::span<const double> t_grid) {
    std::vector<PhaseState> out;
    out.reserve(t_grid.size());
    for (double t : t_grid) out.push_back(state_at(config, init, t));
    return out;
}

std::vector<PhaseState> integrate_numeric(const OscillatorConfig& config,
                                          const PhaseState& init, double dt, int steps) {
    if (!(dt > 0.0)) throw std::domain_error("dt must be positive");
    if (steps < 1) throw std::domain_error("steps must be >= 1");
    const double m = config.m;
    const double k1 = m * config.omega1 * config.omega1;
    const double k2 = m * config.omega2 * config.omega2;
    std::vector<PhaseState> out;
    out.reserve(static_cast<std::size_t>(steps) + 1);
    out.push_back(init);
    PhaseState s = init;
    for (int i = 0; i < steps; ++i) {
        // kick-drift-kick
        s.p1 -= 0.5 * dt * k1 * s.q1;
        s.p2 -= 0.5 * dt * k2 * s.q2;
        s.q1 += dt * s.p1 / m;
        s.q2 += dt * s.p2 / m;
        s.p1 -= 0.5 * dt * k1 * s.q1;
        s.p2 -= 0.5 * dt * k2 * s.q2;
        out.push_back(s);
    }
    return out;
}

JVector conserved_J(const PhaseState& s, double m, double omega) {
    if (!(omega > 0.0) || !(m > 0.0)) {
        throw std::domain_error("conserved_J requires omega > 0 and m > 0");
    }
    JVector j;
    j.j1 = (s.p1 * s.p2 / m + m * omega * omega * s.q1 * s.q2) / (2.0 * omega);
    j.j2 = 0.5 * (s.q1 * s.p2 - s.q2 * s.p1);
    j.j3 = (mode_energy(s.q1, s.p1, m, omega) - mode_energy(s.q2, s.p2, m, omega))
         / (2.0 * omega);
    return j;
}

double poisson_bracket_numeric(const PhaseFunction& f, const PhaseFunction& g,
                               const PhaseState& state, double h) {
    if (h <= 0.0) {
        const double norm = std::sqrt(state.q1 * state.q1 + state.p1 * state.p1
                                      + state.q2 * state.q2 + state.p2 * state.p2);
        h = 1e-5 * (1.0 + norm);
    }
    // Central differences in each of the four coordinates.
    auto partials = [&](const PhaseFunction& fn) {
        std::array<double, 4> d{};
        PhaseState plus = state, minus = state;
        plus.q1 += h; minus.q1 -= h;
        d[0] = (fn(plus) - fn(minus)) / (2.0 * h);
        plus = minus = state;
        plus.p1 += h; minus.p1 -= h;
        d[1] = (fn(plus) - fn(minus)) / (2.0 * h);
        plus = minus = state;
        plus.q2 += h; minus.q2 -= h;
        d[2] = (fn(plus) - fn(minus)) / (2.0 * h);
        plus = minus = state;
        plus.p2 += h; minus.p2 -= h;
        d[3] = (fn(plus) - fn(minus)) / (2.0 * h);
        return d;
    };
    const auto df = partials(f);
    const auto dg = partials(g);
    return df[0] * dg[1] - df[1] * dg[0] + df[2] * dg[3] - df[3] * dg[2];
}

ModeActionAngle action_angle(double q, double p, double m, int k, double omega) {
    if (k < 1) throw std::domain_error("k must be >= 1");
    if (!(omega > 0.0) || !(m > 0.0)) {
        throw std::domain_error("action_angle requires omega > 0 and m > 0");
    }
    const double omega_mode = omega / k;
    const double energy = mode_energy(q, p, m, omega_mode);
    if (energy <= 0.0) {
        throw std::domain_error("angle undefined at the mode origin (W = 0)");
    }
    ModeActionAngle aa;
    aa.action = two_pi * energy / omega_mode;
    aa.angle = wrap_angle(std::atan2(m * omega * q, k * p));
    return aa;
}

ActionAngle action_angles(const OscillatorConfig& config, const PhaseState& state) {
    const double omega = config.omega();
    const auto m1 = action_angle(state.q1, state.p1, config.m, config.k1(), omega);
    const auto m2 = action_angle(state.q2, state.p2, config.m, config.k2(), omega);
    return {m1.action, m2.action, m1.angle, m2.angle};
}

ModeActionAngle fold(double action, double angle, int k) {
    if (k < 1) throw std::domain_error("k must be >= 1");
    if (action < 0.0) throw std::domain_error("action must be >= 0");
    return {action / k, wrap_angle(k * angle)};
}

std::array<double, 2> mode_state_from_action_angle(const ModeActionAngle& aa, double m,
                                                   double omega) {
    // E = W*omega/2pi; amplitude sqrt(2mE) in p, with theta = atan2(m w q, p).
    const double amplitude = std::sqrt(2.0 * m * aa.action * omega / two_pi);
    return {amplitude * std::sin(aa.angle) / (m * omega), amplitude * std::cos(aa.angle)};
}

std::array<double, 3> bloch_point(const PhaseState& state, double m, double omega) {
    const double energy = mode_energy(state.q1, state.p1, m, omega)
                        + mode_energy(state.q2, state.p2, m, omega);
    if (energy <= 0.0) throw std::domain_error("Bloch point undefined at zero energy");
    const JVector j = conserved_J(state, m, omega);
    const double scale = 2.0 * omega / energy;
    return {scale * j.j1, scale * j.j2, scale * j.j3};
}

std::vector<Segment> segment_decomposition(const OscillatorConfig& config,
                                           const PhaseState& init) {
    if (config.regime() == Regime::Incommensurate) {
        throw std::domain_error("segment decomposition requires a commensurate config");
    }
    const int k1 = config.k1();
    const int k2 = config.k2();
    const double omega = config.omega();
    const ActionAngle aa = action_angles(config, init); // throws at zero mode energy

    // The slice-start angles advance by exactly 2pi/k_i per slice, so the
    // cell index increments by one generator application per slice.
    const int base1 = static_cast<int>(std::floor(aa.theta1 * k1 / two_pi));
    const int base2 = static_cast<int>(std::floor(aa.theta2 * k2 / two_pi));
    const double slice = two_pi / omega;
    std::vector<Segment> out;
    out.reserve(static_cast<std::size_t>(k1) * k2);
    for (int s = 0; s < k1 * k2; ++s) {
        Segment seg;
        seg.t_begin = s * slice;
        seg.t_end = (s + 1) * slice;
        seg.cell1 = (base1 + s) % k1;
        seg.cell2 = (base2 + s) % k2;
        out.push_back(seg);
    }
    return out;
}

} // namespace hosc
