#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hosc/dynamics.hpp"
#include "hosc/series.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace hosc;

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

TEST_CASE("matrizant at characteristic times") {
    const auto full = matrizant(1.0, 1.0, two_pi);
    CHECK(full.a == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(full.b == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    CHECK(full.c == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    CHECK(full.d == doctest::Approx(1.0).epsilon(1e-14));

    const auto quarter = matrizant(1.0, 1.0, std::numbers::pi / 2.0);
    CHECK(quarter.a == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    CHECK(quarter.b == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(quarter.c == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(quarter.d == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));

    const auto two = matrizant(2.0, 1.0, std::numbers::pi);
    CHECK(two.a == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(two.b == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
}

TEST_CASE("matrizant determinant stays 1") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> omega(0.1, 10.0);
    std::uniform_real_distribution<double> mass(0.2, 5.0);
    std::uniform_real_distribution<double> time(0.0, 50.0);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        worst = std::max(worst, std::abs(matrizant(omega(rng), mass(rng), time(rng)).det() - 1.0));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("stability factor closed form and numeric determinant") {
    // frozen from the numeric determinant oracle
    CHECK(stability_factor(1.6180339887, 1.0, 1) == doctest::Approx(1.8640648477400594).epsilon(1e-12));
    CHECK(stability_factor_numeric(1.6180339887, 1.0, 1)
          == doctest::Approx(1.8640648477400594).epsilon(1e-10));

    // 3:2 orbit along q1 at its second repetition joins the Lissajous family
    CHECK(stability_factor(1.5, 1.0, 2) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

    // half-integer r*ratio gives the maximal value 2
    CHECK(stability_factor(0.25, 1.0, 2) == doctest::Approx(2.0).epsilon(1e-14));

    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> omega(0.2, 5.0);
    std::uniform_int_distribution<int> rep(1, 20);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double wo = omega(rng), wb = omega(rng);
        const int r = rep(rng);
        worst = std::max(worst,
                         std::abs(stability_factor(wo, wb, r) - stability_factor_numeric(wo, wb, r)));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("analytic trajectories") {
    const auto config = OscillatorConfig::commensurate(3, 2, 1.0);

    // normal-mode initial condition never leaves the q1 axis
    const PhaseState axis{1.0, 0.5, 0.0, 0.0};
    for (const auto& s : trajectory_analytic(config, axis, make_grid(0.0, 20.0, 64))) {
        CHECK(s.q2 == 0.0);
        CHECK(s.p2 == 0.0);
    }

    // a generic orbit closes after T = 2 pi k1 k2 / omega
    const PhaseState init{0.4, 0.3, -0.2, 0.5};
    const double period = two_pi * 6.0;
    const PhaseState back = state_at(config, init, period);
    CHECK(back.q1 == doctest::Approx(init.q1).epsilon(1e-12));
    CHECK(back.p1 == doctest::Approx(init.p1).epsilon(1e-12));
    CHECK(back.q2 == doctest::Approx(init.q2).epsilon(1e-12));
    CHECK(back.p2 == doctest::Approx(init.p2).epsilon(1e-12));

    // energy is identical along the samples
    const double e0 = total_energy(config, init);
    for (const auto& s : trajectory_analytic(config, init, make_grid(0.0, period, 50))) {
        CHECK(total_energy(config, s) == doctest::Approx(e0).epsilon(1e-13));
    }

    // isotropic: every orbit closes after one period
    const auto iso = OscillatorConfig::isotropic(1.0);
    const PhaseState there = state_at(iso, init, two_pi);
    CHECK(there.q1 == doctest::Approx(init.q1).epsilon(1e-13));
    CHECK(there.p2 == doctest::Approx(init.p2).epsilon(1e-13));
}

TEST_CASE("leapfrog integration against the analytic oracle") {
    const auto config = OscillatorConfig::isotropic(1.0);
    const PhaseState init{0.8, 0.0, 0.0, 0.6};

    // one period at dt = T/1000: the symplectic phase lag stays below 1.5e-5
    // relative (measured 1.03e-5 = 2 pi (w dt)^2 / 24)
    const int steps = 1000;
    const auto path = integrate_numeric(config, init, two_pi / steps, steps);
    const PhaseState& last = path.back();
    const double scale = std::sqrt(init.q1 * init.q1 + init.p1 * init.p1
                                   + init.q2 * init.q2 + init.p2 * init.p2);
    const double err = std::sqrt(std::pow(last.q1 - init.q1, 2) + std::pow(last.p1 - init.p1, 2)
                                 + std::pow(last.q2 - init.q2, 2) + std::pow(last.p2 - init.p2, 2));
    CHECK(err / scale < 1.5e-5);
    CHECK(err / scale > 1e-6); // the lag is real, not roundoff

    // J2 is conserved exactly by the discrete map
    const int fine_steps = 10000;
    const auto fine = integrate_numeric(config, init, two_pi / fine_steps, fine_steps);
    const double j2_0 = conserved_J(init, 1.0, 1.0).j2;
    double j2_drift = 0.0;
    for (const auto& s : fine) {
        j2_drift = std::max(j2_drift, std::abs(conserved_J(s, 1.0, 1.0).j2 - j2_0));
    }
    CHECK(j2_drift < 1e-8);

    // all three J components stay put for a desk-scale state at dt = T/1e4
    const PhaseState small{0.3, 0.2, 0.25, -0.15};
    const JVector j0 = conserved_J(small, 1.0, 1.0);
    double drift = 0.0;
    for (const auto& s : integrate_numeric(config, small, two_pi / fine_steps, fine_steps)) {
        const JVector j = conserved_J(s, 1.0, 1.0);
        drift = std::max({drift, std::abs(j.j1 - j0.j1), std::abs(j.j2 - j0.j2),
                          std::abs(j.j3 - j0.j3)});
    }
    CHECK(drift < 1e-8);

    // energy error is O(dt^2): halving dt cuts the drift by ~4
    auto max_energy_drift = [&](int n) {
        double worst = 0.0;
        for (const auto& s : integrate_numeric(config, init, two_pi / n, n)) {
            worst = std::max(worst, std::abs(total_energy(config, s) - total_energy(config, init)));
        }
        return worst;
    };
    const double coarse_drift = max_energy_drift(500);
    const double halved_drift = max_energy_drift(1000);
    CHECK(coarse_drift / halved_drift == doctest::Approx(4.0).epsilon(0.05));

    // oscillatory, not secular: ten periods do not grow the envelope
    double long_drift = 0.0;
    for (const auto& s : integrate_numeric(config, init, two_pi / 1000, 10000)) {
        long_drift = std::max(long_drift, std::abs(total_energy(config, s) - total_energy(config, init)));
    }
    CHECK(long_drift < 2.0 * halved_drift);

    // zero state stays zero
    for (const auto& s : integrate_numeric(config, PhaseState{}, 0.01, 100)) {
        CHECK(s.q1 == 0.0);
        CHECK(s.p2 == 0.0);
    }
}

TEST_CASE("conserved J vector values") {
    const JVector north = conserved_J({1.0, 0.0, 0.0, 0.0}, 1.0, 1.0);
    CHECK(north.j1 == 0.0);
    CHECK(north.j2 == 0.0);
    CHECK(north.j3 == doctest::Approx(0.25).epsilon(1e-15));
    const double casimir = north.j1 * north.j1 + north.j2 * north.j2 + north.j3 * north.j3;
    CHECK(casimir == doctest::Approx(1.0 / 16.0).epsilon(1e-15)); // (E/2w)^2 with E=1/2

    const JVector diag = conserved_J({0.0, 1.0, 0.0, 1.0}, 1.0, 1.0);
    CHECK(diag.j1 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(diag.j2 == 0.0);
    CHECK(diag.j3 == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));

    const JVector zero = conserved_J({0.0, 0.0, 0.0, 0.0}, 1.0, 1.0);
    CHECK(zero.j1 == 0.0);
    CHECK(zero.j2 == 0.0);
    CHECK(zero.j3 == 0.0);
}

TEST_CASE("numeric Poisson brackets reproduce the su(2) algebra") {
    const auto j1 = [](const PhaseState& s) { return conserved_J(s, 1.0, 1.0).j1; };
    const auto j2 = [](const PhaseState& s) { return conserved_J(s, 1.0, 1.0).j2; };
    const auto j3 = [](const PhaseState& s) { return conserved_J(s, 1.0, 1.0).j3; };

    const PhaseState probe{1.0, 0.0, 0.0, 0.0};
    CHECK(poisson_bracket_numeric(j1, j2, probe, 1e-5)
          == doctest::Approx(0.25).epsilon(1e-8)); // equals J3 there
    CHECK(poisson_bracket_numeric(j2, j2, probe, 1e-5) == doctest::Approx(0.0).scale(1.0));

    const auto h = [](const PhaseState& s) {
        return mode_energy(s.q1, s.p1, 1.0, 1.0) + mode_energy(s.q2, s.p2, 1.0, 1.0);
    };
    std::mt19937_64 rng(98765);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const PhaseState s{coord(rng), coord(rng), coord(rng), coord(rng)};
        CHECK(std::abs(poisson_bracket_numeric(j1, j2, s, 1e-5) - j3(s)) < 1e-7);
        CHECK(std::abs(poisson_bracket_numeric(j2, j3, s, 1e-5) - j1(s)) < 1e-7);
        CHECK(std::abs(poisson_bracket_numeric(j3, j1, s, 1e-5) - j2(s)) < 1e-7);
        CHECK(std::abs(poisson_bracket_numeric(h, j2, s)) < 1e-8);
        CHECK(std::abs(poisson_bracket_numeric(h, j1, s)) < 1e-8);
    }
}

TEST_CASE("action-angle coordinates") {
    const auto turning = action_angle(1.0, 0.0, 1.0, 1, 1.0);
    CHECK(turning.action == doctest::Approx(std::numbers::pi).epsilon(1e-14));
    CHECK(turning.angle == doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-14));

    const auto through = action_angle(0.0, 1.0, 1.0, 1, 1.0);
    CHECK(through.angle == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(action_angle(0.0, 0.0, 1.0, 1, 1.0), std::domain_error);

    // the angle advances uniformly at omega_mode along the analytic flow
    const auto config = OscillatorConfig::commensurate(3, 2, 1.0);
    const PhaseState init{0.4, 0.3, -0.2, 0.5};
    const double theta0 = action_angles(config, init).theta1;
    double previous = theta0;
    double unwrapped = theta0;
    const int samples = 200;
    const double t_max = 12.0;
    for (int i = 1; i <= samples; ++i) {
        const double t = t_max * i / samples;
        const double theta = action_angles(config, state_at(config, init, t)).theta1;
        double delta = theta - previous;
        if (delta < 0.0) delta += two_pi;
        unwrapped += delta;
        previous = theta;
        CHECK(unwrapped - theta0 == doctest::Approx(config.omega1 * t).epsilon(1e-9));
    }
}

TEST_CASE("folding transformation") {
    const auto folded = fold(std::numbers::pi, std::numbers::pi / 2.0, 2);
    CHECK(folded.action == doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-15));
    CHECK(folded.angle == doctest::Approx(std::numbers::pi).epsilon(1e-15));

    // angles shifted by full cells land on the same folded angle
    for (int k : {2, 3, 5}) {
        for (int lambda = 0; lambda < k; ++lambda) {
            const double theta = 0.7;
            const auto a = fold(1.3, theta, k);
            const auto b = fold(1.3, theta + two_pi * lambda / k, k);
            CHECK(b.angle == doctest::Approx(a.angle).epsilon(1e-12));
            CHECK(b.action == doctest::Approx(a.action).epsilon(1e-15));
        }
    }

    const auto identity = fold(2.0, 1.1, 1);
    CHECK(identity.action == 2.0);
    CHECK(identity.angle == doctest::Approx(1.1).epsilon(1e-15));

    // round trip through the folded mode state preserves the mode energy
    const auto aa = action_angle(0.3, -0.4, 1.0, 3, 1.0);
    const auto f = fold(aa.action, aa.angle, 3);
    const auto [q, p] = mode_state_from_action_angle(f, 1.0, 1.0);
    CHECK(mode_energy(q, p, 1.0, 1.0) == doctest::Approx(f.action / two_pi).epsilon(1e-12));
}

TEST_CASE("folded angles advance at the common frequency") {
    // both folded modes complete a turn in 2 pi / omega
    const auto config = OscillatorConfig::commensurate(5, 4, 1.0);
    const PhaseState init{0.4, 0.3, -0.2, 0.5};
    const auto aa0 = action_angles(config, init);
    const double f0_1 = fold(aa0.W1, aa0.theta1, 5).angle;
    const double f0_2 = fold(aa0.W2, aa0.theta2, 4).angle;
    for (double t : {0.37, 1.1, 2.9, 5.83}) {
        const auto aat = action_angles(config, state_at(config, init, t));
        const double expected = std::fmod(config.omega() * t, two_pi);
        for (const auto& [folded, base] :
             {std::pair{fold(aat.W1, aat.theta1, 5), f0_1}, {fold(aat.W2, aat.theta2, 4), f0_2}}) {
            double advance = std::fmod(folded.angle - base, two_pi);
            if (advance < 0.0) advance += two_pi;
            CHECK(advance == doctest::Approx(expected).epsilon(1e-9));
        }
    }
}

TEST_CASE("Bloch sphere mapping") {
    const auto north = bloch_point({1.0, 0.0, 0.0, 0.0}, 1.0, 1.0);
    CHECK(north[0] == doctest::Approx(0.0).scale(1.0));
    CHECK(north[1] == doctest::Approx(0.0).scale(1.0));
    CHECK(north[2] == doctest::Approx(1.0).epsilon(1e-14));

    // equal mode energies sit on the equator
    const auto equator = bloch_point({0.5, 0.1, 0.5, -0.1}, 1.0, 1.0);
    CHECK(equator[2] == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));

    const auto xpole = bloch_point({0.0, 1.0, 0.0, 1.0}, 1.0, 1.0);
    CHECK(xpole[0] == doctest::Approx(1.0).epsilon(1e-14));

    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const PhaseState s{coord(rng), coord(rng), coord(rng), coord(rng)};
        const auto r = bloch_point(s, 1.0, 1.0);
        CHECK(r[0] * r[0] + r[1] * r[1] + r[2] * r[2] == doctest::Approx(1.0).epsilon(1e-12));
    }

    CHECK_THROWS_AS(bloch_point({0.0, 0.0, 0.0, 0.0}, 1.0, 1.0), std::domain_error);
}

TEST_CASE("segment decomposition of a commensurate period") {
    const PhaseState init{0.4, 0.3, -0.2, 0.5};

    const auto segments32 = segment_decomposition(OscillatorConfig::commensurate(3, 2, 1.0), init);
    CHECK(segments32.size() == 6);
    const auto segments54 = segment_decomposition(OscillatorConfig::commensurate(5, 4, 1.0), init);
    CHECK(segments54.size() == 20);
    const auto whole = segment_decomposition(OscillatorConfig::isotropic(1.0), init);
    CHECK(whole.size() == 1);

    // consecutive slices differ by one generator application
    for (std::size_t i = 1; i < segments54.size(); ++i) {
        CHECK(segments54[i].cell1 == (segments54[i - 1].cell1 + 1) % 5);
        CHECK(segments54[i].cell2 == (segments54[i - 1].cell2 + 1) % 4);
    }
    // slices tile one full period in equal steps of 2 pi / omega
    CHECK(segments32.front().t_begin == 0.0);
    CHECK(segments32.back().t_end == doctest::Approx(two_pi * 6.0).epsilon(1e-14));
    for (const auto& s : segments32) {
        CHECK(s.t_end - s.t_begin == doctest::Approx(two_pi).epsilon(1e-14));
    }

    CHECK_THROWS_AS(segment_decomposition(OscillatorConfig::incommensurate(1.0, 1.618), init),
                    std::domain_error);
    CHECK_THROWS_AS(
        segment_decomposition(OscillatorConfig::commensurate(3, 2, 1.0), PhaseState{1.0, 0.0, 0.0, 0.0}),
        std::domain_error);
}
