#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "rho/classical.hpp"
#include "rho/errors.hpp"

using namespace rho;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("effective frequency") {
    CHECK(effective_frequency({-1.0, 1.0, 1.0}, 3.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(effective_frequency({-1.0, 1.0, 1.0}, 50.0) == doctest::Approx(1.0).epsilon(1e-15));
    for (double lambda : {-2.0, -0.3, 0.0, 0.4, 5.0}) {
        CHECK(effective_frequency({lambda, 1.7, 2.0}, 2.0) == doctest::Approx(1.7).epsilon(1e-15));
    }
    CHECK(effective_frequency({1.0, 1.0, 1.0}, std::sqrt(2.0)) == 0.0);
    CHECK_THROWS_AS(effective_frequency({0.0, 1.0, 1.0}, 0.99), ForbiddenEnergy);
    CHECK_THROWS_AS(effective_frequency({1.0, 1.0, 2.0}, 3.0), OpenMotion);
}

TEST_CASE("amplitude") {
    CHECK(amplitude({-1.0, 1.0, 1.0}, 2.0) == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-15));
    CHECK(amplitude({-1.0, 1.0, 1.0}, 2.0) < horizon_radius({-1.0, 1.0, 1.0}));
    CHECK(amplitude({0.0, 1.0, 1.0}, std::sqrt(2.0)) == doctest::Approx(1.0).epsilon(1e-15));
    for (double lambda : {-1.0, 0.0, 0.5}) {
        CHECK(amplitude({lambda, 1.0, 1.3}, 1.3) == 0.0);
    }
    CHECK_THROWS_AS(amplitude({1.0, 1.0, 1.0}, std::sqrt(2.0)), OpenMotion);
    CHECK_THROWS_AS(amplitude({1.0, 1.0, 2.0}, 3.0), OpenMotion);
    CHECK_THROWS_AS(amplitude({1.0, 1.0, 2.0}, 1.0), ForbiddenEnergy);
}

TEST_CASE("amplitude stays inside the horizon for every energy") {
    const ModelParameters p(-0.5, 1.0, 1.0);
    for (double e : {1.5, 10.0, 1e3, 1e6}) {
        CHECK(amplitude(p, e) < horizon_radius(p));
    }
}

TEST_CASE("motion classification") {
    CHECK(classify_motion({1.0, 1.0, 2.0}, 2.5) == MotionClass::oscillatory);
    CHECK(classify_motion({1.0, 1.0, 2.0}, 3.0) == MotionClass::open);
    CHECK(classify_motion({1.0, 1.0, 1.0}, std::sqrt(2.0)) == MotionClass::threshold);
    CHECK(classify_motion({-0.5, 1.0, 1.0}, 100.0) == MotionClass::oscillatory);
    CHECK(classify_motion({0.0, 1.0, 1.0}, 1e8) == MotionClass::oscillatory);
    CHECK_THROWS_AS(classify_motion({0.0, 1.0, 1.0}, 0.5), ForbiddenEnergy);
    CHECK(to_string(MotionClass::open) == "open");
    CHECK(to_string(MotionClass::oscillatory) == "oscillatory");
    CHECK(to_string(MotionClass::threshold) == "threshold");
}

TEST_CASE("closed-form orbits") {
    const ClassicalOrbit flat = orbit_from_energy({0.0, 1.0, 1.0}, std::sqrt(2.0));
    CHECK(flat.omega_eff == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(flat.amplitude == doctest::Approx(1.0).epsilon(1e-15));
    for (double t : {0.3, 1.0, 2.5}) {
        CHECK(trajectory_position(flat, t) == doctest::Approx(std::sin(t / std::sqrt(2.0))));
    }
    CHECK(trajectory_position(flat, pi * std::sqrt(2.0)) == doctest::Approx(0.0).scale(1.0));

    const ClassicalOrbit ads = orbit_from_energy({-1.0, 2.0, 1.0}, 1.5, 1.0);
    CHECK(ads.amplitude == doctest::Approx(0.372678).epsilon(1e-6));
    CHECK(ads.omega_eff == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(trajectory_position(ads, 1.0) == 0.0);
    CHECK(trajectory_position(ads, 1.0 + pi / (2.0 * ads.omega_eff)) ==
          doctest::Approx(ads.amplitude).epsilon(1e-15));
    CHECK(trajectory_position(ads, 1.7) == doctest::Approx(ads.amplitude * std::sin(1.4)));

    const ClassicalOrbit rest = orbit_from_energy({0.5, 1.0, 1.0}, 1.0, 3.0);
    for (double t : {-4.0, 0.0, 17.0}) {
        CHECK(trajectory_position(rest, t) == 0.0);
    }
    CHECK_THROWS_AS(orbit_from_energy({1.0, 1.0, 2.0}, 3.0), OpenMotion);
}

TEST_CASE("conserved energy from a state") {
    CHECK(energy_from_state({0.3, 1.0, 2.0}, 0.0, 0.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(energy_from_state({0.0, 1.0, 1.0}, 1.0, 0.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(energy_from_state({-1.0, 1.0, 1.0}, 0.0, std::sqrt(3.0) / 2.0) ==
          doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(energy_from_state({0.0, 1.0, 1.0}, 0.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(energy_from_state({-1.0, 1.0, 1.0}, 1.0, 0.0), OutsideDomain);
}

TEST_CASE("Omega a = maximal velocity, randomized") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double lambda = -2.0 + 4.0 * u(rng);
        const double mass = 0.1 + 3.0 * u(rng);
        const ModelParameters p(lambda, 0.2 + 3.0 * u(rng), mass);
        double hi = 5.0;
        if (lambda > 0.0) {
            hi = std::sqrt(1.0 + 1.0 / lambda);
        }
        const double e = mass * (1.0 + (hi - 1.0) * 0.999 * u(rng));
        const ClassicalOrbit orbit = orbit_from_energy(p, e);
        CHECK(orbit.omega_eff * orbit.amplitude ==
              doctest::Approx(std::sqrt(1.0 - (mass / e) * (mass / e))).epsilon(1e-12).scale(1.0));
        // the turning point has zero velocity and the same energy
        if (orbit.amplitude > 0.0) {
            CHECK(energy_from_state(p, orbit.amplitude, 0.0) == doctest::Approx(e).epsilon(1e-12));
        }
    }
}

TEST_CASE("geodesic integration reproduces the AdS orbit") {
    const ModelParameters p(-1.0, 1.0, 1.0);
    const GeodesicPath path = integrate_geodesic(p, 0.0, std::sqrt(3.0) / 2.0, 4.0 * pi, 0.01);
    const ClassicalOrbit orbit = orbit_from_energy(p, 2.0);
    double worst = 0.0;
    for (const PathSample& s : path.samples) {
        worst = std::max(worst, std::abs(s.x - trajectory_position(orbit, s.t)));
    }
    CHECK(worst < 1e-6);
    CHECK(path.energy == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(path.energy_drift < 1e-9);
    CHECK(path.samples.front().t == 0.0);
    CHECK(path.samples.back().t == doctest::Approx(4.0 * pi).epsilon(1e-3));
}

TEST_CASE("geodesic integration: rest and open motion") {
    const GeodesicPath rest = integrate_geodesic({0.5, 1.0, 1.0}, 0.0, 0.0, 5.0, 0.5);
    for (const PathSample& s : rest.samples) {
        CHECK(s.x == 0.0);
    }
    CHECK(rest.samples.size() == 11);

    const ModelParameters p(1.0, 1.0, 1.0);
    const GeodesicPath open = integrate_geodesic(p, 0.0, 0.9, 10.0, 0.05);
    CHECK(open.energy == doctest::Approx(1.0 / std::sqrt(1.0 - 0.81)));
    CHECK(classify_motion(p, open.energy) == MotionClass::open);
    for (std::size_t i = 1; i < open.samples.size(); ++i) {
        CHECK(open.samples[i].x > open.samples[i - 1].x);
    }
    CHECK(open.energy_drift < 1e-9);
}

TEST_CASE("geodesic acceleration vanishes at the origin and restores for lambda <= 0") {
    for (double lambda : {-1.0, -0.3, 0.0, 0.7}) {
        const ModelParameters p(lambda, 1.0, 1.0);
        CHECK(geodesic_acceleration(p, 0.0, 0.4) == 0.0);
        CHECK(geodesic_acceleration(p, 0.2, 0.0) < 0.0);
    }
}

TEST_CASE("geodesic integration input errors") {
    const ModelParameters p(-1.0, 1.0, 1.0);
    CHECK_THROWS_AS(integrate_geodesic(p, 0.0, 0.5, 1.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(integrate_geodesic(p, 0.0, 0.5, -1.0, 0.1), InvalidArgument);
    CHECK_THROWS_AS(integrate_geodesic(p, 1.5, 0.0, 1.0, 0.1), HorizonApproach);
    GeodesicOptions tight;
    tight.horizon_guard = 0.5;
    CHECK_THROWS_AS(integrate_geodesic(p, 0.0, 0.99, 10.0, 0.1, tight), HorizonApproach);
}
