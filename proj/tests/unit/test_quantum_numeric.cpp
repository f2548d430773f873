#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "rho/errors.hpp"
#include "rho/ode.hpp"
#include "rho/quantum_numeric.hpp"
#include "rho/spectrum.hpp"

using namespace rho;
using namespace rho::numeric;

namespace {
constexpr double pi = std::numbers::pi;

ModeFunction analytic(const ModelParameters& p, int n) {
    const QuantumLevel level = energy_level(p, n);
    return [p, level](double x) { return wavefunction_value(p, level, x); };
}
}  // namespace

TEST_CASE("coordinate maps") {
    const CoordinateMap sine({-1.0, 2.0, 1.0}, GridCoordinate::sine);
    CHECK(sine.x(pi / 2) == doctest::Approx(0.5));
    CHECK(sine.x(0.0) == 0.0);
    const CoordinateMap sinh({0.5, 1.0, 1.0}, GridCoordinate::sinh);
    CHECK(sinh.x(1.0) == doctest::Approx(std::sinh(1.0) / std::sqrt(0.5)));
    const CoordinateMap linear({0.0, 1.0, 1.0}, GridCoordinate::linear);
    CHECK(linear.x(3.5) == 3.5);
    CHECK(linear.weight(0.3) == doctest::Approx(1.0));
    CHECK(linear.stiffness(0.3) == doctest::Approx(1.0));
    CHECK(linear.potential(2.0) == doctest::Approx(5.0));
    // P W = p / x' * x' / p = 1 on every map
    for (double u : {0.1, 0.7, 1.3}) {
        CHECK(sine.stiffness(u) * sine.weight(u) == doctest::Approx(1.0));
        CHECK(sinh.stiffness(u) * sinh.weight(u) == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(CoordinateMap({0.5, 1.0, 1.0}, GridCoordinate::sine), InvalidArgument);
}

TEST_CASE("default grids") {
    CHECK(default_grid({-1.0, 1.0, 1.0}).coordinate == GridCoordinate::sine);
    CHECK(default_grid({0.0, 1.0, 1.0}).coordinate == GridCoordinate::linear);
    CHECK(default_grid({1.0, 1.0, 1.0}).coordinate == GridCoordinate::sinh);
    CHECK(default_grid({1.0, 1.0, 1.0}, 300).intervals == 300);
    CHECK(domain_cap({-1.0, 2.0, 1.0}, default_grid({-1.0, 2.0, 1.0})) == doctest::Approx(0.5));
}

TEST_CASE("eigensolver: AdS levels") {
    const ModelParameters p(-1.0, 1.0, 1.0);
    const NumericalSpectrum s = sturm_liouville_eigen(p, 3, default_grid(p, 1024));
    REQUIRE(s.energies.size() == 3);
    CHECK(s.energies[0] == doctest::Approx(1.618034).epsilon(1e-6));
    CHECK(s.energies[1] == doctest::Approx(2.618034).epsilon(1e-6));
    CHECK(s.energies[2] == doctest::Approx(3.618034).epsilon(1e-6));
    for (int n = 0; n < 3; ++n) {
        CHECK(s.energies[n] == doctest::Approx(energy_level(p, n).energy).epsilon(1e-7));
        CHECK(s.estimated_error[n] < 1e-7);
        CHECK(s.energies_squared[n] == doctest::Approx(s.energies[n] * s.energies[n]).epsilon(1e-12));
    }
    CHECK(s.modes.empty());
}

TEST_CASE("eigensolver: flat oscillator") {
    const ModelParameters p(0.0, 1.0, 1.0);
    const NumericalSpectrum s = sturm_liouville_eigen(p, 2, default_grid(p, 1024));
    CHECK(s.energies_squared[0] == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(s.energies_squared[1] == doctest::Approx(4.0).epsilon(1e-8));
    CHECK(s.energies[1] == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("eigensolver: finite spectrum for lambda > 0") {
    const ModelParameters p(1.0, 1.0, 2.0);
    const NumericalSpectrum s = sturm_liouville_eigen(p, 2, default_grid(p, 1024));
    CHECK(s.below_threshold == 2);
    CHECK(s.energies[0] == doctest::Approx(2.358294471182263).epsilon(1e-8));
    CHECK(s.energies[1] == doctest::Approx(2.772121649283539).epsilon(1e-8));
    CHECK_THROWS_AS(sturm_liouville_eigen(p, 3, default_grid(p, 1024)), InvalidArgument);
    CHECK_THROWS_AS(sturm_liouville_eigen(p, 0, default_grid(p, 1024)), InvalidArgument);
}

TEST_CASE("eigensolver: coarse grid is reported") {
    const ModelParameters p(-1.0, 1.0, 1.0);
    EigenOptions strict;
    strict.tolerance = 1e-15;
    CHECK_THROWS_AS(sturm_liouville_eigen(p, 3, default_grid(p, 64), strict), ConvergenceError);
}

TEST_CASE("second-order grid convergence") {
    for (const ModelParameters& p : {ModelParameters(0.0, 1.0, 2.0), ModelParameters(1.0, 1.0, 2.0)}) {
        GridSpec grid = default_grid(p, 256);
        if (grid.coordinate == GridCoordinate::sinh) {
            grid.coordinate_cap = 12.0;
        }
        const double exact = energy_level(p, 0).energy;
        std::vector<double> errors;
        for (int intervals : {256, 512, 1024}) {
            grid.intervals = intervals;
            errors.push_back(std::abs(std::sqrt(finite_difference_energies_squared(p, 1, grid)[0]) - exact));
        }
        for (int i = 1; i < 3; ++i) {
            CHECK(std::log2(errors[i - 1] / errors[i]) == doctest::Approx(2.0).epsilon(0.1));
        }
    }
}

TEST_CASE("sampled modes") {
    const ModelParameters p(-0.5, 1.0, 2.0);
    EigenOptions options;
    options.want_modes = true;
    const NumericalSpectrum s = sturm_liouville_eigen(p, 3, default_grid(p, 512), options);
    REQUIRE(s.modes.size() == 3);
    for (int n = 0; n < 3; ++n) {
        const SampledMode& mode = s.modes[n];
        double norm = 0.0;
        for (std::size_t i = 0; i < mode.values.size(); ++i) {
            norm += mode.values[i] * mode.values[i] * mode.weights[i];
        }
        CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
        std::size_t first_positive = 0;
        while (mode.x[first_positive] <= 0.0) {
            ++first_positive;
        }
        CHECK(mode.values[first_positive] > 0.0);
        CHECK(sign_changes(mode.values) == n);
    }
}

TEST_CASE("scalar products") {
    const ModelParameters ads(-1.0, 1.0, 1.0);
    const GridSpec ads_grid = default_grid(ads);
    // unnormalized ground state against the Euler integral B(1/2, 2p+ + 1/2)
    CHECK(scalar_product(ads, analytic(ads, 0), analytic(ads, 0), ads_grid) ==
          doctest::Approx(1.291263829105004625).epsilon(1e-11));

    const ModelParameters flat(0.0, 1.0, 1.0);
    const GridSpec grid = default_grid(flat);
    const NormalizedMode u0 = normalize(flat, energy_level(flat, 0), grid);
    const NormalizedMode u1 = normalize(flat, energy_level(flat, 1), grid);
    CHECK(std::abs(scalar_product(flat, u0, u1, grid)) < 1e-14);
    CHECK(scalar_product(flat, u0, u0, grid) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(u0.norm_factor == doctest::Approx(std::pow(pi, -0.25)).epsilon(1e-12));

    const ModelParameters heavy(0.0, 1.0, 2.0);
    CHECK(normalize(heavy, energy_level(heavy, 0), default_grid(heavy)).norm_factor ==
          doctest::Approx(std::pow(2.0 / pi, 0.25)).epsilon(1e-12));
}

TEST_CASE("normalization is idempotent") {
    for (const ModelParameters& p : {ModelParameters(-1.0, 1.0, 1.0), ModelParameters(0.5, 1.0, 2.0)}) {
        const GridSpec grid = default_grid(p);
        const NormalizedMode mode = normalize(p, energy_level(p, 1), grid);
        CHECK(normalization_factor(p, mode, grid) == doctest::Approx(1.0).epsilon(1e-11));
    }
}

TEST_CASE("normalization is grid independent") {
    const ModelParameters ds(1.0, 1.0, 2.0);
    const double coarse = normalize(ds, energy_level(ds, 0), default_grid(ds, 1024)).norm_factor;
    const double fine = normalize(ds, energy_level(ds, 0), default_grid(ds, 2048)).norm_factor;
    CHECK(std::isfinite(coarse));
    CHECK(std::abs(coarse - fine) < 1e-8 * coarse);

    const ModelParameters ads(-0.5, 1.0, 2.0);
    const double a = normalize(ads, energy_level(ads, 0), default_grid(ads, 1024)).norm_factor;
    const double b = normalize(ads, energy_level(ads, 0), default_grid(ads, 2048)).norm_factor;
    CHECK(std::abs(a - b) < 1e-10 * a);

    CHECK_THROWS_AS(normalize(ds, QuantumLevel{5, 2, 0.5, -0.78, 3.0}, default_grid(ds)), NotNormalizable);
}

TEST_CASE("Gram matrices") {
    const ModelParameters ads(-1.0, 1.0, 1.0);
    const GridSpec grid = default_grid(ads);
    std::vector<NormalizedMode> modes;
    for (int n = 0; n < 4; ++n) {
        modes.push_back(normalize(ads, energy_level(ads, n), grid));
    }
    const Matrix g = gram_matrix(ads, modes, grid);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            CHECK(std::abs(g[i][j] - (i == j ? 1.0 : 0.0)) < 1e-8);
        }
    }
    // odd integrand: mixed parity vanishes to rounding
    CHECK(std::abs(g[0][1]) < 1e-14);
    CHECK(std::abs(g[2][3]) < 1e-14);

    const Matrix single = gram_matrix(ads, std::span(modes).first(1), grid);
    REQUIRE(single.size() == 1);
    CHECK(single[0][0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("node counts") {
    const ModelParameters ads(-1.0, 1.0, 1.0);
    const GridSpec grid = default_grid(ads, 512);
    CHECK(node_count(ads, energy_level(ads, 0), grid) == 0);
    CHECK(node_count(ads, energy_level(ads, 3), grid) == 3);
    const ModelParameters flat(0.0, 1.0, 1.0);
    CHECK(node_count(flat, energy_level(flat, 2), default_grid(flat, 512)) == 2);
    CHECK_THROWS_AS(node_count(ads, energy_level(ads, 3), default_grid(ads, 32)), InvalidArgument);

    const std::vector<double> with_zeros{1.0, 0.0, -2.0, 0.0, 0.0, -1.0, 3.0};
    CHECK(sign_changes(with_zeros) == 2);
    CHECK(sign_changes(std::vector<double>{}) == 0);
}

TEST_CASE("continuum modes have divergent norms") {
    const ModelParameters p(1.0, 1.0, 2.0);
    const std::vector<double> caps{10.0, 100.0, 1000.0};
    const GrowthReport scattering = norm_divergence_check(p, 3.0, 0.0, caps);
    CHECK(scattering.verdict == GrowthVerdict::divergent);
    CHECK(scattering.monotone);
    CHECK_FALSE(scattering.plateau);
    REQUIRE(scattering.norms.size() >= 3);
    CHECK(scattering.norms[0] == doctest::Approx(6.279).epsilon(1e-3));
    CHECK(scattering.norms[1] == doctest::Approx(11.525).epsilon(1e-3));
    CHECK(scattering.norms[2] == doctest::Approx(15.117).epsilon(1e-3));

    const GrowthReport odd = norm_divergence_check(p, 3.0, 0.5, caps);
    CHECK(odd.verdict == GrowthVerdict::divergent);

    const GrowthReport bound = norm_growth(p, energy_level(p, 0), caps);
    CHECK(bound.verdict == GrowthVerdict::normalizable);
    CHECK(bound.plateau);

    CHECK_THROWS_AS(norm_divergence_check(p, 2.5, 0.0, caps), InvalidArgument);
}

TEST_CASE("near-threshold continuum mode extends its caps") {
    const ModelParameters p(1.0, 1.0, 2.0);
    const double e = *continuum_threshold(p) * (1.0 + 1e-3);
    const std::vector<double> caps{10.0, 100.0, 1000.0};
    const GrowthReport r = norm_divergence_check(p, e, 0.0, caps);
    CHECK(r.monotone);
    CHECK(r.verdict != GrowthVerdict::normalizable);
}

TEST_CASE("continuum mode solves the Klein-Gordon equation") {
    // (p U')' = (V - E^2) w U with p = sqrt(1 + lambda w^2 x^2), w = 1/p
    const ModelParameters mp(1.0, 1.0, 2.0);
    const double e = 3.0;
    auto rhs = [&](double x, const ode::State& y) {
        const double q = 1.0 + x * x;
        const double pp = std::sqrt(q);
        const double v = 4.0 * (1.0 + 2.0 * x * x) / q;
        return ode::State{y[1] / pp, (v - e * e) * y[0] / pp};
    };
    ode::StepControl control;
    control.rtol = 1e-12;
    control.atol = 1e-14;
    ode::DormandPrince even(rhs, 0.0, {1.0, 0.0}, control);
    ode::DormandPrince odd(rhs, 0.0, {0.0, 1.0}, control);
    for (double x : {0.5, 2.0, 10.0}) {
        CHECK(even.advance(x)[0] == doctest::Approx(scattering_state_value(mp, e, 0.0, x)).epsilon(1e-8));
        CHECK(odd.advance(x)[0] == doctest::Approx(scattering_state_value(mp, e, 0.5, x)).epsilon(1e-8));
    }
}
