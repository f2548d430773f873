#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "rho/errors.hpp"
#include "rho/quadrature.hpp"
#include "rho/tridiagonal.hpp"

using namespace rho;

namespace {
constexpr double pi = std::numbers::pi;

linalg::SymmetricTridiagonal laplacian(std::size_t n) {
    return {std::vector<double>(n, 2.0), std::vector<double>(n - 1, -1.0)};
}
}  // namespace

TEST_CASE("Gauss-Legendre rules") {
    for (int order : {1, 2, 5, 20, 40}) {
        const quad::GaussLegendreRule rule = quad::gauss_legendre(order);
        REQUIRE(rule.nodes.size() == static_cast<std::size_t>(order));
        double sum = 0.0;
        for (double w : rule.weights) {
            CHECK(w > 0.0);
            sum += w;
        }
        CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
        // exact for degree 2 order - 1
        const int degree = 2 * order - 2;
        double moment = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            moment += rule.weights[i] * std::pow(rule.nodes[i], degree);
        }
        CHECK(moment == doctest::Approx(2.0 / (degree + 1)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(quad::gauss_legendre(0), InvalidArgument);
}

TEST_CASE("panel integration") {
    const quad::Integral sine = quad::integrate_panels([](double x) { return std::sin(x); }, 0.0, pi, {});
    CHECK(sine.value == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(sine.abs_value == doctest::Approx(2.0).epsilon(1e-14));

    // algebraic endpoint singularity needs grading
    auto root = [](double x) { return 1.0 / std::sqrt(1.0 - x * x); };
    const double plain = quad::integrate_panels(root, -1.0, 1.0, {20, 8, 0}).value;
    const double graded = quad::integrate_panels(root, -1.0, 1.0, {20, 8, 40}).value;
    CHECK(std::abs(graded - pi) < 1e-7);
    CHECK(std::abs(graded - pi) < std::abs(plain - pi));
}

TEST_CASE("adaptive integration") {
    const quad::AdaptiveResult r =
        quad::integrate_adaptive([](double x) { return std::exp(-x * x); }, -8.0, 8.0);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(std::sqrt(pi)).epsilon(1e-13));
    CHECK(r.estimated_error < 1e-11);

    quad::AdaptiveOptions hopeless;
    hopeless.start = {2, 1, 0};
    hopeless.max_doublings = 1;
    const quad::AdaptiveResult bad =
        quad::integrate_adaptive([](double x) { return std::cos(40.0 * x); }, 0.0, 10.0, hopeless);
    CHECK_FALSE(bad.converged);
}

TEST_CASE("Sturm count and bisection") {
    const std::size_t n = 50;
    const auto t = laplacian(n);
    const auto values = linalg::lowest_eigenvalues(t, 5);
    for (int k = 0; k < 5; ++k) {
        const double exact = 2.0 - 2.0 * std::cos((k + 1) * pi / (n + 1));
        CHECK(values[k] == doctest::Approx(exact).epsilon(1e-13));
    }
    CHECK(linalg::count_below(t, 0.0) == 0);
    CHECK(linalg::count_below(t, 4.0) == static_cast<int>(n));
    CHECK(linalg::count_below(t, 0.5 * (values[2] + values[3])) == 3);
    const linalg::Interval g = linalg::gershgorin_bounds(t);
    CHECK(g.lo <= 0.0);
    CHECK(g.hi >= 4.0);
    CHECK_THROWS_AS(linalg::lowest_eigenvalues(t, 0), InvalidArgument);
    CHECK_THROWS_AS(linalg::lowest_eigenvalues(t, 51), InvalidArgument);
    CHECK_THROWS_AS(linalg::count_below({{1.0, 2.0}, {}}, 0.0), InvalidArgument);
}

TEST_CASE("inverse iteration eigenvectors") {
    const std::size_t n = 64;
    const auto t = laplacian(n);
    const auto values = linalg::lowest_eigenvalues(t, 3);
    for (int k = 0; k < 3; ++k) {
        const auto v = linalg::eigenvector(t, values[k]);
        REQUIRE(v.size() == n);
        // sin((k+1) pi j / (n+1)), up to sign and normalization
        double dot = 0.0, norm = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double exact = std::sin((k + 1) * pi * (j + 1.0) / (n + 1));
            dot += exact * v[j];
            norm += exact * exact;
        }
        CHECK(std::abs(dot) / std::sqrt(norm) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("bisection on a random matrix matches the characteristic count") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    linalg::SymmetricTridiagonal t;
    for (int i = 0; i < 30; ++i) {
        t.diag.push_back(3.0 * u(rng));
    }
    for (int i = 0; i < 29; ++i) {
        t.off.push_back(u(rng));
    }
    const auto values = linalg::lowest_eigenvalues(t, 30);
    for (int k = 0; k + 1 < 30; ++k) {
        CHECK(values[k] <= values[k + 1]);
        CHECK(linalg::count_below(t, 0.5 * (values[k] + values[k + 1])) == k + 1);
    }
    // residual of the eigenpair
    const auto v = linalg::eigenvector(t, values[7]);
    double residual = 0.0;
    for (std::size_t i = 0; i < 30; ++i) {
        double r = t.diag[i] * v[i] - values[7] * v[i];
        if (i > 0) r += t.off[i - 1] * v[i - 1];
        if (i + 1 < 30) r += t.off[i] * v[i + 1];
        residual = std::max(residual, std::abs(r));
    }
    CHECK(residual < 1e-12);
}
