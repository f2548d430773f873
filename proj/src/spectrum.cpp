#include "rho/spectrum.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "rho/errors.hpp"
#include "rho/special_functions.hpp"

namespace rho {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kMaxListedLevels = 1'000'000;

struct Roots {
    double plus;
    double minus;
};

// 4p^2 - 2p - mu^2 = 0; the negative root from Vieta to avoid cancellation.
Roots exponent_roots(double mu) {
    const double plus = 0.25 * (1.0 + std::sqrt(1.0 + 4.0 * mu * mu));
    return {plus, -mu * mu / (4.0 * plus)};
}

void require_level_shape(const QuantumLevel& level) {
    const bool odd = level.n % 2 != 0;
    if (level.n < 0 || level.nprime < 0 || level.s != (odd ? 0.5 : 0.0) ||
        2 * level.nprime + (odd ? 1 : 0) != level.n) {
        throw InvalidArgument("inconsistent quantum numbers: need n = 2(n' + s)");
    }
}

void require_inside(const ModelParameters& params, double x) {
    if (!spatial_domain(params).contains(x)) {
        std::ostringstream msg;
        msg << "x = " << x << " lies outside the spatial domain";
        throw OutsideDomain(msg.str());
    }
}

}  // namespace

SpectralParameters spectral_parameters(const ModelParameters& params, double energy) {
    if (!(energy > 0.0) || !std::isfinite(energy)) {
        throw InvalidArgument("energy must be positive and finite");
    }
    const double lambda = params.lambda();
    if (lambda == 0.0) {
        return {true, kNaN, kNaN, kNaN, kNaN, kNaN};
    }
    const double scale = lambda * params.omega();
    const double epsilon = energy / scale;
    const double mu = params.mass() / scale;
    const double nu = 0.25 * ((1.0 + lambda) * mu * mu - lambda * epsilon * epsilon);
    const Roots roots = exponent_roots(mu);
    return {false, epsilon, mu, nu, roots.plus, roots.minus};
}

double exponent_branch(const ModelParameters& params) {
    if (params.lambda() == 0.0) {
        throw InvalidArgument("no exponent branch at lambda = 0");
    }
    const Roots roots = exponent_roots(params.mu());
    return params.lambda() > 0.0 ? roots.minus : roots.plus;
}

std::optional<int> max_principal_number(const ModelParameters& params) {
    if (params.lambda() <= 0.0) {
        return std::nullopt;
    }
    const double bound = -2.0 * exponent_roots(params.mu()).minus;
    if (bound > static_cast<double>(std::numeric_limits<int>::max())) {
        throw InvalidArgument("n_max exceeds the representable range");
    }
    double n = std::floor(bound);
    // n = -2p- itself sits exactly on the threshold and is not normalizable
    if (n == bound) {
        n -= 1.0;
    }
    return static_cast<int>(n);
}

std::optional<double> continuum_threshold(const ModelParameters& params) {
    if (params.lambda() <= 0.0) {
        return std::nullopt;
    }
    return params.mass() * std::sqrt(1.0 + 1.0 / params.lambda());
}

QuantumLevel energy_level(const ModelParameters& params, int n) {
    if (n < 0) {
        throw InvalidArgument("principal quantum number must be >= 0");
    }
    const double m = params.mass();
    const double w = params.omega();
    const double lambda = params.lambda();
    QuantumLevel level{n, n / 2, n % 2 == 0 ? 0.0 : 0.5, kNaN, 0.0};
    const double nd = static_cast<double>(n);
    if (lambda == 0.0) {
        level.energy = std::sqrt(m * m + 2.0 * m * w * (nd + 0.5));
        return level;
    }
    if (const auto n_max = max_principal_number(params); n_max && n > *n_max) {
        std::ostringstream msg;
        msg << "level n = " << n << " exceeds n_max = " << *n_max << ": not normalizable";
        throw NotNormalizable(msg.str());
    }
    level.p = exponent_branch(params);
    const double e2 = m * m - lambda * w * w * (4.0 * level.p * (nd + 0.5) + nd * nd);
    level.energy = std::sqrt(e2);
    return level;
}

DiscreteSpectrum discrete_spectrum(const ModelParameters& params, int max_levels) {
    if (max_levels < 1) {
        throw InvalidArgument("max_levels must be >= 1");
    }
    DiscreteSpectrum spectrum{{}, max_principal_number(params), continuum_threshold(params),
                              params.lambda() <= 0.0};
    const int count = spectrum.n_max ? *spectrum.n_max + 1 : max_levels;
    if (count > kMaxListedLevels) {
        throw InvalidArgument("spectrum too large to list; query levels individually");
    }
    spectrum.levels.reserve(static_cast<std::size_t>(count));
    for (int n = 0; n < count; ++n) {
        spectrum.levels.push_back(energy_level(params, n));
    }
    return spectrum;
}

double wavefunction_value(const ModelParameters& params, const QuantumLevel& level, double x) {
    require_level_shape(level);
    require_inside(params, x);
    const double lambda = params.lambda();
    const double w2x2 = params.omega() * params.omega() * x * x;
    const double odd_factor = level.s == 0.5 ? x : 1.0;
    const double c = 2.0 * level.s + 0.5;

    if (lambda == 0.0) {
        const double z = params.mass() * params.omega() * x * x;
        return std::exp(-0.5 * z) * odd_factor * special::hyp1f1_polynomial(level.nprime, c, z);
    }

    const double p = level.p;
    const double b = 2.0 * p + 2.0 * level.s + level.nprime;
    const double q = conformal_factor(params, x);
    const double y = -lambda * w2x2;
    if (std::abs(y) <= 1.0 || level.nprime == 0) {
        return std::pow(q, p) * odd_factor * special::hyp2f1_polynomial(level.nprime, b, c, y);
    }
    // |y| > 1 (lambda > 0 far out): F = y^n' G(1/y) with G evaluated by
    // Horner in 1/y; the large powers q^p |y|^n' are combined in log space.
    const auto coef = special::hyp2f1_polynomial_coefficients(level.nprime, b, c);
    const double inv_y = 1.0 / y;
    double g = 0.0;
    for (double t : coef) {
        g = g * inv_y + t;
    }
    const double sign = level.nprime % 2 == 0 ? 1.0 : -1.0;  // y < 0 here
    return sign * std::exp(p * std::log(q) + level.nprime * std::log(-y)) * odd_factor * g;
}

double scattering_state_value(const ModelParameters& params, double energy, double s, double x) {
    const auto threshold = continuum_threshold(params);
    if (!threshold) {
        throw InvalidArgument("scattering states exist only for lambda > 0");
    }
    if (s != 0.0 && s != 0.5) {
        throw InvalidArgument("s must be 0 or 1/2");
    }
    if (!(energy > *threshold)) {
        std::ostringstream msg;
        msg << "energy " << energy << " is not above the continuum threshold " << *threshold;
        throw InvalidArgument(msg.str());
    }
    const SpectralParameters sp = spectral_parameters(params, energy);
    if (!(sp.nu < 0.0)) {
        // E within rounding of the threshold: degenerate double root
        throw InvalidArgument("energy too close to the continuum threshold");
    }
    const double lambda = params.lambda();
    const double w2x2 = params.omega() * params.omega() * x * x;
    const double q = 1.0 + lambda * w2x2;
    const double odd_factor = s == 0.5 ? x : 1.0;
    const double f = special::hyp2f1_conjugate_pair(sp.p_minus + s, std::sqrt(-sp.nu), 2.0 * s + 0.5,
                                                    -lambda * w2x2);
    return std::pow(q, sp.p_minus) * odd_factor * f;
}

double nr_limit_wavefunction(const ModelParameters& params, int n, double x) {
    const double mw = params.mass() * params.omega();
    return std::exp(-0.5 * mw * x * x) * special::hermite(n, std::sqrt(mw) * x);
}

}  // namespace rho
