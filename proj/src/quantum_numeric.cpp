#include "rho/quantum_numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rho/errors.hpp"
#include "rho/quadrature.hpp"
#include "rho/tridiagonal.hpp"

namespace rho::numeric {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;
// The sine grid and its quadrature stop this far short of u = pi/2, where
// R sin(u) would round onto the horizon.
constexpr double kHorizonGap = 1e-7;
constexpr double kTailAmplitude = 1e-6;  // |U| at the cut relative to its peak
constexpr int kMaxCapExtensions = 8;
constexpr double kMaxSinhCap = 300.0;  // keeps sinh(u) finite

GridCoordinate natural_coordinate(const ModelParameters& params) {
    if (params.lambda() < 0.0) {
        return GridCoordinate::sine;
    }
    return params.lambda() > 0.0 ? GridCoordinate::sinh : GridCoordinate::linear;
}

double node(const GridSpec& grid, int i) {
    const double h = 2.0 * grid.coordinate_cap / grid.intervals;
    return -grid.coordinate_cap + i * h;
}

linalg::SymmetricTridiagonal assemble(const CoordinateMap& map, const GridSpec& grid) {
    const int n = grid.intervals - 1;
    const double h = 2.0 * grid.coordinate_cap / grid.intervals;
    const double inv_h2 = 1.0 / (h * h);
    std::vector<double> sqrt_w(static_cast<std::size_t>(n));
    linalg::SymmetricTridiagonal t{std::vector<double>(static_cast<std::size_t>(n)),
                                   std::vector<double>(static_cast<std::size_t>(n - 1))};
    for (int i = 0; i < n; ++i) {
        sqrt_w[i] = std::sqrt(map.weight(node(grid, i + 1)));
    }
    for (int i = 0; i < n; ++i) {
        const double u = node(grid, i + 1);
        const double p_left = map.stiffness(u - 0.5 * h);
        const double p_right = map.stiffness(u + 0.5 * h);
        // W^(-1/2) A W^(-1/2) turns the generalized problem into a standard one
        t.diag[i] = ((p_left + p_right) * inv_h2 + map.potential(u)) / (sqrt_w[i] * sqrt_w[i]);
        if (i + 1 < n) {
            t.off[i] = -p_right * inv_h2 / (sqrt_w[i] * sqrt_w[i + 1]);
        }
    }
    return t;
}

void require_grid(const ModelParameters& params, const GridSpec& grid) {
    if (grid.intervals < 64) {
        throw InvalidArgument("grid needs at least 64 intervals");
    }
    if (!(grid.coordinate_cap > 0.0) || !std::isfinite(grid.coordinate_cap)) {
        throw InvalidArgument("grid cap must be positive and finite");
    }
    if (grid.coordinate == GridCoordinate::sine && grid.coordinate_cap > kHalfPi) {
        throw InvalidArgument("sine grid cap cannot exceed pi/2");
    }
    (void)CoordinateMap(params, grid.coordinate);
}

// Largest |U| within the outer 2% of nodes relative to the global maximum.
double tail_ratio(const std::vector<double>& u) {
    const std::size_t n = u.size();
    const std::size_t edge = std::max<std::size_t>(2, n / 50);
    double peak = 0.0;
    double tail = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = std::abs(u[i]);
        peak = std::max(peak, a);
        if (i < edge || i + edge >= n) {
            tail = std::max(tail, a);
        }
    }
    return peak > 0.0 ? tail / peak : 0.0;
}

std::vector<double> mode_from_vector(const CoordinateMap& map, const GridSpec& grid,
                                     const std::vector<double>& v) {
    std::vector<double> u(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        u[i] = v[i] / std::sqrt(map.weight(node(grid, static_cast<int>(i) + 1)));
    }
    return u;
}

double threshold_squared(const ModelParameters& params) {
    const auto thr = continuum_threshold(params);
    return *thr * *thr;
}

}  // namespace

CoordinateMap::CoordinateMap(const ModelParameters& params, GridCoordinate coordinate)
    : params_(params), coordinate_(coordinate), scale_(1.0) {
    const double lambda = params.lambda();
    switch (coordinate) {
        case GridCoordinate::linear:
            if (lambda < 0.0) {
                throw InvalidArgument("linear grid needs lambda >= 0");
            }
            break;
        case GridCoordinate::sinh:
            if (!(lambda > 0.0)) {
                throw InvalidArgument("sinh grid needs lambda > 0");
            }
            scale_ = params.omega() * std::sqrt(lambda);
            break;
        case GridCoordinate::sine:
            if (!(lambda < 0.0)) {
                throw InvalidArgument("sine grid needs lambda < 0");
            }
            scale_ = params.omega() * std::sqrt(-lambda);
            break;
    }
}

double CoordinateMap::x(double u) const {
    switch (coordinate_) {
        case GridCoordinate::linear:
            return u;
        case GridCoordinate::sinh:
            return std::sinh(u) / scale_;
        case GridCoordinate::sine:
            return std::sin(u) / scale_;
    }
    return u;
}

double CoordinateMap::stiffness(double u) const {
    if (coordinate_ == GridCoordinate::linear) {
        return std::sqrt(conformal_factor(params_, u));
    }
    return scale_;
}

double CoordinateMap::weight(double u) const {
    if (coordinate_ == GridCoordinate::linear) {
        return 1.0 / std::sqrt(conformal_factor(params_, u));
    }
    return 1.0 / scale_;
}

double CoordinateMap::potential(double u) const {
    const double lambda = params_.lambda();
    const double m2 = params_.mass() * params_.mass();
    switch (coordinate_) {
        case GridCoordinate::linear: {
            const double w2x2 = params_.omega() * params_.omega() * u * u;
            const double q = 1.0 + lambda * w2x2;
            return m2 * (1.0 + (1.0 + lambda) * w2x2) / (q * std::sqrt(q));
        }
        case GridCoordinate::sinh: {
            // V = m^2 (1+lambda)/lambda - (m^2/lambda) sech^2 u
            const double sech = 1.0 / std::cosh(u);
            return m2 / lambda * ((1.0 + lambda) - sech * sech) / scale_;
        }
        case GridCoordinate::sine: {
            const double s = std::sin(u);
            const double c = std::cos(u);
            // (1+lambda) w^2 x^2 = (1+lambda)/(-lambda) sin^2 u
            return m2 * (1.0 + (1.0 + lambda) / (-lambda) * s * s) / (c * c) / scale_;
        }
    }
    return 0.0;
}

GridSpec default_grid(const ModelParameters& params, int intervals) {
    GridSpec grid;
    grid.intervals = intervals;
    grid.coordinate = natural_coordinate(params);
    switch (grid.coordinate) {
        case GridCoordinate::sine:
            grid.coordinate_cap = kHalfPi;
            break;
        case GridCoordinate::linear:
            grid.coordinate_cap = 10.0 / std::sqrt(params.mass() * params.omega());
            break;
        case GridCoordinate::sinh:
            grid.coordinate_cap = 10.0;
            break;
    }
    return grid;
}

double domain_cap(const ModelParameters& params, const GridSpec& grid) {
    switch (grid.coordinate) {
        case GridCoordinate::linear:
            return grid.coordinate_cap;
        case GridCoordinate::sinh:
            return std::sinh(grid.coordinate_cap) / (params.omega() * std::sqrt(params.lambda()));
        case GridCoordinate::sine:
            return horizon_radius(params);
    }
    return grid.coordinate_cap;
}

std::vector<double> finite_difference_energies_squared(const ModelParameters& params, int k,
                                                       const GridSpec& grid) {
    require_grid(params, grid);
    const CoordinateMap map(params, grid.coordinate);
    return linalg::lowest_eigenvalues(assemble(map, grid), k);
}

NumericalSpectrum sturm_liouville_eigen(const ModelParameters& params, int k, const GridSpec& grid,
                                        const EigenOptions& options) {
    require_grid(params, grid);
    if (k < 1) {
        throw InvalidArgument("need k >= 1 eigenvalues");
    }
    const CoordinateMap map(params, grid.coordinate);
    const bool has_threshold = params.lambda() > 0.0;

    GridSpec coarse = grid;
    for (int ext = 0;; ++ext) {
        const linalg::SymmetricTridiagonal t = assemble(map, coarse);
        if (has_threshold) {
            const int below = linalg::count_below(t, threshold_squared(params));
            if (k > below) {
                std::ostringstream msg;
                msg << "requested " << k << " levels but only " << below
                    << " eigenvalues lie below the continuum threshold";
                throw InvalidArgument(msg.str());
            }
        }
        if (!options.extend_cap || coarse.coordinate == GridCoordinate::sine) {
            break;
        }
        const double top = linalg::lowest_eigenvalues(t, k).back();
        const auto u = mode_from_vector(map, coarse, linalg::eigenvector(t, top));
        if (tail_ratio(u) <= kTailAmplitude) {
            break;
        }
        if (ext == kMaxCapExtensions ||
            (coarse.coordinate == GridCoordinate::sinh && 2.0 * coarse.coordinate_cap > kMaxSinhCap)) {
            throw ConvergenceError("bound-state tail does not decay within the truncation limit");
        }
        coarse.coordinate_cap *= 2.0;
        coarse.intervals *= 2;
    }

    GridSpec mid = coarse;
    mid.intervals *= 2;
    GridSpec fine = mid;
    fine.intervals *= 2;
    const linalg::SymmetricTridiagonal t_fine = assemble(map, fine);
    const auto e0 = linalg::lowest_eigenvalues(assemble(map, coarse), k);
    const auto e1 = linalg::lowest_eigenvalues(assemble(map, mid), k);
    const auto e2 = linalg::lowest_eigenvalues(t_fine, k);

    NumericalSpectrum out;
    out.grid = coarse;
    if (has_threshold) {
        out.below_threshold = linalg::count_below(t_fine, threshold_squared(params));
    }
    for (int j = 0; j < k; ++j) {
        const double r_fine = (4.0 * e2[j] - e1[j]) / 3.0;
        const double r_coarse = (4.0 * e1[j] - e0[j]) / 3.0;
        const double energy = std::sqrt(r_fine);
        const double err = std::abs(energy - std::sqrt(r_coarse));
        if (err > options.tolerance * energy) {
            std::ostringstream msg;
            msg << "grid too coarse: level " << j << " error estimate " << err / energy
                << " exceeds " << options.tolerance;
            throw ConvergenceError(msg.str());
        }
        out.energies.push_back(energy);
        out.energies_squared.push_back(r_fine);
        out.raw_energies.push_back(std::sqrt(e2[j]));
        out.estimated_error.push_back(err);
    }

    if (options.want_modes) {
        const double h = 2.0 * fine.coordinate_cap / fine.intervals;
        for (int j = 0; j < k; ++j) {
            SampledMode mode;
            auto values = mode_from_vector(map, fine, linalg::eigenvector(t_fine, e2[j]));
            const double scale = 1.0 / std::sqrt(h);
            double sign = 0.0;
            for (int i = 1; i < fine.intervals; ++i) {
                const double u = node(fine, i);
                mode.x.push_back(map.x(u));
                mode.weights.push_back(map.weight(u) * h);
                if (sign == 0.0 && mode.x.back() > 0.0 && values[i - 1] != 0.0) {
                    sign = values[i - 1] > 0.0 ? 1.0 : -1.0;
                }
            }
            if (sign == 0.0) {
                sign = 1.0;
            }
            for (double& v : values) {
                v *= sign * scale;
            }
            mode.values = std::move(values);
            out.modes.push_back(std::move(mode));
        }
    }
    return out;
}

double scalar_product(const ModelParameters& params, const ModeFunction& u, const ModeFunction& v,
                      const GridSpec& grid, const QuadratureOptions& options) {
    require_grid(params, grid);
    const CoordinateMap map(params, grid.coordinate);
    auto integrand = [&](double t) {
        const double x = map.x(t);
        return u(x) * v(x) * map.weight(t);
    };
    quad::AdaptiveOptions adaptive;
    adaptive.rel_tol = options.rel_tol;
    adaptive.max_doublings = 12;

    auto checked = [&](double a, double b, quad::PanelOptions start) {
        adaptive.start = start;
        const auto r = quad::integrate_adaptive(integrand, a, b, adaptive);
        if (!r.converged) {
            throw ConvergenceError("scalar product quadrature did not converge");
        }
        return r;
    };

    if (grid.coordinate == GridCoordinate::sine) {
        const double edge = kHalfPi - kHorizonGap;
        return checked(-edge, edge, {20, 16, 30}).value;
    }

    double cap = grid.coordinate_cap;
    auto core = checked(-cap, cap, {20, 16, 0});
    double value = core.value;
    double scale = core.abs_value;
    for (int ext = 0; ext <= kMaxCapExtensions; ++ext) {
        if (grid.coordinate == GridCoordinate::sinh && 2.0 * cap > kMaxSinhCap) {
            break;
        }
        const auto left = checked(-2.0 * cap, -cap, {20, 16, 0});
        const auto right = checked(cap, 2.0 * cap, {20, 16, 0});
        const double tail = left.value + right.value;
        value += tail;
        scale += left.abs_value + right.abs_value;
        cap *= 2.0;
        if (left.abs_value + right.abs_value <= options.rel_tol * scale) {
            return value;
        }
    }
    throw ConvergenceError("scalar product tail bound violated: integrand does not decay");
}

double NormalizedMode::operator()(double x) const {
    return norm_factor * wavefunction_value(params, level, x);
}

NormalizedMode normalize(const ModelParameters& params, const QuantumLevel& level,
                         const GridSpec& grid) {
    if (const auto n_max = max_principal_number(params); n_max && level.n > *n_max) {
        throw NotNormalizable("level lies above n_max and is not square integrable");
    }
    auto mode = [&](double x) { return wavefunction_value(params, level, x); };
    const double norm = scalar_product(params, mode, mode, grid);
    return NormalizedMode{params, level, 1.0 / std::sqrt(norm)};
}

double normalization_factor(const ModelParameters& params, const ModeFunction& u,
                            const GridSpec& grid) {
    const double norm = scalar_product(params, u, u, grid);
    if (!(norm > 0.0)) {
        throw NotNormalizable("mode has zero norm");
    }
    return 1.0 / std::sqrt(norm);
}

Matrix gram_matrix(const ModelParameters& params, std::span<const NormalizedMode> modes,
                   const GridSpec& grid) {
    const std::size_t n = modes.size();
    Matrix g(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const NormalizedMode& a = modes[i];
            const NormalizedMode& b = modes[j];
            g[i][j] = scalar_product(
                params, [&](double x) { return a(x); }, [&](double x) { return b(x); }, grid);
            g[j][i] = g[i][j];
        }
    }
    return g;
}

int sign_changes(std::span<const double> values) {
    int changes = 0;
    double last = 0.0;
    for (double v : values) {
        if (v == 0.0) {
            continue;
        }
        if (last != 0.0 && (v > 0.0) != (last > 0.0)) {
            ++changes;
        }
        last = v;
    }
    return changes;
}

int node_count(const ModelParameters& params, const QuantumLevel& level, const GridSpec& grid) {
    require_grid(params, grid);
    const CoordinateMap map(params, grid.coordinate);
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(grid.intervals));
    for (int i = 1; i < grid.intervals; ++i) {
        values.push_back(wavefunction_value(params, level, map.x(node(grid, i))));
    }
    return sign_changes(values);
}

namespace {

GrowthReport growth_report(const ModelParameters& params, const ModeFunction& mode,
                           std::span<const double> caps, const GrowthOptions& options) {
    if (params.lambda() < 0.0) {
        throw InvalidArgument("norm growth is defined on unbounded domains (lambda >= 0)");
    }
    if (caps.size() < 2) {
        throw InvalidArgument("need at least two caps");
    }
    for (std::size_t i = 0; i < caps.size(); ++i) {
        if (!(caps[i] > 0.0) || (i > 0 && !(caps[i] > caps[i - 1]))) {
            throw InvalidArgument("caps must be positive and strictly increasing");
        }
    }
    const GridCoordinate coordinate = natural_coordinate(params);
    const CoordinateMap map(params, coordinate);
    const double k = coordinate == GridCoordinate::sinh
                         ? params.omega() * std::sqrt(params.lambda())
                         : 1.0;
    auto to_u = [&](double x) { return coordinate == GridCoordinate::sinh ? std::asinh(k * x) : x; };
    auto integrand = [&](double t) {
        const double v = mode(map.x(t));
        return 2.0 * v * v * map.weight(t);  // even in t
    };

    GrowthReport report;
    double total = 0.0;
    double u_prev = 0.0;
    auto add_cap = [&](double cap) {
        const double u = to_u(cap);
        const int panels = std::max(8, static_cast<int>(std::ceil((u - u_prev) / 0.25)));
        quad::AdaptiveOptions adaptive;
        adaptive.start = {20, panels, 0};
        adaptive.rel_tol = 1e-12;
        const auto r = quad::integrate_adaptive(integrand, u_prev, u, adaptive);
        if (!r.converged) {
            throw ConvergenceError("truncated norm quadrature did not converge");
        }
        total += r.value;
        u_prev = u;
        report.caps.push_back(cap);
        report.norms.push_back(total);
    };
    for (double cap : caps) {
        add_cap(cap);
    }

    for (;;) {
        const std::size_t n = report.norms.size();
        report.growth_per_log.clear();
        report.monotone = true;
        for (std::size_t j = 1; j < n; ++j) {
            const double inc = report.norms[j] - report.norms[j - 1];
            report.monotone = report.monotone && inc > 0.0;
            report.growth_per_log.push_back(inc / std::log(report.caps[j] / report.caps[j - 1]));
        }
        const double last_inc = report.norms[n - 1] - report.norms[n - 2];
        report.plateau = last_inc <= options.plateau_tol * report.norms[n - 1];
        const double first = report.growth_per_log.front();
        bool sustained = n >= 3 && first > 0.0;
        for (double g : report.growth_per_log) {
            sustained = sustained && g >= options.sustained_ratio * first;
        }
        if (report.plateau) {
            report.verdict = GrowthVerdict::normalizable;
        } else if (report.monotone && sustained) {
            report.verdict = GrowthVerdict::divergent;
        } else {
            report.verdict = GrowthVerdict::inconclusive;
        }
        if (report.verdict != GrowthVerdict::inconclusive || report.caps.back() * 10.0 > options.max_cap) {
            return report;
        }
        add_cap(report.caps.back() * 10.0);
    }
}

}  // namespace

GrowthReport norm_divergence_check(const ModelParameters& params, double energy, double s,
                                   std::span<const double> caps, const GrowthOptions& options) {
    // validates lambda > 0, E above threshold and s up front
    (void)scattering_state_value(params, energy, s, 0.0);
    return growth_report(
        params, [&](double x) { return scattering_state_value(params, energy, s, x); }, caps, options);
}

GrowthReport norm_growth(const ModelParameters& params, const QuantumLevel& level,
                         std::span<const double> caps, const GrowthOptions& options) {
    return growth_report(
        params, [&](double x) { return wavefunction_value(params, level, x); }, caps, options);
}

}  // namespace rho::numeric
