#include "cli/verification.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "rho/classical.hpp"
#include "rho/errors.hpp"
#include "rho/quantum_numeric.hpp"
#include "rho/special_functions.hpp"
#include "rho/spectrum.hpp"

namespace rho::cli {

namespace {

CheckResult check(std::string_view suite, std::string name, double measured, double tolerance,
                  std::string detail = {}) {
    const bool passed = std::isfinite(measured) && measured <= tolerance;
    return {std::string(suite), std::move(name), measured, tolerance, passed, std::move(detail)};
}

CheckResult failure(std::string_view suite, std::string name, double tolerance,
                    const std::exception& e) {
    return {std::string(suite), std::move(name), std::nan(""), tolerance, false, e.what()};
}

std::string lambda_tag(double lambda) {
    std::ostringstream s;
    s << "lambda=" << lambda;
    return s.str();
}

// log-log slope between consecutive points, worst deviation from `expected`
double worst_slope_deviation(const std::vector<double>& scale, const std::vector<double>& err,
                             double expected) {
    double worst = 0.0;
    for (std::size_t i = 1; i < scale.size(); ++i) {
        const double slope = std::log(err[i] / err[i - 1]) / std::log(scale[i] / scale[i - 1]);
        worst = std::max(worst, std::abs(slope - expected));
    }
    return worst;
}

int bound_level_count(const ModelParameters& params, int cap) {
    const auto n_max = max_principal_number(params);
    return n_max ? std::min(cap, *n_max + 1) : cap;
}

}  // namespace

std::vector<CheckResult> classical_suite(const VerifyConfig& config) {
    constexpr std::string_view suite = "classical";
    std::vector<CheckResult> out;

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst_position = 0.0;
    double worst_drift = 0.0;
    double worst_identity = 0.0;
    int cases = 0;
    try {
        for (; cases < 20; ++cases) {
            const double lambda = -2.0 + 4.0 * unit(rng);
            const double omega = 0.5 + 1.5 * unit(rng);
            const double mass = 0.5 + 1.5 * unit(rng);
            double ratio_hi = 3.0;
            if (lambda > 0.0) {
                ratio_hi = std::min(ratio_hi, 1.0 + 0.9 * (std::sqrt(1.0 + 1.0 / lambda) - 1.0));
            }
            const double energy = mass * (1.0 + (ratio_hi - 1.0) * (0.02 + 0.98 * unit(rng)));
            const ModelParameters params(lambda, omega, mass);
            const ClassicalOrbit orbit = orbit_from_energy(params, energy);
            const double period = 2.0 * std::numbers::pi / orbit.omega_eff;
            const double v0 = std::sqrt(1.0 - (mass / energy) * (mass / energy));
            const GeodesicPath path = integrate_geodesic(params, 0.0, v0, 3.0 * period, period / 200.0);
            for (const PathSample& sample : path.samples) {
                worst_position =
                    std::max(worst_position, std::abs(sample.x - trajectory_position(orbit, sample.t)));
            }
            worst_drift = std::max(worst_drift, path.energy_drift);
            worst_identity = std::max(
                worst_identity, std::abs(orbit.omega_eff * orbit.amplitude - v0));
        }
        out.push_back(check(suite, "geodesic_vs_closed_form", worst_position, 1e-6,
                            "20 random oscillatory cases, 3 periods, max |x_num - x_an|"));
        out.push_back(check(suite, "energy_drift", worst_drift, 1e-9, "max relative drift"));
        out.push_back(check(suite, "omega_times_amplitude", worst_identity, 1e-12,
                            "|Omega a - sqrt(1 - m^2/E^2)|"));
    } catch (const std::exception& e) {
        out.push_back(failure(suite, "geodesic_vs_closed_form (case " + std::to_string(cases) + ")",
                              1e-6, e));
    }

    double rest_error = 0.0;
    for (double lambda : config.lambda_set) {
        const ModelParameters params(lambda, config.omega, config.mass);
        rest_error = std::max(rest_error,
                              std::abs(effective_frequency(params, config.mass) - config.omega) /
                                      config.omega +
                                  std::abs(amplitude(params, config.mass)) * config.omega);
    }
    out.push_back(check(suite, "rest_limit", rest_error, 1e-14, "Omega(m) = omega and a(m) = 0"));
    return out;
}

std::vector<CheckResult> quantum_suite(const VerifyConfig& config) {
    constexpr std::string_view suite = "quantum";
    std::vector<CheckResult> out;
    for (double lambda : config.lambda_set) {
        const std::string tag = lambda_tag(lambda);
        const ModelParameters params(lambda, config.omega, config.mass);
        const int k = bound_level_count(params, 5);
        const numeric::GridSpec grid = numeric::default_grid(params, config.grid);

        numeric::NumericalSpectrum numerical;
        try {
            numerical = numeric::sturm_liouville_eigen(params, k, grid, {1e-6, true, true});
        } catch (const std::exception& e) {
            out.push_back(failure(suite, "oracle_agreement " + tag, 1e-6, e));
            continue;
        }

        double worst_rel = 0.0;
        int node_mismatch = 0;
        double worst_parity = 0.0;
        double worst_nu = 0.0;
        for (int n = 0; n < k; ++n) {
            const QuantumLevel level = energy_level(params, n);
            worst_rel = std::max(worst_rel,
                                 std::abs(numerical.energies[n] - level.energy) / level.energy);

            const numeric::SampledMode& mode = numerical.modes[n];
            double peak = 0.0;
            for (double v : mode.values) {
                peak = std::max(peak, std::abs(v));
            }
            // values at rounding level in the far tail carry no sign information
            std::vector<double> significant;
            for (double v : mode.values) {
                if (std::abs(v) > 1e-10 * peak) {
                    significant.push_back(v);
                }
            }
            const int numeric_nodes = numeric::sign_changes(significant);
            const int analytic_nodes = numeric::node_count(params, level, grid);
            node_mismatch += (numeric_nodes != n) + (analytic_nodes != n);

            const double sign = n % 2 == 0 ? 1.0 : -1.0;
            const std::size_t size = mode.values.size();
            for (std::size_t i = 0; i < size; ++i) {
                worst_parity = std::max(
                    worst_parity, std::abs(mode.values[i] - sign * mode.values[size - 1 - i]) / peak);
            }

            if (lambda != 0.0) {
                const SpectralParameters sp = spectral_parameters(params, level.energy);
                const double root = level.p + level.s + level.nprime;
                worst_nu = std::max(worst_nu, std::abs(sp.nu - root * root) / (root * root));
            }
        }
        out.push_back(check(suite, "oracle_agreement " + tag, worst_rel, 1e-6,
                            std::to_string(k) + " levels, max relative |E_an - E_num|"));
        out.push_back(check(suite, "node_count " + tag, node_mismatch, 0.0,
                            "levels whose analytic or numerical node count differs from n"));
        out.push_back(check(suite, "parity " + tag, worst_parity, 1e-8,
                            "max |U(x) - (-1)^n U(-x)| / max |U| on the numerical modes"));
        if (lambda != 0.0) {
            out.push_back(check(suite, "quantization_condition " + tag, worst_nu, 1e-12,
                                "|nu(E_n) - (p + s + n')^2| relative"));
        }
        if (lambda > 0.0) {
            const int n_max = *max_principal_number(params);
            const double threshold = *continuum_threshold(params);
            int misplaced = 0;
            for (int n = 0; n <= n_max; ++n) {
                const double e = energy_level(params, n).energy;
                misplaced += !(e >= config.mass && e < threshold);
            }
            try {
                (void)energy_level(params, n_max + 1);
                ++misplaced;
            } catch (const NotNormalizable&) {
            }
            misplaced += numerical.below_threshold != n_max + 1;
            out.push_back(check(suite, "level_placement " + tag, misplaced, 0.0,
                                "n_max = " + std::to_string(n_max) +
                                    "; levels in [m, threshold), oracle count below threshold"));
        }
    }
    return out;
}

std::vector<CheckResult> limits_suite(const VerifyConfig& config) {
    constexpr std::string_view suite = "limits";
    std::vector<CheckResult> out;
    const std::vector<double> deltas{1e-3, 1e-4, 1e-5};

    for (double lambda : config.lambda_set) {
        const std::string tag = lambda_tag(lambda);
        const ModelParameters params(lambda, config.omega, config.mass);
        std::vector<double> omega_err;
        std::vector<double> amp_err;
        for (double delta : deltas) {
            const double energy = config.mass * (1.0 + delta);
            const double e_nr = energy - config.mass;
            omega_err.push_back(std::abs(effective_frequency(params, energy) - config.omega) /
                                config.omega);
            const double a = amplitude(params, energy);
            const double nr = 2.0 * e_nr / (config.mass * config.omega * config.omega);
            amp_err.push_back(std::abs(a * a - nr) / (a * a));
        }
        auto slope_check = [&](const std::string& name, const std::vector<double>& err) {
            if (std::all_of(err.begin(), err.end(), [](double e) { return e <= 1e-14; })) {
                out.push_back(check(suite, name, 0.0, 0.05, "error vanishes identically"));
                return;
            }
            std::ostringstream detail;
            detail << "|slope - 1| of log error vs log(E_nr/m); errors";
            for (double e : err) {
                detail << ' ' << e;
            }
            out.push_back(check(suite, name, worst_slope_deviation(deltas, err, 1.0), 0.05,
                                detail.str()));
        };
        slope_check("classical_nr_frequency " + tag, omega_err);
        slope_check("classical_nr_amplitude " + tag, amp_err);
    }

    // AdS ground level approaches m + omega/2 from above
    {
        const std::vector<double> ratios{10.0, 100.0, 1000.0, 10000.0};
        std::vector<double> gaps;
        std::vector<double> excess;
        for (double r : ratios) {
            const ModelParameters params(-1.0, config.omega, r * config.omega);
            gaps.push_back((energy_level(params, 0).energy - params.mass()) / config.omega);
            excess.push_back(gaps.back() - 0.5);
        }
        const double at_1000 = gaps[2];
        std::ostringstream detail;
        detail << "(E0 - m)/omega = " << at_1000 << " at m/omega = 1000";
        out.push_back(check(suite, "quantum_nr_ground_gap", at_1000 > 0.5 ? at_1000 - 0.5 : 1.0,
                            1e-3, detail.str()));
        int violations = 0;
        for (std::size_t i = 0; i < gaps.size(); ++i) {
            violations += !(excess[i] > 0.0);
            if (i > 0) {
                violations += !(gaps[i] < gaps[i - 1]);
            }
        }
        out.push_back(check(suite, "quantum_nr_monotone_approach", violations, 0.0,
                            "(E0 - m)/omega decreasing toward 1/2 and above it"));
        std::vector<double> inv;
        for (double r : ratios) {
            inv.push_back(1.0 / r);
        }
        out.push_back(check(suite, "quantum_nr_slope", worst_slope_deviation(inv, excess, 1.0), 0.05,
                            "|slope - 1| of (E0 - m)/omega - 1/2 vs omega/m"));
    }

    // continuity through lambda = 0
    {
        const ModelParameters flat(0.0, config.omega, config.mass);
        double worst = 0.0;
        double worst_slope = 0.0;
        for (double sign : {-1.0, 1.0}) {
            const ModelParameters near(sign * 1e-4, config.omega, config.mass);
            const ModelParameters nearer(sign * 1e-5, config.omega, config.mass);
            for (int n = 0; n <= 5; ++n) {
                const double e0 = energy_level(flat, n).energy;
                const double d1 = std::abs(energy_level(near, n).energy - e0);
                const double d2 = std::abs(energy_level(nearer, n).energy - e0);
                worst = std::max(worst, d1 / config.omega);
                worst_slope = std::max(
                    worst_slope, worst_slope_deviation({1e-4, 1e-5}, {d1, d2}, 1.0));
            }
        }
        out.push_back(check(suite, "lambda_continuity", worst, 1e-3,
                            "max |E_n(+-1e-4) - E_n(0)| / omega, n <= 5"));
        out.push_back(check(suite, "lambda_continuity_slope", worst_slope, 0.05,
                            "|slope - 1| of |E_n(lambda) - E_n(0)| vs |lambda|"));
    }
    return out;
}

namespace {

struct HypergeometricCase {
    double a;
    double b;
    double c;
    int nprime;  // -1 for non-terminating parameters
};

std::vector<HypergeometricCase> spectral_cases(const VerifyConfig& config) {
    std::vector<HypergeometricCase> cases;
    for (double lambda : config.lambda_set) {
        if (lambda == 0.0) {
            continue;
        }
        const ModelParameters params(lambda, config.omega, config.mass);
        const int k = bound_level_count(params, 5);
        const double p = exponent_branch(params);
        std::vector<double> energies;
        for (int n = 0; n < k; ++n) {
            const QuantumLevel level = energy_level(params, n);
            cases.push_back({-static_cast<double>(level.nprime),
                             2.0 * level.p + 2.0 * level.s + level.nprime, 2.0 * level.s + 0.5,
                             level.nprime});
            energies.push_back(level.energy);
        }
        // off-shell energies between the levels give non-terminating parameter sets
        for (std::size_t i = 0; i + 1 < energies.size(); ++i) {
            const double e = 0.5 * (energies[i] + energies[i + 1]);
            const double root = std::sqrt(spectral_parameters(params, e).nu);
            for (double s : {0.0, 0.5}) {
                cases.push_back({p + s - root, p + s + root, 2.0 * s + 0.5, -1});
            }
        }
    }
    return cases;
}

std::vector<double> argument_grid() {
    std::vector<double> ys;
    for (int i = 0; i <= 40; ++i) {
        ys.push_back(-1e-3 * std::pow(5e4, i / 40.0));
    }
    for (int i = 1; i <= 19; ++i) {
        ys.push_back(0.05 * i);
    }
    return ys;
}

}  // namespace

std::vector<CheckResult> special_suite(const VerifyConfig& config) {
    constexpr std::string_view suite = "special";
    std::vector<CheckResult> out;
    const std::vector<HypergeometricCase> cases = spectral_cases(config);
    const std::vector<double> ys = argument_grid();

    double worst_pfaff = 0.0;
    double worst_poly = 0.0;
    int evaluated = 0;
    try {
        for (const HypergeometricCase& hc : cases) {
            for (double y : ys) {
                const special::SeriesResult direct = special::hyp2f1(hc.a, hc.b, hc.c, y);
                if (y < 0.0) {
                    // Pfaff with the other pivot: (1-y)^(-a) 2F1(a, c-b; c; y/(y-1))
                    const double pre = std::pow(1.0 - y, -hc.a);
                    const special::SeriesResult other =
                        special::gauss_series(hc.a, hc.c - hc.b, hc.c, y / (y - 1.0));
                    const double scale =
                        std::max({std::abs(direct.value), direct.magnitude, pre * other.magnitude});
                    worst_pfaff = std::max(worst_pfaff,
                                           std::abs(direct.value - pre * other.value) / scale);
                    ++evaluated;
                }
                if (hc.nprime >= 0) {
                    const std::vector<double> coef =
                        special::hyp2f1_polynomial_coefficients(hc.nprime, hc.b, hc.c);
                    double poly_scale = 0.0;
                    for (std::size_t j = 0; j < coef.size(); ++j) {
                        poly_scale += std::abs(coef[j]) * std::pow(std::abs(y), static_cast<double>(j));
                    }
                    const double poly = special::hyp2f1_polynomial(hc.nprime, hc.b, hc.c, y);
                    const double scale = std::max({std::abs(poly), poly_scale, direct.magnitude});
                    worst_poly = std::max(worst_poly, std::abs(poly - direct.value) / scale);
                }
            }
        }
        out.push_back(check(suite, "pfaff_consistency", worst_pfaff, 1e-12,
                            std::to_string(evaluated) + " evaluations, y in [-50, 0)"));
        out.push_back(check(suite, "polynomial_vs_series", worst_poly, 1e-12,
                            "terminating 2F1 against the general evaluator, y in [-50, 0.95]"));
    } catch (const std::exception& e) {
        out.push_back(failure(suite, "pfaff_consistency", 1e-12, e));
    }

    double worst_hermite = 0.0;
    for (int n = 0; n <= 12; ++n) {
        const int nprime = n / 2;
        const double s = n % 2 == 0 ? 0.0 : 0.5;
        // H_n(z) = (-1)^n' (n! / n'!) (2z)^(2s) 1F1(-n'; 2s + 1/2; z^2)
        double constant = nprime % 2 == 0 ? 1.0 : -1.0;
        for (int j = nprime + 1; j <= n; ++j) {
            constant *= j;
        }
        const std::vector<std::int64_t> coef = special::hermite_coefficients(n);
        for (int i = 1; i <= 60; ++i) {
            const double z = 0.05 * i;
            double scale = 0.0;
            for (std::size_t j = 0; j < coef.size(); ++j) {
                scale += std::abs(static_cast<double>(coef[j])) * std::pow(z, static_cast<double>(j));
            }
            const double lhs = special::hermite(n, z);
            const double rhs = constant * std::pow(2.0 * z, 2.0 * s) *
                               special::hyp1f1_polynomial(nprime, 2.0 * s + 0.5, z * z);
            worst_hermite = std::max(worst_hermite, std::abs(lhs - rhs) / scale);
        }
    }
    out.push_back(check(suite, "hermite_connection", worst_hermite, 1e-12,
                        "H_n against its confluent form, n <= 12, z in (0, 3]"));
    return out;
}

std::vector<CheckResult> run_suite(std::string_view suite, const VerifyConfig& config) {
    if (suite == "classical") {
        return classical_suite(config);
    }
    if (suite == "quantum") {
        return quantum_suite(config);
    }
    if (suite == "limits") {
        return limits_suite(config);
    }
    if (suite == "special") {
        return special_suite(config);
    }
    if (suite == "all") {
        std::vector<CheckResult> all;
        for (std::string_view name : kSuites) {
            auto part = run_suite(name, config);
            all.insert(all.end(), part.begin(), part.end());
        }
        return all;
    }
    throw InvalidArgument("unknown verification suite '" + std::string(suite) + "'");
}

}  // namespace rho::cli
