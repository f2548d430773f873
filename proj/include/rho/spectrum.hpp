#pragma once

#include <optional>
#include <vector>

#include "rho/model.hpp"

namespace rho {

/// Dimensionless quantization bookkeeping at energy E.
///
/// For lambda = 0 the scaled quantities diverge; `flat` is set and every
/// numeric field is NaN.
struct SpectralParameters {
    bool flat;
    double epsilon;  // E / (lambda omega)
    double mu;       // m / (lambda omega)
    double nu;       // ((1+lambda) mu^2 - lambda epsilon^2) / 4
    double p_plus;   // roots of 4p^2 - 2p - mu^2 = 0
    double p_minus;
};

/// Bound level n = 2(nprime + s). `p` is NaN on the lambda = 0 branch.
struct QuantumLevel {
    int n;
    int nprime;
    double s;  // 0 for even n, 1/2 for odd n
    double p;
    double energy;
};

struct DiscreteSpectrum {
    std::vector<QuantumLevel> levels;
    std::optional<int> n_max;                   // lambda > 0 only
    std::optional<double> continuum_threshold;  // lambda > 0 only
    bool countable;                             // lambda <= 0
};

SpectralParameters spectral_parameters(const ModelParameters& params, double energy);

/// Exponent p that makes the polynomial solutions square integrable:
/// p- for lambda > 0, p+ for lambda < 0. Throws InvalidArgument at lambda = 0.
double exponent_branch(const ModelParameters& params);

/// Largest normalizable principal number (lambda > 0): the largest n with
/// n < -2 p-. Empty for lambda <= 0.
std::optional<int> max_principal_number(const ModelParameters& params);

/// m sqrt(1 + 1/lambda) for lambda > 0; empty otherwise.
std::optional<double> continuum_threshold(const ModelParameters& params);

/// Throws NotNormalizable when lambda > 0 and n exceeds n_max.
QuantumLevel energy_level(const ModelParameters& params, int n);

/// lambda > 0: every level 0..n_max (max_levels is ignored); lambda <= 0:
/// the first max_levels levels.
DiscreteSpectrum discrete_spectrum(const ModelParameters& params, int max_levels);

/// Unnormalized bound-state mode U(x), scaled so that U(0) = 1 for even n and
/// U'(0) = 1 for odd n. On the lambda = 0 branch it is the confluent limit
/// exp(-m omega x^2 / 2) x^(2s) 1F1(-n'; 2s + 1/2; m omega x^2).
double wavefunction_value(const ModelParameters& params, const QuantumLevel& level, double x);

/// Non-normalizable continuum mode for lambda > 0 and E strictly above the
/// threshold; `s` must be 0 or 1/2.
double scattering_state_value(const ModelParameters& params, double energy, double s, double x);

/// exp(-m omega x^2 / 2) H_n(sqrt(m omega) x).
double nr_limit_wavefunction(const ModelParameters& params, int n, double x);

}  // namespace rho
