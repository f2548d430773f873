#pragma once

#include <limits>

namespace rho {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// One member of the metric family: deformation parameter lambda, base
/// frequency omega and particle mass m, in natural units (hbar = c = 1).
///
/// Instances are always valid: omega > 0, mass > 0 and every field finite.
class ModelParameters {
public:
    /// Throws InvalidArgument when the triple violates the invariants.
    ModelParameters(double lambda, double omega, double mass);

    double lambda() const noexcept { return lambda_; }
    double omega() const noexcept { return omega_; }
    double mass() const noexcept { return mass_; }

    /// m / (lambda omega); only meaningful for lambda != 0.
    double mu() const noexcept { return mass_ / (lambda_ * omega_); }

    bool operator==(const ModelParameters&) const = default;

private:
    double lambda_;
    double omega_;
    double mass_;
};

ModelParameters validate(double lambda, double omega, double mass);

struct MetricComponents {
    double g00;
    double g11;  // signed, negative on the physical domain
};

struct MetricDerivatives {
    double dg00;
    double dg11;
};

/// Open interval (-radius, radius); radius is +inf for lambda >= 0.
struct SpatialDomain {
    double radius;

    bool bounded() const noexcept { return radius != kInfinity; }
    bool contains(double x) const noexcept { return x > -radius && x < radius; }
};

/// Event horizon seen by an observer at x = 0.
double horizon_radius(const ModelParameters& params) noexcept;

SpatialDomain spatial_domain(const ModelParameters& params) noexcept;

/// 1 + lambda omega^2 x^2, evaluated in factored form for lambda < 0 so that
/// it keeps full relative precision next to the horizon.
double conformal_factor(const ModelParameters& params, double x) noexcept;

/// Metric components at x. Throws OutsideDomain unless |x| < R.
MetricComponents metric_components(const ModelParameters& params, double x);

/// d g00/dx and d g11/dx at x. Throws OutsideDomain unless |x| < R.
MetricDerivatives metric_derivatives(const ModelParameters& params, double x);

}  // namespace rho
