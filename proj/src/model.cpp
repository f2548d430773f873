#include "rho/model.hpp"

#include <cmath>
#include <sstream>

#include "rho/errors.hpp"

namespace rho {

ModelParameters::ModelParameters(double lambda, double omega, double mass)
    : lambda_(lambda), omega_(omega), mass_(mass) {
    if (!std::isfinite(lambda) || !std::isfinite(omega) || !std::isfinite(mass)) {
        throw InvalidArgument("model parameters must be finite");
    }
    if (omega <= 0.0) {
        throw InvalidArgument("omega must be > 0");
    }
    if (mass <= 0.0) {
        throw InvalidArgument("mass must be > 0");
    }
}

ModelParameters validate(double lambda, double omega, double mass) {
    return ModelParameters(lambda, omega, mass);
}

double horizon_radius(const ModelParameters& params) noexcept {
    if (params.lambda() >= 0.0) {
        return kInfinity;
    }
    return 1.0 / (params.omega() * std::sqrt(-params.lambda()));
}

SpatialDomain spatial_domain(const ModelParameters& params) noexcept {
    return SpatialDomain{horizon_radius(params)};
}

double conformal_factor(const ModelParameters& params, double x) noexcept {
    const double lambda = params.lambda();
    const double wx = params.omega() * x;
    if (lambda < 0.0) {
        const double u = std::sqrt(-lambda) * wx;
        return (1.0 - u) * (1.0 + u);
    }
    return 1.0 + lambda * wx * wx;
}

namespace {

void require_inside(const ModelParameters& params, double x) {
    const SpatialDomain domain = spatial_domain(params);
    if (!domain.contains(x)) {
        std::ostringstream msg;
        msg << "x = " << x << " lies outside the open domain (-" << domain.radius << ", "
            << domain.radius << ")";
        throw OutsideDomain(msg.str());
    }
}

}  // namespace

MetricComponents metric_components(const ModelParameters& params, double x) {
    require_inside(params, x);
    const double w2x2 = params.omega() * params.omega() * x * x;
    const double q = conformal_factor(params, x);
    const double r = 1.0 + (1.0 + params.lambda()) * w2x2;
    return MetricComponents{r / q, -r / (q * q)};
}

MetricDerivatives metric_derivatives(const ModelParameters& params, double x) {
    require_inside(params, x);
    const double w2 = params.omega() * params.omega();
    const double lambda = params.lambda();
    const double q = conformal_factor(params, x);
    const double r = 1.0 + (1.0 + lambda) * w2 * x * x;
    const double dq = 2.0 * lambda * w2 * x;
    const double dr = 2.0 * (1.0 + lambda) * w2 * x;
    // g00 = r/q, g11 = -r/q^2
    return MetricDerivatives{(dr * q - r * dq) / (q * q), -(dr * q - 2.0 * r * dq) / (q * q * q)};
}

}  // namespace rho
