#include "rho/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rho/errors.hpp"

namespace rho {

std::string_view to_string(MotionClass motion) noexcept {
    switch (motion) {
        case MotionClass::oscillatory:
            return "oscillatory";
        case MotionClass::threshold:
            return "threshold";
        case MotionClass::open:
            return "open";
    }
    return "unknown";
}

namespace {

struct Radicand {
    double value;
    bool at_threshold;
};

void require_allowed(const ModelParameters& params, double energy) {
    if (!std::isfinite(energy)) {
        throw InvalidArgument("energy must be finite");
    }
    if (energy < params.mass()) {
        std::ostringstream msg;
        msg << "energy " << energy << " is below the rest mass " << params.mass();
        throw ForbiddenEnergy(msg.str());
    }
}

// (1+lambda) m^2 - lambda E^2, snapped to zero when it is lost in rounding.
Radicand frequency_radicand(const ModelParameters& params, double energy) {
    const double m2 = params.mass() * params.mass();
    const double lambda = params.lambda();
    const double first = (1.0 + lambda) * m2;
    const double second = lambda * energy * energy;
    const double value = first - second;
    const double scale = std::max(std::abs(first), std::abs(second));
    if (lambda > 0.0 && std::abs(value) <= 8.0 * std::numeric_limits<double>::epsilon() * scale) {
        return {0.0, true};
    }
    return {value, false};
}

}  // namespace

double effective_frequency(const ModelParameters& params, double energy) {
    require_allowed(params, energy);
    const Radicand rad = frequency_radicand(params, energy);
    if (rad.value < 0.0) {
        throw OpenMotion("energy above the oscillation threshold: open motion");
    }
    return params.omega() / energy * std::sqrt(rad.value);
}

double amplitude(const ModelParameters& params, double energy) {
    require_allowed(params, energy);
    const Radicand rad = frequency_radicand(params, energy);
    if (rad.at_threshold || rad.value <= 0.0) {
        throw OpenMotion("no finite amplitude at or above the oscillation threshold");
    }
    const double m = params.mass();
    return std::sqrt((energy - m) * (energy + m) / rad.value) / params.omega();
}

MotionClass classify_motion(const ModelParameters& params, double energy) {
    require_allowed(params, energy);
    if (params.lambda() <= 0.0) {
        return MotionClass::oscillatory;
    }
    const Radicand rad = frequency_radicand(params, energy);
    if (rad.at_threshold) {
        return MotionClass::threshold;
    }
    return rad.value > 0.0 ? MotionClass::oscillatory : MotionClass::open;
}

ClassicalOrbit orbit_from_energy(const ModelParameters& params, double energy, double t0) {
    const MotionClass motion = classify_motion(params, energy);
    if (motion != MotionClass::oscillatory) {
        throw OpenMotion("orbit_from_energy requires an oscillatory energy");
    }
    return ClassicalOrbit{energy, effective_frequency(params, energy), amplitude(params, energy), t0,
                          motion};
}

double trajectory_position(const ClassicalOrbit& orbit, double t) noexcept {
    return orbit.amplitude * std::sin(orbit.omega_eff * (t - orbit.phase_time));
}

double energy_from_state(const ModelParameters& params, double x, double velocity) {
    const MetricComponents g = metric_components(params, x);
    const double denom = g.g00 + g.g11 * velocity * velocity;
    if (!(denom > 0.0)) {
        throw InvalidArgument("state is not timelike: no real energy");
    }
    return params.mass() * g.g00 / std::sqrt(denom);
}

double geodesic_acceleration(const ModelParameters& params, double x, double velocity) {
    const MetricComponents g = metric_components(params, x);
    const MetricDerivatives d = metric_derivatives(params, x);
    return d.dg00 / (2.0 * g.g11) -
           velocity * velocity * (d.dg11 / (2.0 * g.g11) - d.dg00 / g.g00);
}

GeodesicPath integrate_geodesic(const ModelParameters& params, double x0, double v0, double t_max,
                                double sample_step, const GeodesicOptions& options) {
    if (!(sample_step > 0.0) || !(t_max >= 0.0)) {
        throw InvalidArgument("integrate_geodesic needs sample_step > 0 and t_max >= 0");
    }
    const double limit = horizon_radius(params) * options.horizon_guard;
    auto guard = [&](double x) {
        if (std::abs(x) > limit) {
            std::ostringstream msg;
            msg << "trajectory reached |x| = " << std::abs(x) << " next to the horizon";
            throw HorizonApproach(msg.str());
        }
    };
    guard(x0);
    const double e0 = energy_from_state(params, x0, v0);

    auto rhs = [&](double, const ode::State& y) -> ode::State {
        guard(y[0]);
        return {y[1], geodesic_acceleration(params, y[0], y[1])};
    };
    ode::StepControl control = options.control;
    control.max_step = std::min(control.max_step, sample_step);
    ode::DormandPrince stepper(rhs, 0.0, {x0, v0}, control);

    GeodesicPath path{{}, e0, 0.0};
    const auto n_samples = static_cast<std::size_t>(std::floor(t_max / sample_step + 1e-9));
    path.samples.reserve(n_samples + 1);
    path.samples.push_back({0.0, x0, v0});
    for (std::size_t i = 1; i <= n_samples; ++i) {
        const double t = static_cast<double>(i) * sample_step;
        const ode::State& y = stepper.advance(t);
        guard(y[0]);
        path.samples.push_back({t, y[0], y[1]});
        const double e = energy_from_state(params, y[0], y[1]);
        path.energy_drift = std::max(path.energy_drift, std::abs(e - e0) / e0);
    }
    return path;
}

}  // namespace rho
