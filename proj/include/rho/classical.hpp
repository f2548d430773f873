#pragma once

#include <string_view>
#include <vector>

#include "rho/model.hpp"
#include "rho/ode.hpp"

namespace rho {

enum class MotionClass { oscillatory, threshold, open };

std::string_view to_string(MotionClass motion) noexcept;

/// Closed-form geodesic x(t) = a sin(Omega (t - t0)).
///
/// Phase convention: x(t0) = 0 with dx/dt(t0) > 0, so amplitude >= 0.
struct ClassicalOrbit {
    double energy;
    double omega_eff;
    double amplitude;
    double phase_time;
    MotionClass motion_class;
};

struct PathSample {
    double t;
    double x;
    double v;
};

struct GeodesicPath {
    std::vector<PathSample> samples;
    double energy;        // E at the initial state
    double energy_drift;  // max |E(t) - E(0)| / E(0) over the samples
};

struct GeodesicOptions {
    ode::StepControl control{};
    /// Integration aborts once |x| exceeds this fraction of a finite horizon.
    double horizon_guard = 1.0 - 1e-8;
};

/// Omega = (omega/E) sqrt((1+lambda) m^2 - lambda E^2).
///
/// Throws ForbiddenEnergy for E < m and OpenMotion when the radicand is
/// negative. At the lambda > 0 threshold the radicand is taken as zero when it
/// is within a few ulps of it.
double effective_frequency(const ModelParameters& params, double energy);

/// a = (1/omega) sqrt((E^2 - m^2) / ((1+lambda) m^2 - lambda E^2)).
/// Throws OpenMotion at or above the lambda > 0 threshold.
double amplitude(const ModelParameters& params, double energy);

MotionClass classify_motion(const ModelParameters& params, double energy);

ClassicalOrbit orbit_from_energy(const ModelParameters& params, double energy, double t0 = 0.0);

double trajectory_position(const ClassicalOrbit& orbit, double t) noexcept;

/// Conserved energy of the state (x, dx/dt): E = m g00 / sqrt(g00 + g11 v^2).
double energy_from_state(const ModelParameters& params, double x, double velocity);

/// Numerically integrates the coordinate-time geodesic equation and samples
/// the path every `sample_step` up to `t_max`.
///
/// Throws HorizonApproach if the path reaches the horizon guard (lambda < 0).
GeodesicPath integrate_geodesic(const ModelParameters& params, double x0, double v0, double t_max,
                                double sample_step, const GeodesicOptions& options = {});

/// Coordinate acceleration d^2x/dt^2 from the geodesic equation.
double geodesic_acceleration(const ModelParameters& params, double x, double velocity);

}  // namespace rho
