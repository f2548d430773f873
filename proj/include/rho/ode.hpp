#pragma once

#include <array>
#include <functional>

namespace rho::ode {

/// Phase-space point (x, dx/dt).
using State = std::array<double, 2>;
using RightHandSide = std::function<State(double t, const State& y)>;

struct StepControl {
    double rtol = 1e-10;
    double atol = 1e-13;
    double initial_step = 1e-3;
    double min_step = 1e-14;
    double max_step = 0.1;
    int max_steps = 10'000'000;
};

/// Adaptive Dormand-Prince 5(4) integrator for a two-component system.
///
/// advance() integrates up to an exact target time, shortening the last step
/// so that samples land on the requested grid. The accepted step size is
/// carried between calls.
class DormandPrince {
public:
    DormandPrince(RightHandSide rhs, double t0, State y0, StepControl control = {});

    /// Throws ConvergenceError on step-size underflow or step budget overrun.
    const State& advance(double t_target);

    double time() const noexcept { return t_; }
    const State& state() const noexcept { return y_; }
    int accepted_steps() const noexcept { return accepted_; }
    int rejected_steps() const noexcept { return rejected_; }

private:
    RightHandSide rhs_;
    double t_;
    State y_;
    State k1_;
    StepControl control_;
    double h_;
    int accepted_ = 0;
    int rejected_ = 0;
};

}  // namespace rho::ode
