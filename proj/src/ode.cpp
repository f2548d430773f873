#include "rho/ode.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "rho/errors.hpp"

namespace rho::ode {

namespace {

// Dormand-Prince tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// b - b* (fifth minus fourth order weights)
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

State axpy(const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
    State out = y;
    for (const auto& [coef, k] : terms) {
        out[0] += h * coef * (*k)[0];
        out[1] += h * coef * (*k)[1];
    }
    return out;
}

}  // namespace

DormandPrince::DormandPrince(RightHandSide rhs, double t0, State y0, StepControl control)
    : rhs_(std::move(rhs)), t_(t0), y_(y0), control_(control), h_(control.initial_step) {
    k1_ = rhs_(t_, y_);
}

const State& DormandPrince::advance(double t_target) {
    while (t_ < t_target) {
        if (accepted_ + rejected_ > control_.max_steps) {
            throw ConvergenceError("step budget exhausted in Dormand-Prince integration");
        }
        const double remaining = t_target - t_;
        const bool last = h_ >= remaining;
        const double h = last ? remaining : h_;

        const State k2 = rhs_(t_ + c2 * h, axpy(y_, h, {{a21, &k1_}}));
        const State k3 = rhs_(t_ + c3 * h, axpy(y_, h, {{a31, &k1_}, {a32, &k2}}));
        const State k4 = rhs_(t_ + c4 * h, axpy(y_, h, {{a41, &k1_}, {a42, &k2}, {a43, &k3}}));
        const State k5 =
            rhs_(t_ + c5 * h, axpy(y_, h, {{a51, &k1_}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const State k6 = rhs_(
            t_ + h, axpy(y_, h, {{a61, &k1_}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        const State y_new =
            axpy(y_, h, {{b1, &k1_}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        const State k7 = rhs_(t_ + h, y_new);

        double err = 0.0;
        for (int i = 0; i < 2; ++i) {
            const double e = h * (e1 * k1_[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                  e6 * k6[i] + e7 * k7[i]);
            const double scale =
                control_.atol + control_.rtol * std::max(std::abs(y_[i]), std::abs(y_new[i]));
            err = std::max(err, std::abs(e) / scale);
        }
        if (!std::isfinite(err)) {
            err = 1e10;
        }

        if (err <= 1.0) {
            t_ = last ? t_target : t_ + h;
            y_ = y_new;
            k1_ = k7;
            ++accepted_;
            const double grow = err == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(err, -0.2));
            // a shortened final step says nothing about the natural step size
            if (!last) {
                h_ = std::min(control_.max_step, h * grow);
            } else if (h == h_) {
                h_ = std::min(control_.max_step, h_ * grow);
            }
        } else {
            ++rejected_;
            h_ = h * std::max(0.1, 0.9 * std::pow(err, -0.2));
            if (h_ < control_.min_step) {
                throw ConvergenceError("step size underflow in Dormand-Prince integration");
            }
        }
    }
    return y_;
}

}  // namespace rho::ode
