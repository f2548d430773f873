#include "rho/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rho/errors.hpp"

namespace rho::quad {

namespace {

struct LegendrePair {
    double p;       // P_n(x)
    double p_prev;  // P_{n-1}(x)
};

LegendrePair legendre(int order, double x) {
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    return {p1, p0};
}

}  // namespace

GaussLegendreRule gauss_legendre(int order) {
    if (order < 1) {
        throw InvalidArgument("Gauss-Legendre order must be >= 1");
    }
    GaussLegendreRule rule{std::vector<double>(order), std::vector<double>(order)};
    if (order == 1) {
        rule.nodes[0] = 0.0;
        rule.weights[0] = 2.0;
        return rule;
    }
    for (int i = 0; i < (order + 1) / 2; ++i) {
        // Tricomi initial guess, then Newton on P_n
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            const LegendrePair lp = legendre(order, x);
            const double dp = order * (x * lp.p - lp.p_prev) / (x * x - 1.0);
            const double dx = lp.p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        const LegendrePair lp = legendre(order, x);
        const double dp = order * (x * lp.p - lp.p_prev) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[order - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[order - 1 - i] = w;
    }
    if (order % 2 == 1) {
        rule.nodes[order / 2] = 0.0;
    }
    return rule;
}

namespace {

void add_panel(const std::function<double(double)>& f, const GaussLegendreRule& rule, double lo,
               double hi, Integral& acc) {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double v = f(mid + half * rule.nodes[i]) * rule.weights[i] * half;
        acc.value += v;
        acc.abs_value += std::abs(v);
    }
}

std::vector<double> panel_breakpoints(double a, double b, const PanelOptions& options) {
    const int panels = options.endpoint_grading > 0 ? std::max(options.panels, 2) : options.panels;
    const double width = (b - a) / panels;
    std::vector<double> left;
    std::vector<double> right;
    for (int g = options.endpoint_grading; g >= 1; --g) {
        left.push_back(a + width * std::ldexp(1.0, -g));
        right.push_back(b - width * std::ldexp(1.0, -g));
    }
    std::vector<double> points{a};
    points.insert(points.end(), left.begin(), left.end());
    for (int p = 1; p < panels; ++p) {
        points.push_back(a + p * width);
    }
    points.insert(points.end(), right.rbegin(), right.rend());
    points.push_back(b);
    return points;
}

}  // namespace

Integral integrate_panels(const std::function<double(double)>& f, double a, double b,
                          const PanelOptions& options) {
    if (options.panels < 1) {
        throw InvalidArgument("need at least one panel");
    }
    const GaussLegendreRule rule = gauss_legendre(options.order);
    const std::vector<double> points = panel_breakpoints(a, b, options);
    Integral acc{0.0, 0.0};
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        add_panel(f, rule, points[i], points[i + 1], acc);
    }
    return acc;
}

AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  const AdaptiveOptions& options) {
    PanelOptions panels = options.start;
    Integral prev = integrate_panels(f, a, b, panels);
    double err = std::abs(prev.value);
    for (int d = 0; d < options.max_doublings; ++d) {
        panels.panels *= 2;
        const Integral cur = integrate_panels(f, a, b, panels);
        err = std::abs(cur.value - prev.value);
        prev = cur;
        if (err <= options.rel_tol * cur.abs_value) {
            return {cur.value, cur.abs_value, err, panels.panels, true};
        }
    }
    return {prev.value, prev.abs_value, err, panels.panels, false};
}

}  // namespace rho::quad
