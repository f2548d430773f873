#pragma once

#include <functional>
#include <vector>

namespace rho::quad {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int order);

struct PanelOptions {
    int order = 20;
    int panels = 16;
    /// Geometric refinement levels (ratio 1/2) of the first and last panel,
    /// for integrands with algebraic endpoint behavior.
    int endpoint_grading = 0;
};

struct Integral {
    double value;
    double abs_value;  // integral of |f|, the scale for relative tolerances
};

/// Composite Gauss-Legendre over [a, b] with a fixed panel layout.
Integral integrate_panels(const std::function<double(double)>& f, double a, double b,
                          const PanelOptions& options);

struct AdaptiveOptions {
    PanelOptions start{};
    double rel_tol = 1e-12;
    int max_doublings = 10;
};

struct AdaptiveResult {
    double value;
    double abs_value;
    double estimated_error;  // |I(2P) - I(P)|
    int panels;
    bool converged;
};

/// Doubles the panel count until two successive results agree to
/// rel_tol * integral of |f|. Never throws; check `converged`.
AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  const AdaptiveOptions& options = {});

}  // namespace rho::quad
