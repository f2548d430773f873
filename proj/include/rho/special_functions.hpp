#pragma once

#include <cstdint>
#include <vector>

namespace rho::special {

struct SeriesOptions {
    double tolerance = 1e-15;
    int max_terms = 10'000;
};

struct SeriesResult {
    double value;
    int terms_used;
    bool converged;
    double magnitude;  // sum of |terms|, times any prefactor: the scale of the rounding error
};

/// Plain Gauss series sum_k (a)_k (b)_k / ((c)_k k!) y^k for |y| < 1.
///
/// Never throws on slow convergence; check `converged`. A series that
/// terminates (a or b a non-positive integer) converges for any y.
SeriesResult gauss_series(double a, double b, double c, double y, const SeriesOptions& options = {});

/// Gauss hypergeometric 2F1(a, b; c; y) for real y < 1.
///
/// -1/2 <= y < 1 sums the series directly; y < -1/2 goes through the Pfaff
/// transformation (1-y)^(-b) 2F1(c-a, b; c; y/(y-1)).
/// Throws InvalidArgument for a pole in c or y >= 1, ConvergenceError when
/// the term budget runs out.
SeriesResult hyp2f1(double a, double b, double c, double y, const SeriesOptions& options = {});

/// Coefficients t_k of the terminating series 2F1(-n, b; c; y) = sum t_k y^k.
std::vector<double> hyp2f1_polynomial_coefficients(int n, double b, double c);

/// Terminating 2F1(-n, b; c; y), valid for every real y. Compensated sum.
double hyp2f1_polynomial(int n, double b, double c, double y);

/// Terminating Kummer series 1F1(-n; c; z) = sum_k (-n)_k / ((c)_k k!) z^k.
double hyp1f1_polynomial(int n, double c, double z);

/// Physicists' Hermite polynomial by the three-term recurrence.
double hermite(int n, double z);

/// Integer coefficients of H_n, lowest power first (exact for n <= 30).
std::vector<std::int64_t> hermite_coefficients(int n);

/// 2F1(alpha + i kappa, alpha - i kappa; c; y) for real y <= 0, kappa > 0.
///
/// The value is real. |y| <= 1/2 uses the real series with |Pochhammer|^2
/// coefficients; larger |y| uses the Pfaff map or the 1/y connection formula
/// with complex intermediate arithmetic.
double hyp2f1_conjugate_pair(double alpha, double kappa, double c, double y,
                             const SeriesOptions& options = {});

}  // namespace rho::special
