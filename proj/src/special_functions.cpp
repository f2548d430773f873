#include "rho/special_functions.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "rho/errors.hpp"

namespace rho::special {

namespace {

using cplx = std::complex<double>;

bool is_nonpositive_integer(double v) { return v <= 0.0 && v == std::floor(v); }

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

void require_no_c_pole(double c, int terms_needed = -1) {
    if (!is_nonpositive_integer(c)) {
        return;
    }
    // (c)_k vanishes first at k = 1 - c; a polynomial of lower degree never reaches it
    if (terms_needed >= 0 && static_cast<double>(terms_needed) < 1.0 - c) {
        return;
    }
    std::ostringstream msg;
    msg << "hypergeometric parameter c = " << c << " is a pole";
    throw InvalidArgument(msg.str());
}

// ln Gamma(z) for complex z, Lanczos (g = 7, n = 9) with reflection.
cplx log_gamma(cplx z) {
    static constexpr double g = 7.0;
    static constexpr double coef[9] = {0.99999999999980993,  676.5203681218851,
                                       -1259.1392167224028,  771.32342877765313,
                                       -176.61502916214059,  12.507343278686905,
                                       -0.13857109526572012, 9.9843695780195716e-6,
                                       1.5056327351493116e-7};
    constexpr double pi = std::numbers::pi;
    if (z.real() < 0.5) {
        return std::log(pi) - std::log(std::sin(pi * z)) - log_gamma(1.0 - z);
    }
    z -= 1.0;
    cplx acc = coef[0];
    for (int i = 1; i < 9; ++i) {
        acc += coef[i] / (z + static_cast<double>(i));
    }
    const cplx t = z + g + 0.5;
    return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(acc);
}

// Complex-parameter Gauss series at real |y| < 1.
cplx complex_gauss_series(cplx a, cplx b, cplx c, double y, const SeriesOptions& options) {
    cplx term = 1.0;
    cplx sum = 1.0;
    int small_run = 0;
    for (int k = 0; k < options.max_terms; ++k) {
        const double kd = static_cast<double>(k);
        term *= (a + kd) * (b + kd) / ((c + kd) * (kd + 1.0)) * y;
        sum += term;
        if (std::abs(term) <= options.tolerance * std::abs(sum)) {
            if (++small_run >= 2) {
                return sum;
            }
        } else {
            small_run = 0;
        }
    }
    throw ConvergenceError("complex-parameter hypergeometric series did not converge");
}

}  // namespace

SeriesResult gauss_series(double a, double b, double c, double y, const SeriesOptions& options) {
    double term = 1.0;
    double magnitude = 1.0;
    CompensatedSum sum;
    sum.add(1.0);
    int small_run = 0;
    for (int k = 0; k < options.max_terms; ++k) {
        const double kd = static_cast<double>(k);
        term *= (a + kd) * (b + kd) / ((c + kd) * (kd + 1.0)) * y;
        if (term == 0.0) {
            return {sum.value(), k + 1, true, magnitude};
        }
        sum.add(term);
        magnitude += std::abs(term);
        if (std::abs(term) <= options.tolerance * std::abs(sum.value())) {
            // two quiet terms in a row guard against an accidental small factor
            if (++small_run >= 2) {
                return {sum.value(), k + 2, true, magnitude};
            }
        } else {
            small_run = 0;
        }
    }
    return {sum.value(), options.max_terms + 1, false, magnitude};
}

SeriesResult hyp2f1(double a, double b, double c, double y, const SeriesOptions& options) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(y)) {
        throw InvalidArgument("hyp2f1 arguments must be finite");
    }
    require_no_c_pole(c);
    if (y >= 1.0) {
        throw InvalidArgument("hyp2f1 is only provided for real y < 1");
    }
    if (y == 0.0) {
        return {1.0, 1, true, 1.0};
    }
    SeriesResult result{};
    if (y >= -0.5) {
        result = gauss_series(a, b, c, y, options);
    } else {
        const double z = y / (y - 1.0);
        result = gauss_series(c - a, b, c, z, options);
        const double prefactor = std::pow(1.0 - y, -b);
        result.value *= prefactor;
        result.magnitude *= prefactor;
    }
    if (!result.converged) {
        std::ostringstream msg;
        msg << "hyp2f1(" << a << ", " << b << ", " << c << ", " << y << ") did not converge in "
            << options.max_terms << " terms";
        throw ConvergenceError(msg.str());
    }
    return result;
}

std::vector<double> hyp2f1_polynomial_coefficients(int n, double b, double c) {
    if (n < 0) {
        throw InvalidArgument("polynomial degree must be >= 0");
    }
    require_no_c_pole(c, n);
    std::vector<double> coef(static_cast<std::size_t>(n) + 1);
    coef[0] = 1.0;
    for (int k = 0; k < n; ++k) {
        const double kd = static_cast<double>(k);
        coef[k + 1] = coef[k] * (kd - n) * (b + kd) / ((c + kd) * (kd + 1.0));
    }
    return coef;
}

double hyp2f1_polynomial(int n, double b, double c, double y) {
    const std::vector<double> coef = hyp2f1_polynomial_coefficients(n, b, c);
    CompensatedSum sum;
    double power = 1.0;
    for (double t : coef) {
        sum.add(t * power);
        power *= y;
    }
    return sum.value();
}

double hyp1f1_polynomial(int n, double c, double z) {
    if (n < 0) {
        throw InvalidArgument("polynomial degree must be >= 0");
    }
    require_no_c_pole(c, n);
    CompensatedSum sum;
    double term = 1.0;
    sum.add(term);
    for (int k = 0; k < n; ++k) {
        const double kd = static_cast<double>(k);
        term *= (kd - n) / ((c + kd) * (kd + 1.0)) * z;
        sum.add(term);
    }
    return sum.value();
}

double hermite(int n, double z) {
    if (n < 0) {
        throw InvalidArgument("Hermite degree must be >= 0");
    }
    if (n == 0) {
        return 1.0;
    }
    double prev = 1.0;
    double cur = 2.0 * z;
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * z * cur - 2.0 * k * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

std::vector<std::int64_t> hermite_coefficients(int n) {
    if (n < 0 || n > 30) {
        throw InvalidArgument("hermite_coefficients supports 0 <= n <= 30");
    }
    std::vector<std::int64_t> prev{1};
    if (n == 0) {
        return prev;
    }
    std::vector<std::int64_t> cur{0, 2};
    for (int k = 1; k < n; ++k) {
        std::vector<std::int64_t> next(cur.size() + 1, 0);
        for (std::size_t i = 0; i < cur.size(); ++i) {
            next[i + 1] += 2 * cur[i];
        }
        for (std::size_t i = 0; i < prev.size(); ++i) {
            next[i] -= 2 * k * prev[i];
        }
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

double hyp2f1_conjugate_pair(double alpha, double kappa, double c, double y,
                             const SeriesOptions& options) {
    if (!(kappa > 0.0)) {
        throw InvalidArgument("conjugate-pair 2F1 needs kappa > 0");
    }
    if (y > 0.0) {
        throw InvalidArgument("conjugate-pair 2F1 is only provided for y <= 0");
    }
    require_no_c_pole(c);
    if (y == 0.0) {
        return 1.0;
    }
    if (y >= -0.5) {
        // (a)_k (conj a)_k = |(a)_k|^2 keeps every term real
        double term = 1.0;
        CompensatedSum sum;
        sum.add(1.0);
        int small_run = 0;
        for (int k = 0; k < options.max_terms; ++k) {
            const double kd = static_cast<double>(k);
            const double shifted = alpha + kd;
            term *= (shifted * shifted + kappa * kappa) / ((c + kd) * (kd + 1.0)) * y;
            sum.add(term);
            if (std::abs(term) <= options.tolerance * std::abs(sum.value())) {
                if (++small_run >= 2) {
                    return sum.value();
                }
            } else {
                small_run = 0;
            }
        }
        throw ConvergenceError("conjugate-pair hypergeometric series did not converge");
    }

    const cplx a(alpha, kappa);
    const cplx b(alpha, -kappa);
    if (y >= -3.0) {
        // Pfaff: (1-y)^(-a) 2F1(a, c-b; c; y/(y-1)), z in (1/3, 3/4]
        const double z = y / (y - 1.0);
        const cplx f = complex_gauss_series(a, c - b, cplx(c), z, options);
        return (std::exp(-a * std::log(1.0 - y)) * f).real();
    }
    // 1/y connection; the b-term is the complex conjugate of the a-term
    const double w = 1.0 / y;
    const cplx log_ratio =
        log_gamma(cplx(c)) + log_gamma(b - a) - log_gamma(b) - log_gamma(cplx(c) - a);
    const cplx f = complex_gauss_series(a, a - c + 1.0, a - b + 1.0, w, options);
    const cplx term = std::exp(log_ratio - a * std::log(-y)) * f;
    return 2.0 * term.real();
}

}  // namespace rho::special
