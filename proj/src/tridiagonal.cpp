#include "rho/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "rho/errors.hpp"

namespace rho::linalg {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_shape(const SymmetricTridiagonal& t) {
    if (t.diag.empty() || t.off.size() + 1 != t.diag.size()) {
        throw InvalidArgument("tridiagonal matrix needs n diagonal and n-1 off-diagonal entries");
    }
}

double pivot_floor(const SymmetricTridiagonal& t) {
    double max_off2 = 0.0;
    for (double e : t.off) {
        max_off2 = std::max(max_off2, e * e);
    }
    return std::max(max_off2, 1.0) * std::numeric_limits<double>::min();
}

int sturm_count(const SymmetricTridiagonal& t, double shift, double pivmin) {
    int count = 0;
    double q = t.diag[0] - shift;
    if (std::abs(q) < pivmin) {
        q = -pivmin;
    }
    if (q < 0.0) {
        ++count;
    }
    for (std::size_t i = 1; i < t.diag.size(); ++i) {
        q = t.diag[i] - shift - t.off[i - 1] * t.off[i - 1] / q;
        if (std::abs(q) < pivmin) {
            q = -pivmin;
        }
        if (q < 0.0) {
            ++count;
        }
    }
    return count;
}

}  // namespace

int count_below(const SymmetricTridiagonal& t, double shift) {
    require_shape(t);
    return sturm_count(t, shift, pivot_floor(t));
}

Interval gershgorin_bounds(const SymmetricTridiagonal& t) {
    require_shape(t);
    const std::size_t n = t.size();
    Interval bounds{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest()};
    for (std::size_t i = 0; i < n; ++i) {
        double radius = 0.0;
        if (i > 0) {
            radius += std::abs(t.off[i - 1]);
        }
        if (i + 1 < n) {
            radius += std::abs(t.off[i]);
        }
        bounds.lo = std::min(bounds.lo, t.diag[i] - radius);
        bounds.hi = std::max(bounds.hi, t.diag[i] + radius);
    }
    const double pad = 2.0 * kEps * std::max(std::abs(bounds.lo), std::abs(bounds.hi)) +
                       std::numeric_limits<double>::min();
    return {bounds.lo - pad, bounds.hi + pad};
}

std::vector<double> lowest_eigenvalues(const SymmetricTridiagonal& t, int k) {
    require_shape(t);
    if (k < 1 || static_cast<std::size_t>(k) > t.size()) {
        throw InvalidArgument("requested eigenvalue count out of range");
    }
    const double pivmin = pivot_floor(t);
    const Interval g = gershgorin_bounds(t);
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(k));
    double lo_start = g.lo;
    for (int j = 0; j < k; ++j) {
        // invariant: count(lo) <= j < count(hi)
        double lo = lo_start;
        double hi = g.hi;
        for (int iter = 0; iter < 400; ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) {
                break;
            }
            if (hi - lo <= 2.0 * kEps * std::max(std::abs(lo), std::abs(hi)) + pivmin) {
                break;
            }
            if (sturm_count(t, mid, pivmin) > j) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        values.push_back(0.5 * (lo + hi));
        lo_start = lo;
    }
    return values;
}

std::vector<double> eigenvector(const SymmetricTridiagonal& t, double eigenvalue) {
    require_shape(t);
    const std::size_t n = t.size();
    if (n == 1) {
        return {1.0};
    }
    const Interval g = gershgorin_bounds(t);
    const double scale = std::max(std::abs(g.lo), std::abs(g.hi));
    const double tiny = kEps * scale;

    // LU with partial pivoting of (T - eigenvalue I); U has two superdiagonals.
    std::vector<double> u0(n), u1(n, 0.0), u2(n, 0.0), mult(n, 0.0);
    std::vector<char> swapped(n, 0);
    double d = t.diag[0] - eigenvalue;
    double e = n > 1 ? t.off[0] : 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double sub = t.off[i];
        const double next_d = t.diag[i + 1] - eigenvalue;
        const double next_e = i + 2 < n ? t.off[i + 1] : 0.0;
        if (std::abs(d) >= std::abs(sub)) {
            if (d == 0.0) {
                d = tiny;
            }
            u0[i] = d;
            u1[i] = e;
            u2[i] = 0.0;
            mult[i] = sub / d;
            d = next_d - mult[i] * e;
            e = next_e;
        } else {
            swapped[i] = 1;
            u0[i] = sub;
            u1[i] = next_d;
            u2[i] = next_e;
            mult[i] = d / sub;
            const double new_d = e - mult[i] * next_d;
            e = -mult[i] * next_e;
            d = new_d;
        }
    }
    u0[n - 1] = d == 0.0 ? tiny : d;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(u0[i]) < tiny) {
            u0[i] = std::copysign(tiny, u0[i] == 0.0 ? 1.0 : u0[i]);
        }
    }

    auto solve = [&](std::vector<double>& b) {
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (swapped[i]) {
                std::swap(b[i], b[i + 1]);
            }
            b[i + 1] -= mult[i] * b[i];
        }
        for (std::size_t ii = n; ii-- > 0;) {
            double v = b[ii];
            if (ii + 1 < n) {
                v -= u1[ii] * b[ii + 1];
            }
            if (ii + 2 < n) {
                v -= u2[ii] * b[ii + 2];
            }
            b[ii] = v / u0[ii];
        }
    };
    auto normalize = [](std::vector<double>& v) {
        double norm = 0.0;
        for (double x : v) {
            norm += x * x;
        }
        norm = std::sqrt(norm);
        for (double& x : v) {
            x /= norm;
        }
    };

    // fixed seed: the start vector must not be orthogonal to odd modes
    std::mt19937_64 rng(0x5eedULL);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) {
        x = dist(rng);
    }
    normalize(v);
    for (int iter = 0; iter < 4; ++iter) {
        solve(v);
        normalize(v);
    }
    return v;
}

}  // namespace rho::linalg
