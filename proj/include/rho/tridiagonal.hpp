#pragma once

#include <vector>

namespace rho::linalg {

/// Real symmetric tridiagonal matrix: diag has n entries, off has n - 1.
struct SymmetricTridiagonal {
    std::vector<double> diag;
    std::vector<double> off;

    std::size_t size() const noexcept { return diag.size(); }
};

/// Number of eigenvalues strictly below `shift` (Sturm sequence count).
int count_below(const SymmetricTridiagonal& t, double shift);

/// Gershgorin interval containing the whole spectrum.
struct Interval {
    double lo;
    double hi;
};
Interval gershgorin_bounds(const SymmetricTridiagonal& t);

/// The k smallest eigenvalues in increasing order, by bisection to full
/// double precision.
std::vector<double> lowest_eigenvalues(const SymmetricTridiagonal& t, int k);

/// Unit-norm eigenvector for an (accurately computed) eigenvalue, by inverse
/// iteration. The sign is left as produced.
std::vector<double> eigenvector(const SymmetricTridiagonal& t, double eigenvalue);

}  // namespace rho::linalg
