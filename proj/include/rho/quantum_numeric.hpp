#pragma once

#include <functional>
#include <span>
#include <vector>

#include "rho/model.hpp"
#include "rho/spectrum.hpp"

namespace rho::numeric {

/// Computational variable u of the discretization:
///   linear (lambda = 0):  x = u
///   sinh   (lambda > 0):  x = sinh(u) / (omega sqrt(lambda))
///   sine   (lambda < 0):  x = R sin(u), u in (-pi/2, pi/2)
/// In u the weight and coefficients are smooth and the lambda < 0 horizon
/// sits at the finite ends u = +-pi/2.
enum class GridCoordinate { linear, sinh, sine };

/// Uniform grid in u on (-coordinate_cap, coordinate_cap) with Dirichlet ends.
struct GridSpec {
    int intervals = 2048;  // number of cells; the grid has intervals - 1 interior nodes
    GridCoordinate coordinate = GridCoordinate::linear;
    double coordinate_cap = 8.0;
};

/// Default grid for a model: sine coordinate for lambda < 0, otherwise a
/// truncation chosen from the decay of the bound states.
GridSpec default_grid(const ModelParameters& params, int intervals = 2048);

/// Truncation half-width L in x (R for the compactified lambda < 0 grid).
double domain_cap(const ModelParameters& params, const GridSpec& grid);

/// Maps the computational variable to x and evaluates the Sturm-Liouville
/// coefficients of -(P U')' + Q U = E^2 W U in that variable.
class CoordinateMap {
public:
    CoordinateMap(const ModelParameters& params, GridCoordinate coordinate);

    double x(double u) const;
    double stiffness(double u) const;  // P = p / (dx/du), p = sqrt(1 + lambda w^2 x^2)
    double weight(double u) const;     // W = (dx/du) / p
    double potential(double u) const;  // Q = V W, V = m^2 (1+(1+lambda) w^2 x^2) / (1+lambda w^2 x^2)

private:
    ModelParameters params_;
    GridCoordinate coordinate_;
    double scale_;  // omega sqrt(|lambda|), or 1 on the linear map
};

struct SampledMode {
    std::vector<double> x;
    std::vector<double> values;   // U at the interior nodes, discretely normalized
    std::vector<double> weights;  // W(u_i) h: sum values^2 weights = 1
};

struct NumericalSpectrum {
    std::vector<double> energies;          // Richardson-extrapolated E
    std::vector<double> energies_squared;  // Richardson-extrapolated E^2
    std::vector<double> raw_energies;      // finest grid, no extrapolation
    std::vector<double> estimated_error;   // |E from the two finest pairs| difference
    GridSpec grid;                         // coarsest grid after cap extension
    int below_threshold = -1;              // lambda > 0: eigenvalues under the continuum edge
    std::vector<SampledMode> modes;        // finest grid; only when requested
};

struct EigenOptions {
    double tolerance = 1e-6;  // relative error estimate that triggers "grid too coarse"
    bool want_modes = false;
    bool extend_cap = true;   // grow the truncation until the top mode's tail is negligible
};

/// First k eigenvalues of the self-adjoint Klein-Gordon operator
///   (sqrt(1+lambda w^2 x^2) U')' + (E^2 - V) U / sqrt(1+lambda w^2 x^2) = 0
/// by second-order finite differences on grids with grid.intervals, 2x and
/// 4x cells, followed by Richardson extrapolation in h^2.
///
/// Throws ConvergenceError when the error estimate exceeds the tolerance and
/// InvalidArgument when k exceeds the eigenvalues found below the continuum.
NumericalSpectrum sturm_liouville_eigen(const ModelParameters& params, int k, const GridSpec& grid,
                                        const EigenOptions& options = {});

/// Single-grid solve without extrapolation (used for convergence studies).
std::vector<double> finite_difference_energies_squared(const ModelParameters& params, int k,
                                                       const GridSpec& grid);

using ModeFunction = std::function<double(double)>;

struct QuadratureOptions {
    double rel_tol = 1e-12;
};

/// <U, U'> = integral over D of U U' / sqrt(1 + lambda w^2 x^2) dx.
///
/// Integrates in the grid's computational variable with Gauss-Legendre panels
/// (graded toward the lambda < 0 horizon), growing the truncation for
/// lambda >= 0 until the tail is negligible. Throws ConvergenceError when the
/// panels or the truncation cannot reach the tolerance.
double scalar_product(const ModelParameters& params, const ModeFunction& u, const ModeFunction& v,
                      const GridSpec& grid, const QuadratureOptions& options = {});

struct NormalizedMode {
    ModelParameters params;
    QuantumLevel level;
    double norm_factor;

    double operator()(double x) const;
};

/// N = <U, U>^(-1/2) for the analytic mode of `level`.
/// Throws NotNormalizable for a lambda > 0 level above n_max.
NormalizedMode normalize(const ModelParameters& params, const QuantumLevel& level,
                         const GridSpec& grid);

/// Factor that normalizes an arbitrary mode function.
double normalization_factor(const ModelParameters& params, const ModeFunction& u,
                            const GridSpec& grid);

using Matrix = std::vector<std::vector<double>>;

Matrix gram_matrix(const ModelParameters& params, std::span<const NormalizedMode> modes,
                   const GridSpec& grid);

/// Strict sign changes of the analytic mode at the grid's interior nodes.
int node_count(const ModelParameters& params, const QuantumLevel& level, const GridSpec& grid);

/// Strict sign changes of a sampled sequence (exact zeros are skipped).
int sign_changes(std::span<const double> values);

enum class GrowthVerdict { divergent, normalizable, inconclusive };

struct GrowthReport {
    std::vector<double> caps;   // truncation half-widths L (in x)
    std::vector<double> norms;  // integral over (-L, L) of |U|^2 w dx
    std::vector<double> growth_per_log;  // increment / ln(L_j / L_{j-1})
    bool monotone = false;
    bool plateau = false;
    GrowthVerdict verdict = GrowthVerdict::inconclusive;
};

struct GrowthOptions {
    double plateau_tol = 1e-6;     // relative last increment that counts as a plateau
    double sustained_ratio = 0.2;  // min growth_per_log / first growth_per_log for "no decay"
    double max_cap = 1e12;         // inconclusive reports extend caps by 10x up to here
};

/// Truncated norms of a lambda > 0 continuum mode over increasing caps.
GrowthReport norm_divergence_check(const ModelParameters& params, double energy, double s,
                                   std::span<const double> caps, const GrowthOptions& options = {});

/// Same report for a bound level (the normalizable contrast case).
GrowthReport norm_growth(const ModelParameters& params, const QuantumLevel& level,
                         std::span<const double> caps, const GrowthOptions& options = {});

}  // namespace rho::numeric
