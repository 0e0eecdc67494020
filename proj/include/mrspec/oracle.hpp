#pragma once

// Independent finite-difference eigensolver for the radial equation
//   -g'' + kappa V_eff(r) g = kappa E g,   g(r_min) = g(r_max) = 0.
//
// The three-point stencil is applied on a grid that is uniform either in r or
// in x = ln r. On the logarithmic grid the substitution g = sqrt(r) u gives
//   -u'' + (1/4 + r^2 kappa V_eff) u = kappa E r^2 u,
// a symmetric tridiagonal pencil (A, W) with W = diag(r^2). Eigenvalues are
// found by Sturm-sequence bisection on A - lambda W, eigenvectors by inverse
// iteration.

#include "mrspec/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mrspec {

class solver_error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

enum class GridKind
{
    Uniform,     ///< equal steps in r
    Logarithmic, ///< equal steps in ln r
};

std::string to_string(GridKind kind);

struct RadialGrid
{
    double r_min{1e-6};
    double r_max{40.0};
    int n_points{8001};
    GridKind kind{GridKind::Logarithmic};

    /// Step in the grid variable (r or ln r).
    double spacing() const;

    /// Radius of node i, 0 <= i < n_points.
    double radius(int i) const;

    /// Same range with the step halved (2 n_points - 1 nodes).
    RadialGrid refined() const;

    void validate() const;
};

/// 8001 log-spaced points, r_max = max(40 b, 30 b / epsilon) (40 b when
/// epsilon <= 0). Near the origin g ~ r^((1 + a)/2) and the Dirichlet wall at
/// r_min shifts the energy by O(r_min^a), so r_min = b 10^(-10/a), clamped to
/// [1e-30 b, 1e-6 b].
RadialGrid default_grid(double b, double epsilon_estimate, double a_param);

/// default_grid with epsilon and a taken from the closed form for the state.
RadialGrid default_grid(PotentialParams const& params, QuantumState const& state);

/// Symmetric tridiagonal pencil A - lambda W, interior nodes only.
struct TridiagonalPencil
{
    std::vector<double> diag;
    std::vector<double> offdiag; ///< size diag.size() - 1
    std::vector<double> weight;  ///< positive diagonal of W

    std::size_t size() const { return diag.size(); }

    /// Number of eigenvalues strictly below lambda (Sylvester inertia of A - lambda W).
    int count_below(double lambda) const;

    /// Lower bound for every eigenvalue (Gershgorin on A - lambda W).
    double lower_bound() const;

    /// k-th eigenvalue (0-based) by bisection in [lo, hi] to absolute tolerance tol.
    double bisect(int k, double lo, double hi, double tol) const;

    /// Eigenvector for an isolated eigenvalue by inverse iteration.
    std::vector<double> eigenvector(double lambda, int iterations = 4) const;
};

/// Discretized radial operator in scaled units (lambda = kappa E).
TridiagonalPencil build_pencil(PotentialParams const& params, int D, int l, CentrifugalMode mode,
                               RadialGrid const& grid);

struct OracleResult
{
    std::vector<double> eigenvalues; ///< energies, ascending
    std::vector<int> node_counts;
    RadialGrid grid;
    CentrifugalMode mode;
    std::optional<std::vector<double>> richardson_estimate;
    bool truncated{false};           ///< fewer than k bound eigenvalues exist
    std::vector<std::string> warnings;
};

struct SolveOptions
{
    bool richardson{true};
    double tolerance{1e-12}; ///< absolute, in kappa E units
};

/// Lowest k bound eigenvalues of the radial equation for (D, l).
OracleResult solve_radial(PotentialParams const& params, int D, int l, CentrifugalMode mode,
                          RadialGrid const& grid, int k, SolveOptions const& options = {});

struct ApproximationAudit
{
    double e_closed;
    double e_exact;
    double e_approx;
    double rel_error_exact;  ///< |e_closed - e_exact| / |e_exact|
    double rel_error_approx; ///< |e_closed - e_approx| / |e_approx|
};

/// Closed-form energy against the oracle with the exact and the approximated
/// centrifugal term. Uses Richardson estimates and default_grid when grid is empty.
ApproximationAudit approximation_audit(PotentialParams const& params, QuantumState const& state,
                                       std::optional<RadialGrid> grid = std::nullopt);

/// Single-mode oracle energy for one state (Richardson estimate).
double oracle_energy(PotentialParams const& params, QuantumState const& state,
                     CentrifugalMode mode, std::optional<RadialGrid> grid = std::nullopt);

} // namespace mrspec
