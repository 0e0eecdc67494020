#include "mrspec/oracle.hpp"

#include "mrspec/spectrum.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <sstream>

namespace mrspec {

std::string to_string(GridKind kind)
{
    return kind == GridKind::Uniform ? "uniform" : "log";
}

double RadialGrid::spacing() const
{
    if (kind == GridKind::Uniform) {
        return (r_max - r_min) / (n_points - 1);
    }
    return std::log(r_max / r_min) / (n_points - 1);
}

double RadialGrid::radius(int i) const
{
    if (i == n_points - 1) {
        return r_max;
    }
    if (kind == GridKind::Uniform) {
        return r_min + i * spacing();
    }
    return r_min * std::exp(i * spacing());
}

RadialGrid RadialGrid::refined() const
{
    RadialGrid g = *this;
    g.n_points = 2 * n_points - 1;
    return g;
}

void RadialGrid::validate() const
{
    if (!(r_min > 0.0) || !(r_max > r_min) || n_points < 3) {
        std::ostringstream msg;
        msg << "invalid radial grid: r_min=" << r_min << ", r_max=" << r_max
            << ", n_points=" << n_points << " (need 0 < r_min < r_max, n_points >= 3)";
        throw domain_error(msg.str());
    }
}

RadialGrid default_grid(double b, double epsilon_estimate, double a_param)
{
    double r_max = 40.0 * b;
    if (epsilon_estimate > 0.0) {
        r_max = std::max(r_max, 30.0 * b / epsilon_estimate);
    }
    double r_min = 1e-30;
    if (a_param > 0.0) {
        r_min = std::clamp(std::pow(10.0, -10.0 / a_param), 1e-30, 1e-6);
    }
    return RadialGrid{r_min * b, r_max, 8001, GridKind::Logarithmic};
}

RadialGrid default_grid(PotentialParams const& params, QuantumState const& state)
{
    auto const lvl = evaluate_level(params, state);
    return default_grid(params.b, lvl.epsilon, lvl.a_param);
}

// ---------------------------------------------------------------------------

int TridiagonalPencil::count_below(double lambda) const
{
    std::size_t const n = diag.size();
    double pivmin = DBL_MIN;
    for (double e : offdiag) {
        pivmin = std::max(pivmin, DBL_MIN * e * e);
    }
    int count = 0;
    double d = diag[0] - lambda * weight[0];
    if (std::abs(d) <= pivmin) {
        d = -pivmin;
    }
    if (d < 0.0) {
        ++count;
    }
    for (std::size_t i = 1; i < n; ++i) {
        double const e = offdiag[i - 1];
        d = (diag[i] - lambda * weight[i]) - e * e / d;
        if (std::abs(d) <= pivmin) {
            d = -pivmin;
        }
        if (d < 0.0) {
            ++count;
        }
    }
    return count;
}

double TridiagonalPencil::lower_bound() const
{
    std::size_t const n = diag.size();
    double lo = INFINITY;
    for (std::size_t i = 0; i < n; ++i) {
        double radius = 0.0;
        if (i > 0) {
            radius += std::abs(offdiag[i - 1]);
        }
        if (i + 1 < n) {
            radius += std::abs(offdiag[i]);
        }
        // margin keeps the bound strict after rounding in diag - lambda * weight
        double const margin = 8.0 * DBL_EPSILON * (std::abs(diag[i]) + radius + DBL_MIN);
        lo = std::min(lo, (diag[i] - radius - margin) / weight[i]);
    }
    return lo;
}

double TridiagonalPencil::bisect(int k, double lo, double hi, double tol) const
{
    if (count_below(lo) > k || count_below(hi) <= k) {
        throw solver_error("bisection bracket does not enclose the requested eigenvalue");
    }
    for (int it = 0; it < 400 && hi - lo > tol; ++it) {
        double const mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (count_below(mid) > k) {
            hi = mid;
        }
        else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<double> TridiagonalPencil::eigenvector(double lambda, int iterations) const
{
    std::size_t const n = diag.size();
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        scale = std::max(scale, std::abs(diag[i] - lambda * weight[i]));
    }
    double const tiny = std::max(scale, 1.0) * DBL_EPSILON;

    std::vector<double> x(n, 1.0);
    std::vector<double> d(n), du(n), dl(n), rhs(n);
    for (int it = 0; it < iterations; ++it) {
        // Gaussian elimination with partial pivoting on (A - lambda W) y = W x.
        for (std::size_t i = 0; i < n; ++i) {
            d[i] = diag[i] - lambda * weight[i];
            rhs[i] = weight[i] * x[i];
        }
        for (std::size_t i = 0; i + 1 < n; ++i) {
            du[i] = offdiag[i];
            dl[i] = offdiag[i];
        }
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (std::abs(d[i]) >= std::abs(dl[i])) {
                if (d[i] == 0.0) {
                    d[i] = tiny;
                }
                double const fact = dl[i] / d[i];
                d[i + 1] -= fact * du[i];
                rhs[i + 1] -= fact * rhs[i];
                dl[i] = 0.0;
            }
            else {
                double const fact = d[i] / dl[i];
                d[i] = dl[i];
                double temp = d[i + 1];
                d[i + 1] = du[i] - fact * temp;
                if (i + 2 < n) {
                    dl[i] = du[i + 1];
                    du[i + 1] = -fact * dl[i];
                }
                else {
                    dl[i] = 0.0;
                }
                du[i] = temp;
                temp = rhs[i];
                rhs[i] = rhs[i + 1];
                rhs[i + 1] = temp - fact * rhs[i + 1];
            }
        }
        if (std::abs(d[n - 1]) < tiny) {
            d[n - 1] = tiny;
        }
        x[n - 1] = rhs[n - 1] / d[n - 1];
        if (n > 1) {
            x[n - 2] = (rhs[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
        }
        for (std::size_t ii = n - 2; ii-- > 0;) {
            x[ii] = (rhs[ii] - du[ii] * x[ii + 1] - dl[ii] * x[ii + 2]) / d[ii];
        }
        double norm = 0.0;
        for (double v : x) {
            norm = std::max(norm, std::abs(v));
        }
        if (!(norm > 0.0) || !std::isfinite(norm)) {
            throw solver_error("inverse iteration produced a non-finite vector");
        }
        for (double& v : x) {
            v /= norm;
        }
    }
    return x;
}

TridiagonalPencil build_pencil(PotentialParams const& params, int D, int l, CentrifugalMode mode,
                               RadialGrid const& grid)
{
    grid.validate();
    QuantumState const s{0, l, D};
    s.validate();
    double const kappa = params.kappa();
    double const h = grid.spacing();
    double const inv_h2 = 1.0 / (h * h);
    int const m = grid.n_points - 2;

    TridiagonalPencil p;
    p.diag.resize(m);
    p.weight.resize(m);
    p.offdiag.assign(m > 0 ? m - 1 : 0, -inv_h2);
    for (int i = 0; i < m; ++i) {
        double const r = grid.radius(i + 1);
        double const w = kappa * effective_potential(params, s, r, mode);
        if (grid.kind == GridKind::Uniform) {
            p.diag[i] = 2.0 * inv_h2 + w;
            p.weight[i] = 1.0;
        }
        else {
            p.diag[i] = 2.0 * inv_h2 + 0.25 + r * r * w;
            p.weight[i] = r * r;
        }
        if (!std::isfinite(p.diag[i])) {
            std::ostringstream msg;
            msg << "effective potential not finite at r=" << r;
            throw solver_error(msg.str());
        }
    }
    return p;
}

namespace {

struct GridSolve
{
    std::vector<double> lambdas;
    std::vector<int> nodes;
    int bound_count;
};

GridSolve solve_on_grid(TridiagonalPencil const& pencil, int k, double tol, bool with_vectors)
{
    GridSolve out;
    out.bound_count = pencil.count_below(0.0);
    int const kk = std::min(k, out.bound_count);
    double const lo = pencil.lower_bound();
    for (int i = 0; i < kk; ++i) {
        double const lam = pencil.bisect(i, lo, 0.0, tol);
        out.lambdas.push_back(lam);
        if (with_vectors) {
            auto const v = pencil.eigenvector(lam);
            double vmax = 0.0;
            for (double x : v) {
                vmax = std::max(vmax, std::abs(x));
            }
            std::vector<double> significant;
            significant.reserve(v.size());
            for (double x : v) {
                significant.push_back(std::abs(x) > 1e-9 * vmax ? x : 0.0);
            }
            int changes = 0;
            int last = 0;
            for (double x : significant) {
                int const sg = (x > 0.0) - (x < 0.0);
                if (sg != 0) {
                    if (last != 0 && sg != last) {
                        ++changes;
                    }
                    last = sg;
                }
            }
            out.nodes.push_back(changes);
        }
    }
    return out;
}

void check_resolution(PotentialParams const& params, int D, int l, CentrifugalMode mode,
                      RadialGrid const& grid, double lambda_top, std::vector<std::string>& warnings)
{
    QuantumState const s{0, l, D};
    double const kappa = params.kappa();
    double const h = grid.spacing();
    double worst = INFINITY;
    double worst_r = 0.0;
    for (int i = 1; i + 1 < grid.n_points; ++i) {
        double const r = grid.radius(i);
        double const k2 = lambda_top - kappa * effective_potential(params, s, r, mode);
        if (k2 <= 0.0) {
            continue;
        }
        double const dr = grid.kind == GridKind::Uniform ? h : r * h;
        double const per_wavelength = 2.0 * std::numbers::pi / (std::sqrt(k2) * dr);
        if (per_wavelength < worst) {
            worst = per_wavelength;
            worst_r = r;
        }
    }
    if (worst < 20.0) {
        std::ostringstream msg;
        msg << "grid under-resolves the highest state: " << worst
            << " points per local wavelength at r=" << worst_r << " (want >= 20)";
        warnings.push_back(msg.str());
    }
}

} // namespace

OracleResult solve_radial(PotentialParams const& params, int D, int l, CentrifugalMode mode,
                          RadialGrid const& grid, int k, SolveOptions const& options)
{
    params.validate();
    if (k < 1) {
        throw std::invalid_argument("solve_radial: k must be >= 1");
    }
    double const kappa = params.kappa();

    auto const pencil = build_pencil(params, D, l, mode, grid);
    auto const coarse = solve_on_grid(pencil, k, options.tolerance, true);

    OracleResult res;
    res.grid = grid;
    res.mode = mode;
    res.truncated = static_cast<int>(coarse.lambdas.size()) < k;
    for (double lam : coarse.lambdas) {
        res.eigenvalues.push_back(lam / kappa);
    }
    res.node_counts = coarse.nodes;

    if (res.truncated) {
        std::ostringstream msg;
        msg << "only " << coarse.lambdas.size() << " bound eigenvalue(s) below 0, " << k
            << " requested";
        res.warnings.push_back(msg.str());
    }
    for (std::size_t i = 0; i < res.node_counts.size(); ++i) {
        if (res.node_counts[i] != static_cast<int>(i)) {
            std::ostringstream msg;
            msg << "eigenvector " << i << " has " << res.node_counts[i] << " nodes";
            res.warnings.push_back(msg.str());
        }
    }
    if (!coarse.lambdas.empty()) {
        check_resolution(params, D, l, mode, grid, coarse.lambdas.back(), res.warnings);
    }

    if (options.richardson && !coarse.lambdas.empty()) {
        auto const fine_grid = grid.refined();
        auto const fine_pencil = build_pencil(params, D, l, mode, fine_grid);
        auto const fine = solve_on_grid(fine_pencil, static_cast<int>(coarse.lambdas.size()),
                                        options.tolerance, false);
        std::vector<double> est;
        for (std::size_t i = 0; i < fine.lambdas.size(); ++i) {
            est.push_back((4.0 * fine.lambdas[i] - coarse.lambdas[i]) / 3.0 / kappa);
        }
        res.richardson_estimate = std::move(est);
    }
    return res;
}

double oracle_energy(PotentialParams const& params, QuantumState const& state,
                     CentrifugalMode mode, std::optional<RadialGrid> grid)
{
    state.validate();
    if (!grid) {
        grid = default_grid(params, state);
    }
    auto const res = solve_radial(params, state.D, state.l, mode, *grid, state.n + 1);
    if (res.truncated || !res.richardson_estimate ||
        static_cast<int>(res.richardson_estimate->size()) <= state.n) {
        std::ostringstream msg;
        msg << "oracle found no bound eigenvalue with index " << state.n << " for l=" << state.l
            << ", D=" << state.D << " (" << to_string(mode) << " centrifugal term)";
        throw solver_error(msg.str());
    }
    return (*res.richardson_estimate)[state.n];
}

ApproximationAudit approximation_audit(PotentialParams const& params, QuantumState const& state,
                                       std::optional<RadialGrid> grid)
{
    auto const entry = energy(params, state);
    if (!grid) {
        grid = default_grid(params.b, entry.epsilon, entry.a_param);
    }
    ApproximationAudit a{};
    a.e_closed = entry.energy;
    a.e_exact = oracle_energy(params, state, CentrifugalMode::Exact, grid);
    a.e_approx = oracle_energy(params, state, CentrifugalMode::Approximated, grid);
    a.rel_error_exact = std::abs(a.e_closed - a.e_exact) / std::abs(a.e_exact);
    a.rel_error_approx = std::abs(a.e_closed - a.e_approx) / std::abs(a.e_approx);
    return a;
}

} // namespace mrspec
