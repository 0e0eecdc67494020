#pragma once

// Log-gamma, Jacobi polynomials and Gauss-Legendre quadrature.

#include <functional>
#include <span>
#include <vector>

namespace mrspec::specfun {

/// ln Gamma(x) for x > 0. Throws domain_error otherwise.
double ln_gamma(double x);

/// ln of the Beta function B(a, b), a, b > 0.
double ln_beta(double a, double b);

/// Jacobi polynomial P_n^{(a,b)}(x) by the ascending three-term recurrence.
double jacobi(int n, double a, double b, double x);

/// Gauss-Legendre rule on [-1, 1]. Nodes ascending and exactly mirrored.
class QuadratureRule
{
  public:
    explicit QuadratureRule(int order);

    int order() const { return static_cast<int>(nodes_.size()); }
    std::span<double const> nodes() const { return nodes_; }
    std::span<double const> weights() const { return weights_; }

    /// Integral of f over [lo, hi] with the affinely mapped rule.
    double integrate(std::function<double(double)> const& f, double lo, double hi) const;

  private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

QuadratureRule gauss_legendre(int order);

/// Process-wide cache of rules; entries are immutable once built.
QuadratureRule const& cached_gauss_legendre(int order);

/// Neumaier-compensated sum.
class CompensatedSum
{
  public:
    void add(double v);
    double value() const { return sum_ + comp_; }

  private:
    double sum_{0.0};
    double comp_{0.0};
};

} // namespace mrspec::specfun
