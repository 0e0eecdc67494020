#pragma once

// Manning-Rosen potential, its geometry and the effective radial potential.

#include <optional>
#include <stdexcept>
#include <string>

namespace mrspec {

/// Raised for arguments outside the mathematical domain of an operation
/// (r <= 0, negative radicands, broken quantum-number hierarchies).
class domain_error : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

/// Physical constants and Manning-Rosen shape parameters.
///
/// Defaults to atomic units (hbar = mu = 1). The length b sets the range of
/// the potential; A and alpha are dimensionless.
struct PotentialParams
{
    double A{0.0};
    double alpha{0.0};
    double b{1.0};
    double mu{1.0};
    double hbar{1.0};

    /// 2 mu / hbar^2
    double kappa() const { return 2.0 * mu / (hbar * hbar); }

    /// hbar^2 / (2 mu b^2), the natural energy unit of the problem.
    double energy_scale() const { return hbar * hbar / (2.0 * mu * b * b); }

    /// alpha(alpha - 1), evaluated in a form symmetric under alpha -> 1 - alpha.
    double repulsion() const;

    /// Throws domain_error unless b, mu, hbar are positive and finite.
    void validate() const;

    /// Convenience constructor for the reference-table convention A = ratio * b.
    static PotentialParams from_inverse_range(double inv_b, double A_over_b, double alpha,
                                              double mu = 1.0, double hbar = 1.0);
};

/// alpha(alpha - 1) computed as ((1-2 alpha)^2 - 1)/4 with the factored
/// difference of squares, so that alpha and 1 - alpha give identical bits
/// whenever 1 - 2 alpha is exact.
double alpha_repulsion(double alpha);

/// Radial / orbital / dimension triple.
struct QuantumState
{
    int n{0};
    int l{0};
    int D{3};

    /// Combined index D + 2l - 2; every spectral quantity depends on (l, D)
    /// only through it.
    int q() const { return D + 2 * l - 2; }

    void validate() const;

    bool operator==(QuantumState const&) const = default;
};

enum class CentrifugalMode
{
    Exact,
    Approximated
};

std::string to_string(CentrifugalMode mode);

struct PotentialMinimum
{
    double r0;
    double v_min;
};

double potential_value(PotentialParams const& p, double r);

/// Same potential written as -(C e + D e^2)/(1 - e)^2 with C = A and
/// D = -A - alpha(alpha - 1), e = exp(-r/b).
double potential_value_cd(PotentialParams const& p, double r);

/// Location and depth of the potential well. Empty when alpha(alpha-1) <= 0
/// or A <= 0: the log argument 1 + 2 alpha(alpha-1)/A is then <= 1 and r0
/// would not be positive.
std::optional<PotentialMinimum> potential_minimum(PotentialParams const& p);

/// d^2V/dr^2 at the minimum; empty under the same conditions as
/// potential_minimum.
std::optional<double> potential_curvature(PotentialParams const& p);

/// Centrifugal kernel C(r): 1/r^2 or its short-range replacement
/// e^{-r/b} / (b^2 (1 - e^{-r/b})^2).
double centrifugal_kernel(double b, double r, CentrifugalMode mode);

/// V(r) + (hbar^2/2mu) [(q^2 - 1)/4] C(r), in energy units.
double effective_potential(PotentialParams const& p, QuantumState const& s, double r,
                           CentrifugalMode mode);

/// Hulthen potential -V0 e^{-delta r}/(1 - e^{-delta r}).
double hulthen_potential(double V0, double delta, double r);

/// Coulomb potential -Z e^2 / r.
double coulomb_potential(double Ze2, double r);

} // namespace mrspec
