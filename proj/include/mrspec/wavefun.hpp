#pragma once

// Normalized radial wavefunctions g(r) = N z^eps (1-z)^(1+eta) P_n^(2eps, 2eta+1)(1-2z),
// z = exp(-r/b), and the hyperspherical angular factors.

#include "mrspec/model.hpp"
#include "mrspec/spectrum.hpp"

#include <complex>
#include <span>
#include <vector>

namespace mrspec {

/// Raised when the adaptive quadrature hits its order cap.
class quadrature_error : public std::runtime_error
{
  public:
    quadrature_error(std::string const& what, double last, double previous)
      : std::runtime_error(what)
      , last_(last)
      , previous_(previous)
    {
    }
    double last() const { return last_; }
    double previous() const { return previous_; }

  private:
    double last_;
    double previous_;
};

/// Immutable normalized radial solution.
class RadialSolution
{
  public:
    RadialSolution(SpectrumEntry entry, double b, double norm_constant);

    SpectrumEntry const& entry() const { return entry_; }
    double b() const { return b_; }
    double norm_constant() const { return norm_; }
    int node_count() const { return nodes_; }

    /// Radius beyond which |g| stays below 1e-12 of its maximum.
    double cutoff_radius() const { return r_cut_; }

    double value_z(double z) const;
    double value_r(double r) const;

  private:
    double kernel(double ln_z, double ln_1mz, double x) const;

    SpectrumEntry entry_;
    double b_;
    double norm_;
    double r_cut_{0.0};
    int nodes_{0};
};

/// Builds the normalized solution for a bound state; throws unbound_error otherwise.
/// Falls back to normalization_quadrature where the closed-form sum is ill-conditioned.
RadialSolution radial_wavefunction(PotentialParams const& params, QuantumState const& state);

/// s(n) = b * integral of z^(2eps-1) (1-z)^(2eta+2) P^2 over [0, 1], as a double
/// sum of Beta functions (both Jacobi factors expanded in powers of 1 - z).
/// Throws domain_error if the sum is not positive, or if it cancels too much to
/// be trusted to 1e-12 in 113-bit arithmetic.
double normalization_sum(SpectrumEntry const& entry, double b);

/// 1 / sqrt(s(n)).
double normalization_closed_form(SpectrumEntry const& entry, double b);

struct QuadratureNormalization
{
    double norm_constant; ///< 1 / sqrt(b I)
    double integral;      ///< I, independent of b
    int order;            ///< Gauss-Legendre order at convergence
};

/// Adaptive Gauss-Legendre evaluation of the same integral (orders 16..4096,
/// relative tolerance 1e-10).
QuadratureNormalization normalization_quadrature(PotentialParams const& params,
                                                 SpectrumEntry const& entry);

/// Integral of |g(r)|^2 over r in (0, cutoff], by composite quadrature in r.
double radial_norm_integral(RadialSolution const& sol);

/// Sign changes of f on a geometric grid of `points` radii in [r_lo, r_hi].
int count_sign_changes(std::span<double const> values);

std::vector<double> geometric_grid(double lo, double hi, int points);

struct WaveSample
{
    double r;
    double z;
    double g;
    double g2;
};

/// Samples on a geometric grid from 1e-4 b to the cutoff radius.
std::vector<WaveSample> sample_wavefunction(RadialSolution const& sol, int samples);

/// l_1 <= l_2 <= ... <= l_{D-1} = l; l_1 may be negative (azimuthal sign).
struct AngularMultiIndex
{
    std::vector<int> l_values;

    int dimension() const { return static_cast<int>(l_values.size()) + 1; }

    /// Level l_j for 1 <= j <= D-1, with |l_1| for j = 1.
    int level(int j) const;

    /// n_j = l_j - l_{j-1} for 2 <= j <= D-1.
    int angular_degree(int j) const;

    /// Throws domain_error on hierarchy violation or l_{D-1} != l.
    void validate(int l) const;

    /// Highest-weight index (l, l, ..., l) for dimension D.
    static AngularMultiIndex stretched(int D, int l);
};

/// Lambda_p = l_p (l_p + p - 1)
double separation_constant(AngularMultiIndex const& idx, int p);

/// Normalization constant of the j-th polar factor (quadrature in theta).
double angular_norm(int j, AngularMultiIndex const& idx);

/// j = 1: exp(i l_1 theta)/sqrt(2 pi). j >= 2: N sin^{l_{j-1}} P_{n_j}^{(L,L)}(cos theta),
/// L = l_{j-1} + (j-2)/2, normalized with weight sin^{j-1}.
std::complex<double> angular_factor(int j, AngularMultiIndex const& idx, double theta);

/// psi = r^{-(D-1)/2} g(r) prod_j H_j(theta_j). angles = (theta_1, ..., theta_{D-1}).
std::complex<double> total_wavefunction(PotentialParams const& params, QuantumState const& state,
                                        AngularMultiIndex const& idx, double r,
                                        std::span<double const> angles);

/// Same, reusing an already built radial solution.
std::complex<double> total_wavefunction(RadialSolution const& radial, AngularMultiIndex const& idx,
                                        double r, std::span<double const> angles);

} // namespace mrspec
