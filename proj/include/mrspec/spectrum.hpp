#pragma once

// Closed-form bound-state spectrum of the D-dimensional Manning-Rosen problem
// under the short-range centrifugal replacement, plus the Hulthen and Coulomb
// limits.

#include "mrspec/model.hpp"

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mrspec {

/// Raised when a state requested as bound has epsilon <= 0.
class unbound_error : public std::runtime_error
{
  public:
    unbound_error(QuantumState state, double epsilon);

    QuantumState const& state() const { return state_; }
    double epsilon() const { return epsilon_; }

  private:
    QuantumState state_;
    double epsilon_;
};

/// Raised for malformed spectroscopic labels.
class parse_error : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

/// One bound state: energy and the intermediate shape parameters.
struct SpectrumEntry
{
    QuantumState state;
    double energy;
    double a_param;
    double eta;
    double epsilon;
};

/// A state for which the closed form gives epsilon <= 0.
struct Unbound
{
    QuantumState state;
    double epsilon;
};

using SpectrumResult = std::variant<SpectrumEntry, Unbound>;

/// Unclassified evaluation of the closed form. energy is the squared-bracket
/// value and is reported regardless of the sign of epsilon.
struct NuLevel
{
    double a_param;
    double eta;
    double epsilon;
    double energy;
};

/// Physical constants for the Hulthen / Coulomb limits. e2 is the squared
/// elementary charge in the chosen unit system (1 in atomic units).
struct Units
{
    double mu{1.0};
    double hbar{1.0};
    double e2{1.0};
};

/// a = sqrt((1 - 2 alpha)^2 + q^2 - 1). Throws domain_error on a negative radicand.
double shape_parameter(double alpha, QuantumState const& state);
double shape_parameter(PotentialParams const& params, QuantumState const& state);

NuLevel evaluate_level(PotentialParams const& params, QuantumState const& state);

/// Classifies through epsilon: bound iff epsilon > 0.
SpectrumResult solve_level(PotentialParams const& params, QuantumState const& state);

/// Bound-state energy; throws unbound_error if epsilon <= 0.
SpectrumEntry energy(PotentialParams const& params, QuantumState const& state);

/// All bound states n = 0, 1, ... at fixed (l, D), stopping at the first
/// epsilon <= 0 or at n_max.
std::vector<SpectrumEntry> bound_states(PotentialParams const& params, int l, int D,
                                        int n_max = 1000);

/// Value of A at which the state's binding energy vanishes.
double critical_coupling(QuantumState const& state, double alpha);

/// States (n, l', D') with D' + 2l' = D + 2l, l' >= 0, d_min <= D' <= d_max,
/// ascending in D'.
std::vector<QuantumState> degenerate_partners(QuantumState const& state, int d_min, int d_max);

/// 2n + D + 2l - 1
int hulthen_principal(QuantumState const& state);

/// Hulthen (alpha = 0 or 1) energy -hbar^2 (4A - N^2)^2 / (32 mu b^2 N^2);
/// throws unbound_error unless 4A > N^2.
double hulthen_energy(QuantumState const& state, double A, double b, Units const& units = {});

/// Screened-Coulomb form of the same level: strength Z e^2, screening delta = 1/b,
/// A = 2 mu Z e^2 b / hbar^2.
double screened_coulomb_energy(QuantumState const& state, double Z, double delta,
                               Units const& units = {});

/// Coupling A that maps a screened Coulomb potential of charge Z and range
/// b onto the Hulthen form.
double screened_coulomb_coupling(double Z, double b, Units const& units = {});

/// -4 eps0 / N^2 with eps0 = Z^2 hbar^2 / (2 mu a0^2), a0 = hbar^2/(mu e^2).
double coulomb_limit_energy(QuantumState const& state, double Z, Units const& units = {});

/// Parses "2p", "6g" ... into (n = N - l - 1, l); D is taken from the argument.
QuantumState parse_spectroscopic(std::string_view label, int D);

/// Inverse of parse_spectroscopic; falls back to "n<n>l<l>" beyond l = 5.
std::string spectroscopic_label(QuantumState const& state);

} // namespace mrspec
