#include "mrspec/model.hpp"

#include <cmath>
#include <sstream>

namespace mrspec {

double alpha_repulsion(double alpha)
{
    double const s = 1.0 - 2.0 * alpha;
    // + 0.0: alpha = 1 would otherwise give -0
    return (s - 1.0) * (s + 1.0) / 4.0 + 0.0;
}

double PotentialParams::repulsion() const
{
    return alpha_repulsion(alpha);
}

void PotentialParams::validate() const
{
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(b) || !positive(mu) || !positive(hbar)) {
        std::ostringstream msg;
        msg << "potential parameters require b, mu, hbar > 0 (got b=" << b << ", mu=" << mu
            << ", hbar=" << hbar << ")";
        throw domain_error(msg.str());
    }
    if (!std::isfinite(A) || !std::isfinite(alpha)) {
        throw domain_error("potential parameters A and alpha must be finite");
    }
}

PotentialParams PotentialParams::from_inverse_range(double inv_b, double A_over_b, double alpha,
                                                    double mu, double hbar)
{
    if (!(inv_b > 0.0)) {
        throw domain_error("inverse range 1/b must be positive");
    }
    double const b = 1.0 / inv_b;
    return PotentialParams{A_over_b * b, alpha, b, mu, hbar};
}

void QuantumState::validate() const
{
    if (n < 0 || l < 0 || D < 2) {
        std::ostringstream msg;
        msg << "invalid quantum state (n=" << n << ", l=" << l << ", D=" << D
            << "): need n >= 0, l >= 0, D >= 2";
        throw domain_error(msg.str());
    }
}

std::string to_string(CentrifugalMode mode)
{
    return mode == CentrifugalMode::Exact ? "exact" : "approx";
}

namespace {

void require_positive_r(double r)
{
    if (!(r > 0.0)) {
        std::ostringstream msg;
        msg << "radius must be positive (got r=" << r << ")";
        throw domain_error(msg.str());
    }
}

} // namespace

double potential_value(PotentialParams const& p, double r)
{
    require_positive_r(r);
    // y = e^{-x}/(1 - e^{-x}) = 1/expm1(x)
    double const y = 1.0 / std::expm1(r / p.b);
    return -p.energy_scale() * y * (p.A - p.repulsion() * y);
}

double potential_value_cd(PotentialParams const& p, double r)
{
    require_positive_r(r);
    double const x = r / p.b;
    double const e = std::exp(-x);
    double const om = -std::expm1(-x);
    double const C = p.A;
    double const Dc = -p.A - p.repulsion();
    // C + D e, regrouped as (C + D) - D (1 - e) for small r
    double const numer = om < 0.5 ? e * ((C + Dc) - Dc * om) : e * (C + Dc * e);
    return -p.energy_scale() * numer / (om * om);
}

std::optional<PotentialMinimum> potential_minimum(PotentialParams const& p)
{
    p.validate();
    double const beta = p.repulsion();
    if (!(beta > 0.0) || !(p.A > 0.0)) {
        return std::nullopt;
    }
    double const r0 = p.b * std::log1p(2.0 * beta / p.A);
    double const v_min = -p.energy_scale() * p.A * p.A / (4.0 * beta);
    return PotentialMinimum{r0, v_min};
}

std::optional<double> potential_curvature(PotentialParams const& p)
{
    if (!potential_minimum(p)) {
        return std::nullopt;
    }
    double const beta = p.repulsion();
    double const h2m = p.hbar * p.hbar / (2.0 * p.mu);
    double const b2 = p.b * p.b;
    double const t = p.A + 2.0 * beta;
    return h2m * p.A * p.A * t * t / (8.0 * b2 * b2 * beta * beta * beta);
}

double centrifugal_kernel(double b, double r, CentrifugalMode mode)
{
    require_positive_r(r);
    if (mode == CentrifugalMode::Exact) {
        return 1.0 / (r * r);
    }
    double const x = r / b;
    double const om = -std::expm1(-x);
    return std::exp(-x) / (om * om * b * b);
}

double effective_potential(PotentialParams const& p, QuantumState const& s, double r,
                           CentrifugalMode mode)
{
    double const q = s.q();
    double const prefactor = (q * q - 1.0) / 4.0;
    double const h2m = p.hbar * p.hbar / (2.0 * p.mu);
    return potential_value(p, r) + h2m * prefactor * centrifugal_kernel(p.b, r, mode);
}

double hulthen_potential(double V0, double delta, double r)
{
    require_positive_r(r);
    return -V0 / std::expm1(delta * r);
}

double coulomb_potential(double Ze2, double r)
{
    require_positive_r(r);
    return -Ze2 / r;
}

} // namespace mrspec
