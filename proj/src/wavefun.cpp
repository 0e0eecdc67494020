#include "mrspec/wavefun.hpp"

#include "mrspec/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace mrspec {

using specfun::CompensatedSum;
using specfun::jacobi;

namespace {

constexpr double kDecayFraction = 1e-12;
constexpr int kNodeGridPoints = 4000;

} // namespace

RadialSolution::RadialSolution(SpectrumEntry entry, double b, double norm_constant)
  : entry_(entry)
  , b_(b)
  , norm_(norm_constant)
{
    double const eps = entry_.epsilon;
    double r = b_ * std::max(1.0, 28.0 / eps);
    for (int attempt = 0; attempt < 60; ++attempt) {
        auto const grid = geometric_grid(1e-6 * b_, r, kNodeGridPoints);
        double gmax = 0.0;
        for (double ri : grid) {
            gmax = std::max(gmax, std::abs(value_r(ri)));
        }
        if (std::abs(value_r(r)) < kDecayFraction * gmax &&
            std::abs(value_r(1.5 * r)) < kDecayFraction * gmax) {
            break;
        }
        r *= 1.5;
    }
    r_cut_ = r;

    auto const grid = geometric_grid(1e-6 * b_, r_cut_, kNodeGridPoints);
    std::vector<double> values(grid.size());
    std::transform(grid.begin(), grid.end(), values.begin(),
                   [this](double ri) { return value_r(ri); });
    nodes_ = count_sign_changes(values);
}

double RadialSolution::kernel(double ln_z, double ln_1mz, double x) const
{
    double const eps = entry_.epsilon;
    double const eta = entry_.eta;
    double const envelope = std::exp(eps * ln_z + (1.0 + eta) * ln_1mz);
    if (envelope == 0.0) {
        return 0.0;
    }
    return norm_ * envelope * jacobi(entry_.state.n, 2.0 * eps, 2.0 * eta + 1.0, x);
}

double RadialSolution::value_z(double z) const
{
    if (!(z >= 0.0 && z <= 1.0)) {
        throw domain_error("wavefunction: z must lie in [0, 1]");
    }
    if (z == 0.0 || z == 1.0) {
        return 0.0;
    }
    return kernel(std::log(z), std::log1p(-z), 1.0 - 2.0 * z);
}

double RadialSolution::value_r(double r) const
{
    if (!(r >= 0.0)) {
        throw domain_error("wavefunction: r must be non-negative");
    }
    if (r == 0.0) {
        return 0.0;
    }
    double const x = r / b_;
    double const om = -std::expm1(-x);
    return kernel(-x, std::log(om), 2.0 * om - 1.0);
}

namespace {

#if defined(__SIZEOF_FLOAT128__)
using wide = __float128;
constexpr double wide_epsilon = 0x1p-112;
#else
using wide = long double;
constexpr double wide_epsilon = std::numeric_limits<long double>::epsilon();
#endif

wide wide_abs(wide x) { return x < 0 ? -x : x; }

struct NormSum
{
    double value;     ///< s(n) / b
    double condition; ///< sum |terms| / |sum|
};

// P_n^{(a,beta)}(1-2z) = (-1)^n (beta+1)_n/n! sum_k (-1)^k C(n,k)
//                         (n+a+beta+1)_k / (beta+1)_k (1-z)^k
// Squaring and integrating term by term gives an alternating double sum of
// Beta functions whose cancellation reaches 1e15 around n = 8, so terms are
// formed and accumulated in 113-bit arithmetic.
NormSum norm_double_sum(SpectrumEntry const& entry)
{
    int const n = entry.state.n;
    double const a = 2.0 * entry.epsilon;
    double const beta = 2.0 * entry.eta + 1.0;
    if (!(entry.epsilon > 0.0) || !(entry.eta > -0.5)) {
        throw domain_error("normalization requires epsilon > 0 and eta > -1/2");
    }

    std::vector<wide> c(n + 1, 1);
    for (int k = 1; k <= n; ++k) {
        int const j = k - 1;
        c[k] = c[j] * wide(n - j) / wide(j + 1) * (wide(n + j + 1) + wide(a) + wide(beta)) /
               (wide(beta) + wide(j + 1));
    }
    // B(a, beta + 2 + m) / B(a, beta + 2)
    std::vector<wide> beta_ratio(2 * n + 1, 1);
    for (int m = 1; m <= 2 * n; ++m) {
        int const j = m - 1;
        beta_ratio[m] = beta_ratio[j] * (wide(beta) + wide(j + 2)) /
                        (wide(a) + wide(beta) + wide(j + 2));
    }

    // C(n,k) (n+a+beta+1)_k / (beta+1)_k stays below 1e300 for the n this is used at
    wide sum = 0;
    wide total = 0;
    for (int p = 0; p <= n; ++p) {
        for (int r = 0; r <= n; ++r) {
            wide const mag = c[p] * c[r] * beta_ratio[p + r];
            sum += (p + r) % 2 == 0 ? mag : -mag;
            total += mag;
        }
    }
    if (!(sum > 0)) {
        std::ostringstream msg;
        msg << "normalization formula inconsistent: s(n) = " << static_cast<double>(sum)
            << " (scaled) <= 0";
        throw domain_error(msg.str());
    }
    double const ln_prefactor =
        2.0 * (specfun::ln_gamma(n + beta + 1.0) - specfun::ln_gamma(beta + 1.0) -
               specfun::ln_gamma(n + 1.0)) +
        specfun::ln_beta(a, beta + 2.0);
    return {std::exp(ln_prefactor) * static_cast<double>(sum),
            static_cast<double>(total / wide_abs(sum))};
}

// Relative accuracy below which the double sum is trusted.
constexpr double kSumAccuracy = 1e-12;

bool well_conditioned(NormSum const& s) { return s.condition * wide_epsilon < kSumAccuracy; }

} // namespace

RadialSolution radial_wavefunction(PotentialParams const& params, QuantumState const& state)
{
    auto const entry = energy(params, state);
    auto const s = norm_double_sum(entry);
    if (well_conditioned(s)) {
        return RadialSolution(entry, params.b, 1.0 / std::sqrt(params.b * s.value));
    }
    return RadialSolution(entry, params.b, normalization_quadrature(params, entry).norm_constant);
}

double normalization_sum(SpectrumEntry const& entry, double b)
{
    auto const s = norm_double_sum(entry);
    if (!well_conditioned(s)) {
        std::ostringstream msg;
        msg << "normalization sum for " << spectroscopic_label(entry.state) << " cancels by "
            << s.condition << "; use normalization_quadrature";
        throw domain_error(msg.str());
    }
    return b * s.value;
}

double normalization_closed_form(SpectrumEntry const& entry, double b)
{
    return 1.0 / std::sqrt(normalization_sum(entry, b));
}

namespace {

// Integral over [0, 1] of z^(2eps-1) (1-z)^(2eta+2) [P_n(1-2z)]^2, split at 1/2.
// Each half uses a power map that turns the endpoint singularity into an
// integer power of the new variable.
double norm_integral_at_order(SpectrumEntry const& e, int order)
{
    int const n = e.state.n;
    double const a = 2.0 * e.epsilon;
    double const beta = 2.0 * e.eta + 1.0;
    auto const& rule = specfun::cached_gauss_legendre(order);

    auto poly2 = [&](double x) {
        double const p = jacobi(n, a, beta, x);
        return p * p;
    };

    // z = u^m / 2, z^(a-1) dz = 2^-a m u^(a m - 1) du
    double const k_left = std::ceil(a);
    double const m_left = k_left / a;
    auto left = [&](double u) {
        if (u <= 0.0) {
            return 0.0;
        }
        double const z = 0.5 * std::pow(u, m_left);
        double const jac = m_left * std::pow(u, k_left - 1.0) * std::pow(0.5, a);
        return jac * std::pow(1.0 - z, beta + 1.0) * poly2(1.0 - 2.0 * z);
    };

    // 1 - z = v^m / 2, (1-z)^(beta+1) dz = 2^-(beta+2) m v^((beta+2) m - 1) dv
    double const k_right = std::ceil(beta + 2.0);
    double const m_right = k_right / (beta + 2.0);
    auto right = [&](double v) {
        if (v <= 0.0) {
            return 0.0;
        }
        double const w = 0.5 * std::pow(v, m_right);
        double const z = 1.0 - w;
        double const jac = m_right * std::pow(v, k_right - 1.0) * std::pow(0.5, beta + 2.0);
        return jac * std::pow(z, a - 1.0) * poly2(2.0 * w - 1.0);
    };

    return rule.integrate(left, 0.0, 1.0) + rule.integrate(right, 0.0, 1.0);
}

} // namespace

QuadratureNormalization normalization_quadrature(PotentialParams const& params,
                                                 SpectrumEntry const& entry)
{
    if (!(entry.epsilon > 0.0)) {
        throw domain_error("normalization_quadrature requires epsilon > 0");
    }
    constexpr double kRelTol = 1e-10;
    constexpr int kMaxOrder = 4096;
    int order = 16;
    double prev = norm_integral_at_order(entry, order);
    double cur = prev;
    while (order < kMaxOrder) {
        order *= 2;
        cur = norm_integral_at_order(entry, order);
        if (std::abs(cur - prev) <= kRelTol * std::abs(cur)) {
            return QuadratureNormalization{1.0 / std::sqrt(params.b * cur), cur, order};
        }
        prev = cur;
    }
    std::ostringstream msg;
    msg << "normalization quadrature did not converge at order " << kMaxOrder
        << " (last estimates " << cur << ", " << prev << ")";
    throw quadrature_error(msg.str(), cur, prev);
}

double radial_norm_integral(RadialSolution const& sol)
{
    constexpr int kPanels = 80;
    auto const& rule = specfun::cached_gauss_legendre(48);
    double const hi = sol.cutoff_radius();
    auto const edges = geometric_grid(hi * 1e-10, hi, kPanels + 1);
    auto g2 = [&](double r) {
        double const g = sol.value_r(r);
        return g * g;
    };
    CompensatedSum sum;
    sum.add(rule.integrate(g2, 0.0, edges.front()));
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        sum.add(rule.integrate(g2, edges[i], edges[i + 1]));
    }
    return sum.value();
}

int count_sign_changes(std::span<double const> values)
{
    int changes = 0;
    int last_sign = 0;
    for (double v : values) {
        int const s = (v > 0.0) - (v < 0.0);
        if (s == 0) {
            continue;
        }
        if (last_sign != 0 && s != last_sign) {
            ++changes;
        }
        last_sign = s;
    }
    return changes;
}

std::vector<double> geometric_grid(double lo, double hi, int points)
{
    if (!(lo > 0.0) || !(hi > lo) || points < 2) {
        throw domain_error("geometric_grid: need 0 < lo < hi and at least 2 points");
    }
    std::vector<double> out(points);
    double const ratio = std::log(hi / lo) / (points - 1);
    for (int i = 0; i < points; ++i) {
        out[i] = lo * std::exp(ratio * i);
    }
    out.back() = hi;
    return out;
}

std::vector<WaveSample> sample_wavefunction(RadialSolution const& sol, int samples)
{
    if (samples < 2) {
        throw std::invalid_argument("sample_wavefunction: need at least 2 samples");
    }
    auto const grid = geometric_grid(1e-4 * sol.b(), sol.cutoff_radius(), samples);
    std::vector<WaveSample> out;
    out.reserve(grid.size());
    for (double r : grid) {
        double const g = sol.value_r(r);
        out.push_back(WaveSample{r, std::exp(-r / sol.b()), g, g * g});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Angular part

int AngularMultiIndex::level(int j) const
{
    if (j < 1 || j > static_cast<int>(l_values.size())) {
        throw domain_error("angular level index out of range");
    }
    int const v = l_values[j - 1];
    return j == 1 ? std::abs(v) : v;
}

int AngularMultiIndex::angular_degree(int j) const
{
    if (j < 2) {
        throw domain_error("angular degree defined for j >= 2");
    }
    return level(j) - level(j - 1);
}

void AngularMultiIndex::validate(int l) const
{
    if (l_values.empty()) {
        throw domain_error("angular multi-index needs at least one entry (D >= 2)");
    }
    int const top = static_cast<int>(l_values.size());
    if (level(top) != l) {
        std::ostringstream msg;
        msg << "angular multi-index ends at " << level(top) << " but l = " << l;
        throw domain_error(msg.str());
    }
    if (top == 1 && l_values[0] != l && l_values[0] != -l) {
        throw domain_error("D = 2 requires l_1 = +-l");
    }
    for (int j = 2; j <= top; ++j) {
        if (level(j) < level(j - 1)) {
            std::ostringstream msg;
            msg << "angular hierarchy violated: l_" << j << " = " << level(j) << " < l_"
                << (j - 1) << " = " << level(j - 1);
            throw domain_error(msg.str());
        }
    }
}

AngularMultiIndex AngularMultiIndex::stretched(int D, int l)
{
    return AngularMultiIndex{std::vector<int>(std::max(D - 1, 1), l)};
}

double separation_constant(AngularMultiIndex const& idx, int p)
{
    double const lp = idx.level(p);
    return lp * (lp + p - 1.0);
}

namespace {

double polar_shape(int j, AngularMultiIndex const& idx, double theta)
{
    int const lower = idx.level(j - 1);
    int const deg = idx.angular_degree(j);
    double const ab = lower + 0.5 * (j - 2);
    return std::pow(std::sin(theta), lower) * jacobi(deg, ab, ab, std::cos(theta));
}

} // namespace

double angular_norm(int j, AngularMultiIndex const& idx)
{
    if (j < 2) {
        return 1.0 / std::sqrt(2.0 * std::numbers::pi);
    }
    int const lower = idx.level(j - 1);
    int const deg = idx.angular_degree(j);
    int const order = 64 + 4 * (lower + deg + j);
    auto const& rule = specfun::cached_gauss_legendre(order);
    double const integral = rule.integrate(
        [&](double th) {
            double const h = polar_shape(j, idx, th);
            return h * h * std::pow(std::sin(th), j - 1);
        },
        0.0, std::numbers::pi);
    return 1.0 / std::sqrt(integral);
}

std::complex<double> angular_factor(int j, AngularMultiIndex const& idx, double theta)
{
    int const top = static_cast<int>(idx.l_values.size());
    if (j < 1 || j > top) {
        throw domain_error("angular_factor: axis index outside 1..D-1");
    }
    for (int k = 2; k <= top; ++k) {
        if (idx.level(k) < idx.level(k - 1)) {
            throw domain_error("angular_factor: hierarchy violated");
        }
    }
    if (j == 1) {
        double const m = idx.l_values[0];
        return std::polar(1.0 / std::sqrt(2.0 * std::numbers::pi), m * theta);
    }
    return {angular_norm(j, idx) * polar_shape(j, idx, theta), 0.0};
}

std::complex<double> total_wavefunction(RadialSolution const& radial, AngularMultiIndex const& idx,
                                        double r, std::span<double const> angles)
{
    auto const& s = radial.entry().state;
    idx.validate(s.l);
    if (idx.dimension() != s.D) {
        throw domain_error("angular multi-index dimension does not match the state");
    }
    if (static_cast<int>(angles.size()) != s.D - 1) {
        throw domain_error("total_wavefunction expects D-1 angles");
    }
    if (!(r > 0.0)) {
        throw domain_error("total_wavefunction: r must be positive");
    }
    std::complex<double> psi = std::pow(r, -0.5 * (s.D - 1)) * radial.value_r(r);
    for (int j = 1; j <= s.D - 1; ++j) {
        psi *= angular_factor(j, idx, angles[j - 1]);
    }
    return psi;
}

std::complex<double> total_wavefunction(PotentialParams const& params, QuantumState const& state,
                                        AngularMultiIndex const& idx, double r,
                                        std::span<double const> angles)
{
    return total_wavefunction(radial_wavefunction(params, state), idx, r, angles);
}

} // namespace mrspec
