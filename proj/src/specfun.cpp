#include "mrspec/specfun.hpp"

#include "mrspec/model.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

namespace mrspec::specfun {

double ln_gamma(double x)
{
    if (!(x > 0.0) || !std::isfinite(x)) {
        std::ostringstream msg;
        msg << "ln_gamma requires a positive finite argument (got " << x << ")";
        throw domain_error(msg.str());
    }
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgamma_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

double ln_beta(double a, double b)
{
    return ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b);
}

double jacobi(int n, double a, double b, double x)
{
    if (n < 0) {
        throw domain_error("jacobi: degree must be non-negative");
    }
    if (n == 0) {
        return 1.0;
    }
    double p_prev = 1.0;
    double p = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
    double const a2b2 = a * a - b * b;
    for (int k = 1; k < n; ++k) {
        // 2(k+1)(k+a+b+1)(2k+a+b) P_{k+1}
        //   = (2k+a+b+1)[(2k+a+b+2)(2k+a+b) x + a^2 - b^2] P_k
        //     - 2(k+a)(k+b)(2k+a+b+2) P_{k-1}
        double const c = 2.0 * k + a + b;
        double const lhs = 2.0 * (k + 1) * (k + a + b + 1.0) * c;
        double const t1 = (c + 1.0) * ((c + 2.0) * c * x + a2b2);
        double const t2 = 2.0 * (k + a) * (k + b) * (c + 2.0);
        double const next = (t1 * p - t2 * p_prev) / lhs;
        p_prev = p;
        p = next;
    }
    return p;
}

namespace {

// Legendre P_n(x) and its derivative.
std::pair<double, double> legendre_with_derivative(int n, double x)
{
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
        double const p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    double const dp = n * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

} // namespace

QuadratureRule::QuadratureRule(int order)
{
    if (order < 1) {
        throw domain_error("gauss_legendre: order must be >= 1");
    }
    nodes_.assign(order, 0.0);
    weights_.assign(order, 0.0);
    if (order == 1) {
        weights_[0] = 2.0;
        return;
    }
    int const half = order / 2;
    for (int i = 0; i < half; ++i) {
        // i-th largest root, Tricomi initial guess
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            auto [p, d] = legendre_with_derivative(order, x);
            dp = d;
            double const dx = p / d;
            x -= dx;
            if (std::abs(dx) <= 1e-15) {
                break;
            }
        }
        dp = legendre_with_derivative(order, x).second;
        double const w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes_[order - 1 - i] = x;
        nodes_[i] = -x;
        weights_[order - 1 - i] = w;
        weights_[i] = w;
    }
    if (order % 2 == 1) {
        double const dp = legendre_with_derivative(order, 0.0).second;
        nodes_[half] = 0.0;
        weights_[half] = 2.0 / (dp * dp);
    }
}

double QuadratureRule::integrate(std::function<double(double)> const& f, double lo,
                                 double hi) const
{
    double const mid = 0.5 * (hi + lo);
    double const half = 0.5 * (hi - lo);
    CompensatedSum sum;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        sum.add(weights_[i] * f(mid + half * nodes_[i]));
    }
    return half * sum.value();
}

QuadratureRule gauss_legendre(int order)
{
    return QuadratureRule(order);
}

QuadratureRule const& cached_gauss_legendre(int order)
{
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<QuadratureRule const>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[order];
    if (!slot) {
        slot = std::make_unique<QuadratureRule const>(order);
    }
    return *slot;
}

void CompensatedSum::add(double v)
{
    double const t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
        comp_ += (sum_ - t) + v;
    }
    else {
        comp_ += (v - t) + sum_;
    }
    sum_ = t;
}

} // namespace mrspec::specfun
