#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pii {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }

    template <class F>
    double integrate(F&& f) const {
        double s = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
        return s;
    }
};

namespace detail {

// Legendre P_n and P_n' at x by the three-term recurrence.
inline void legendre_pair(std::size_t n, double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    if (n == 0) { p = 1.0; dp = 0.0; return; }
    for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
    }
    p = p1;
    dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace detail

/// n-point Gauss-Legendre rule on (a, b).
inline QuadratureRule gauss_legendre(std::size_t n, double a, double b) {
    if (n == 0) throw std::invalid_argument("gauss_legendre: n must be positive");
    if (!(a < b)) throw std::invalid_argument("gauss_legendre: need a < b");
    QuadratureRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    const std::size_t m = (n + 1) / 2;
    for (std::size_t i = 0; i < m; ++i) {
        // Tricomi initial guess, then Newton.
        const double th = std::numbers::pi * (i + 0.75) / (n + 0.5);
        double x = std::cos(th) * (1.0 - (n - 1.0) / (8.0 * n * n * n));
        double p = 0, dp = 1;
        for (int it = 0; it < 100; ++it) {
            detail::legendre_pair(n, x, p, dp);
            const double dx = p / dp;
            x -= dx;
            if (std::fabs(dx) <= 1e-16 * std::fabs(x) + 1e-300) break;
        }
        detail::legendre_pair(n, x, p, dp);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = mid - half * x;
        r.nodes[n - 1 - i] = mid + half * x;
        r.weights[i] = half * w;
        r.weights[n - 1 - i] = half * w;
    }
    return r;
}

/// Composite Gauss-Legendre over [a, b] with panels of width at most `panel`.
template <class F>
double integrate_panels(F&& f, double a, double b, double panel = 0.5, std::size_t order = 20) {
    if (a == b) return 0.0;
    double sign = 1.0;
    if (b < a) { std::swap(a, b); sign = -1.0; }
    const std::size_t np = static_cast<std::size_t>(std::ceil((b - a) / panel));
    static thread_local std::size_t cached_order = 0;
    static thread_local QuadratureRule ref;
    if (cached_order != order) { ref = gauss_legendre(order, -1.0, 1.0); cached_order = order; }
    const double h = (b - a) / static_cast<double>(np);
    double s = 0.0;
    for (std::size_t k = 0; k < np; ++k) {
        const double lo = a + h * k, mid = lo + 0.5 * h;
        double ps = 0.0;
        for (std::size_t i = 0; i < ref.size(); ++i) ps += ref.weights[i] * f(mid + 0.5 * h * ref.nodes[i]);
        s += 0.5 * h * ps;
    }
    return sign * s;
}

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Truncation point for integrands bounded by exp(-decay_scale * x^{3/2}).
inline double decaying_cutoff(double s, double decay_scale, double tol) {
    const double need = std::log(10.0 / std::max(tol, 1e-300));
    const double T = std::pow(need / decay_scale, 2.0 / 3.0);
    return std::max(T, s + 1.0);
}

/// Integral of f over (s, infinity) for Airy-type decaying f.
///
/// decay_scale is the constant k in |f(x)| <= C exp(-k x^{3/2}); the
/// integral is truncated where that bound is below tol/10 and the finite
/// part is refined by panel halving until successive values agree to tol.
template <class F>
double integrate_decaying(F&& f, double s, double decay_scale, double tol) {
    if (!(decay_scale > 0)) throw std::invalid_argument("integrate_decaying: decay_scale must be positive");
    const double T = decaying_cutoff(s, decay_scale, tol);
    double panel = 1.0;
    double prev = integrate_panels(f, s, T, panel, 16);
    for (int level = 0; level < 12; ++level) {
        panel *= 0.5;
        const double cur = integrate_panels(f, s, T, panel, 16);
        if (std::fabs(cur - prev) <= tol) return cur;
        prev = cur;
    }
    throw QuadratureError("integrate_decaying: tolerance not reached at maximum panel count");
}

}  // namespace pii
