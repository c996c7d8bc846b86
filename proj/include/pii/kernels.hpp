#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "pii/core_numerics.hpp"
#include "pii/specfun.hpp"

namespace pii {

/// Airy kernel K0(x, y; c) = K_Ai(x + c, y + c), with the diagonal
/// Ai'(z)^2 - z Ai(z)^2.
inline double airy_kernel(double x, double y, double c) {
    const double X = x + c, Y = y + c;
    const AiryPair a = airy(X);
    if (X == Y) return a.ai_prime * a.ai_prime - X * a.ai * a.ai;
    const double e = Y - X;
    if (std::fabs(e) < 1e-2) {
        // Expand Ai(X + e) = sum a_k e^k with a_{k+2} = (X a_k + a_{k-1}) / ((k+2)(k+1));
        // then K = -sum_{k>=1} ((k+1) a_{k+1} a_0 - a_1 a_k) e^{k-1}.
        double coef[14];
        coef[0] = a.ai;
        coef[1] = a.ai_prime;
        coef[2] = X * coef[0] / 2.0;
        for (int k = 1; k + 2 < 14; ++k) coef[k + 2] = (X * coef[k] + coef[k - 1]) / ((k + 2.0) * (k + 1.0));
        double sum = 0.0, ep = 1.0;
        for (int k = 1; k + 1 < 14; ++k) {
            sum -= ((k + 1) * coef[k + 1] * coef[0] - coef[1] * coef[k]) * ep;
            ep *= e;
        }
        return sum;
    }
    const AiryPair b = airy(Y);
    const double d = X - Y;
    return (a.ai * b.ai_prime - a.ai_prime * b.ai) / d;
}

namespace detail {

// Ai^{(j)}(z) = P_j(z) Ai(z) + Q_j(z) Ai'(z), polynomial coefficients ascending.
struct AiryDerivativePoly {
    std::vector<double> p, q;
};

inline std::vector<AiryDerivativePoly> airy_derivative_polys(int jmax) {
    std::vector<AiryDerivativePoly> out(static_cast<std::size_t>(jmax) + 1);
    out[0].p = {1.0};
    out[0].q = {0.0};
    auto deriv = [](const std::vector<double>& a) {
        std::vector<double> d(a.size() > 1 ? a.size() - 1 : 1, 0.0);
        for (std::size_t k = 1; k < a.size(); ++k) d[k - 1] = static_cast<double>(k) * a[k];
        return d;
    };
    auto add = [](std::vector<double> a, const std::vector<double>& b) {
        if (a.size() < b.size()) a.resize(b.size(), 0.0);
        for (std::size_t k = 0; k < b.size(); ++k) a[k] += b[k];
        return a;
    };
    for (int j = 0; j < jmax; ++j) {
        const auto& cur = out[static_cast<std::size_t>(j)];
        std::vector<double> zq(cur.q.size() + 1, 0.0);
        for (std::size_t k = 0; k < cur.q.size(); ++k) zq[k + 1] = cur.q[k];
        out[static_cast<std::size_t>(j) + 1].p = add(deriv(cur.p), zq);
        out[static_cast<std::size_t>(j) + 1].q = add(cur.p, deriv(cur.q));
    }
    return out;
}

inline double horner(const std::vector<double>& a, double z) {
    double r = 0.0;
    for (std::size_t k = a.size(); k-- > 0;) r = r * z + a[k];
    return r;
}

inline double airy_derivative(const AiryDerivativePoly& pq, double z) {
    const AiryPair a = pii::airy(z);
    return horner(pq.p, z) * a.ai + horner(pq.q, z) * a.ai_prime;
}

inline double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

// Integral over (c, inf) of an Airy-type product, tolerance relative to
// the size of the integrand at the left end.
template <class F>
double airy_tail_integral(F&& f, double c, double rel = 1e-14) {
    const double scale = std::fabs(f(c)) + std::fabs(f(c + 0.5)) + 1e-300;
    return integrate_decaying(f, c, 4.0 / 3.0, rel * scale);
}

}  // namespace detail

/// Kernel K_{2m}(x, y; c) of the soft edge conditioned on an eigenvalue of
/// multiplicity 2m at the edge point shifted to the origin.
///
/// K_0 is the shifted Airy kernel and K_{2m+2} is obtained from K_{2m} by
/// removing the projection on its leading Taylor coefficient at y = 0:
///   K_{2m+2}(x, y) = K_{2m}(x, y) - T_m(x) T_m(y) / k_m,
/// where T_j(x) = (1/j!) d^j/dy^j K_{2m}(x, y)|_{y=0} and k_m = (1/m!^2)
/// d^{2m}/dx^m dy^m K_{2m}|_{0,0}. The Taylor data of K_0 are Airy
/// integrals (closed form for j = 0, quadrature otherwise).
class KernelEvaluator {
public:
    static KernelEvaluator airy(double c) { return KernelEvaluator(0, c); }
    static KernelEvaluator even(int mu, double c) {
        if (mu < 0 || mu % 2 != 0) throw std::invalid_argument("KernelEvaluator: mu must be an even integer >= 0");
        return KernelEvaluator(mu / 2, c);
    }

    int mu() const { return 2 * m_; }
    double c() const { return c_; }

    /// Kernel with mu + 2.
    KernelEvaluator next() const { return KernelEvaluator(m_ + 1, c_); }

    double operator()(double x, double y) const {
        if (m_ == 0) return airy_kernel(x, y, c_);
        std::vector<double> tx = base_taylor(x);
        std::vector<double> ty = (y == x) ? tx : base_taylor(y);
        double k = airy_kernel(x, y, c_);
        for (int l = 0; l < m_; ++l) {
            const auto& kl = levels_[static_cast<std::size_t>(l)];
            const double piv = kl[idx(l, l)];
            const double ax = tx[static_cast<std::size_t>(l)], ay = ty[static_cast<std::size_t>(l)];
            k -= ax * ay / piv;
            for (int j = l + 1; j < m_; ++j) {
                tx[static_cast<std::size_t>(j)] -= ax * kl[idx(l, j)] / piv;
                ty[static_cast<std::size_t>(j)] -= ay * kl[idx(l, j)] / piv;
            }
        }
        return k;
    }

    double diagonal(double x) const { return (*this)(x, x); }

    /// (1/j!) d^j/dy^j K_0(x, y; c) at y = 0 for j = 0 .. m - 1.
    std::vector<double> base_taylor(double x) const {
        std::vector<double> t(static_cast<std::size_t>(m_));
        for (int j = 0; j < m_; ++j) {
            if (j == 0) {
                t[0] = airy_kernel(x, 0.0, c_);
                continue;
            }
            const auto& pq = polys_[static_cast<std::size_t>(j)];
            t[static_cast<std::size_t>(j)] =
                detail::airy_tail_integral([&](double z) { return airy_ai(x + z) * detail::airy_derivative(pq, z); },
                                           c_) / detail::factorial(j);
        }
        return t;
    }

private:
    KernelEvaluator(int m, double c) : c_(c), m_(m) {
        if (m_ == 0) return;
        polys_ = detail::airy_derivative_polys(m_);
        // k_0[i][j] = (1/(i! j!)) int_c^inf Ai^{(i)} Ai^{(j)}.
        std::vector<double> k0(static_cast<std::size_t>(m_ * m_));
        for (int i = 0; i < m_; ++i)
            for (int j = i; j < m_; ++j) {
                double v;
                if (i == 0 && j == 0) {
                    const AiryPair a = pii::airy(c);
                    v = a.ai_prime * a.ai_prime - c * a.ai * a.ai;
                } else {
                    const auto& pi = polys_[static_cast<std::size_t>(i)];
                    const auto& pj = polys_[static_cast<std::size_t>(j)];
                    v = detail::airy_tail_integral(
                        [&](double z) { return detail::airy_derivative(pi, z) * detail::airy_derivative(pj, z); }, c);
                }
                v /= detail::factorial(i) * detail::factorial(j);
                k0[idx(i, j)] = k0[idx(j, i)] = v;
            }
        levels_.push_back(k0);
        for (int l = 0; l + 1 < m_; ++l) {
            const auto& kl = levels_.back();
            const double piv = kl[idx(l, l)];
            if (!(std::fabs(piv) > 0.0)) throw std::domain_error("KernelEvaluator: vanishing diagonal at the origin");
            std::vector<double> kn(kl.size());
            for (int i = 0; i < m_; ++i)
                for (int j = 0; j < m_; ++j) kn[idx(i, j)] = kl[idx(i, j)] - kl[idx(i, l)] * kl[idx(l, j)] / piv;
            levels_.push_back(std::move(kn));
        }
        const double last = levels_.back()[idx(m_ - 1, m_ - 1)];
        if (!(std::fabs(last) > 0.0)) throw std::domain_error("KernelEvaluator: vanishing diagonal at the origin");
    }

    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i * m_ + j); }

    double c_;
    int m_;
    std::vector<detail::AiryDerivativePoly> polys_;
    std::vector<std::vector<double>> levels_;
};

/// K_2(x, y; c) = (K_0(x,y) K_0(0,0) - K_0(x,0) K_0(y,0)) / K_0(0,0).
inline double k2_kernel(double x, double y, double c) {
    const double k00 = airy_kernel(0.0, 0.0, c);
    if (!(k00 > 0.0)) throw std::domain_error("k2_kernel: K0(0,0;c) vanishes");
    return (airy_kernel(x, y, c) * k00 - airy_kernel(x, 0.0, c) * airy_kernel(y, 0.0, c)) / k00;
}

/// K_{2m+2}(x, y; c) from the kernel K_{2m} = base.
inline double k_even_recurrence(const KernelEvaluator& base, double x, double y, double c) {
    if (c != base.c()) throw std::invalid_argument("k_even_recurrence: shift does not match the base kernel");
    return base.next()(x, y);
}

/// Leading large-c form of K_2:  x y e^{-(4/3)c^{3/2}} e^{-(x+y) sqrt c} / (2^7 pi c^3).
inline double k2_large_c(double x, double y, double c) {
    return x * y * std::exp(-4.0 / 3.0 * c * std::sqrt(c) - (x + y) * std::sqrt(c)) / (128.0 * std::numbers::pi * c * c * c);
}

struct FredholmConfig {
    std::size_t nodes = 40;
    // Right truncation; 0 selects max(12, s + 25).
    double T = 0.0;
    double xi = 1.0;
    double tol = 1e-12;
    std::size_t max_nodes = 1280;
};

class FredholmError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// det(I - xi W^{1/2} K W^{1/2}) for Gauss-Legendre nodes on [a, b].
template <class Kernel>
double nystrom_determinant(const Kernel& k, double a, double b, double xi, std::size_t n) {
    const QuadratureRule r = gauss_legendre(n, a, b);
    SquareMatrix<double> m(n);
    std::vector<double> sw(n);
    for (std::size_t i = 0; i < n; ++i) sw[i] = std::sqrt(r.weights[i]);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double v = -xi * sw[i] * k(r.nodes[i], r.nodes[j]) * sw[j];
            m(i, j) = v + (i == j ? 1.0 : 0.0);
            m(j, i) = m(i, j);
        }
    return determinant(m);
}

/// Nystrom determinant with node doubling until successive values agree to cfg.tol.
template <class Kernel>
double fredholm_determinant(const Kernel& k, double a, double b, const FredholmConfig& cfg) {
    if (cfg.nodes < 20) throw std::invalid_argument("FredholmConfig: at least 20 nodes required");
    if (cfg.xi == 0.0) return 1.0;
    std::size_t n = cfg.nodes;
    double prev = nystrom_determinant(k, a, b, cfg.xi, n);
    while (2 * n <= cfg.max_nodes) {
        n *= 2;
        const double cur = nystrom_determinant(k, a, b, cfg.xi, n);
        if (std::fabs(cur - prev) < cfg.tol) return cur;
        prev = cur;
    }
    throw FredholmError("fredholm_determinant: no convergence under node doubling");
}

/// E_2(s; xi) = det(1 - xi K_Ai) on (s, inf).
inline double fredholm_e2(double s, const FredholmConfig& cfg = {}) {
    const double T = cfg.T > 0.0 ? cfg.T : std::max(12.0, s + 25.0);
    if (!(T > s)) throw std::invalid_argument("fredholm_e2: truncation must exceed s");
    return fredholm_determinant([](double x, double y) { return airy_kernel(x, y, 0.0); }, s, T, cfg);
}

/// int_0^inf K_mu(x, x; c) dx for mu in {0, 2}, by quadrature of the diagonal.
inline double rho1_tail(int mu, double c) {
    if (mu == 0)
        return detail::airy_tail_integral([](double z) { return airy_kernel(z, z, 0.0); }, c);
    if (mu == 2) {
        const double k00 = airy_kernel(0.0, 0.0, c);
        // The integrand vanishes at the origin by cancellation, so the
        // tolerance is tied to the size of the terms being subtracted.
        return integrate_decaying(
            [&](double z) {
                const double x = z - c;
                const double kx0 = airy_kernel(x, 0.0, c);
                return airy_kernel(x, x, c) - kx0 * kx0 / k00;
            },
            c, 4.0 / 3.0, 1e-14 * k00);
    }
    throw std::invalid_argument("rho1_tail: mu must be 0 or 2");
}

/// d/dc of rho1_tail from the exact c-derivative of the kernel,
/// d/dc K_0(x, y; c) = -Ai(x + c) Ai(y + c), which for mu = 2 gives
/// d/dc K_2(x, x; c) = -(Ai(x+c) - K_0(x,0) Ai(c)/K_0(0,0))^2.
inline double rho1_tail_dc(int mu, double c) {
    if (mu == 0) return -detail::airy_tail_integral([](double z) { double a = airy_ai(z); return a * a; }, c);
    if (mu == 2) {
        const double k00 = airy_kernel(0.0, 0.0, c);
        const double a0 = airy_ai(c);
        return -detail::airy_tail_integral(
            [&](double z) {
                const double d = airy_ai(z) - airy_kernel(z - c, 0.0, c) * a0 / k00;
                return d * d;
            },
            c);
    }
    throw std::invalid_argument("rho1_tail_dc: mu must be 0 or 2");
}

/// Closed form of rho1_tail(0, c) = (2c^2 Ai^2 - 2c Ai'^2 - Ai Ai') / 3.
inline double rho1_tail0_closed(double c) {
    const AiryPair a = airy(c);
    return (2.0 * c * c * a.ai * a.ai - 2.0 * c * a.ai_prime * a.ai_prime - a.ai * a.ai_prime) / 3.0;
}

/// Leading behaviour e^{-(4/3)c^{3/2}} / (256 pi c^4) of -d/dc rho1_tail(2, c).
inline double rho1_tail2_large_c(double c) {
    return std::exp(-4.0 / 3.0 * c * std::sqrt(c)) / (256.0 * std::numbers::pi * c * c * c * c);
}

/// u0 through second order in xi from expanding log det(1 - xi K_0):
///   xi K_0(0,0;c) + xi^2 int_0^inf K_0(x,0;c)^2 dx.
inline double u0_second_order(double c, double xi) {
    if (c < 3.0) throw std::domain_error("u0_second_order: c must be at least 3");
    const double lin = airy_kernel(0.0, 0.0, c);
    const double quad = detail::airy_tail_integral(
        [c](double z) { const double k = airy_kernel(z - c, 0.0, c); return k * k; }, c);
    return xi * lin + xi * xi * quad;
}

/// The same expansion with the opposite sign of the xi^2 term.
inline double u0_second_order_literal(double c, double xi) {
    if (c < 3.0) throw std::domain_error("u0_second_order_literal: c must be at least 3");
    const double lin = airy_kernel(0.0, 0.0, c);
    const double quad = detail::airy_tail_integral(
        [c](double z) { const double k = airy_kernel(z - c, 0.0, c); return k * k; }, c);
    return xi * lin - xi * xi * quad;
}

}  // namespace pii
