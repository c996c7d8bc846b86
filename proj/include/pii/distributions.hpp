#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pii/painleve2.hpp"

namespace pii {

/// Process-wide cache of default-domain solutions, one per xi.
inline const TranscendentSolution& cached_solution(double xi) {
    static std::mutex mu;
    static std::map<double, std::shared_ptr<const TranscendentSolution>> cache;
    std::shared_ptr<const TranscendentSolution> p;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(xi);
        if (it != cache.end()) return *it->second;
    }
    p = std::make_shared<const TranscendentSolution>(solve_q0(xi));
    std::lock_guard<std::mutex> lock(mu);
    return *cache.emplace(xi, std::move(p)).first->second;
}

namespace detail {

// (u0, int u0, int q0) at s, from the trajectory or past its right end
// from the seed tails.
inline State<3> tails(const TranscendentSolution& sol, double s) {
    if (s < sol.t_min()) throw std::domain_error("distributions: s below the solved domain");
    if (sol.xi() == 0.0) return {0.0, 0.0, 0.0};
    if (s <= sol.t_max()) {
        const State<5> y = sol.state(s);
        return {y[2], y[3], y[4]};
    }
    if (s > 40.0) return {0.0, 0.0, 0.0};
    const State<5> y = seed_state(s, sol.xi());
    return {y[2], y[3], y[4]};
}

}  // namespace detail

/// E2(s; xi) = exp(-int_s^inf (x - s) q0^2) evaluated as exp(-int_s^inf u0).
inline double e2_soft(double s, const TranscendentSolution& sol) { return std::exp(-detail::tails(sol, s)[1]); }
inline double e2_soft(double s, double xi) { return e2_soft(s, cached_solution(xi)); }

/// E2 with the double integral done directly: panel quadrature of
/// (x - s) q0(x)^2 on [s, t_max] plus the seed tail beyond t_max.
inline double e2_soft_direct(double s, const TranscendentSolution& sol) {
    if (sol.xi() == 0.0) return 1.0;
    const double T = sol.t_max();
    if (s >= T) return e2_soft(s, sol);
    const double inner = integrate_panels(
        [&](double x) { const double q = sol.q(x); return (x - s) * q * q; }, s, T, 0.25, 20);
    const State<5> y = sol.state(T);
    return std::exp(-(inner + y[3] + (T - s) * y[2]));
}
inline double e2_soft_direct(double s, double xi) { return e2_soft_direct(s, cached_solution(xi)); }

/// F_pm(s) = exp(-1/2 int (x - s) q0^2 pm 1/2 int q0), xi = 1.
inline double f_plus(double s, const TranscendentSolution& sol) {
    const State<3> t = detail::tails(sol, s);
    return std::exp(-0.5 * t[1] + 0.5 * t[2]);
}
inline double f_minus(double s, const TranscendentSolution& sol) {
    const State<3> t = detail::tails(sol, s);
    return std::exp(-0.5 * t[1] - 0.5 * t[2]);
}

inline const TranscendentSolution& require_xi1(const TranscendentSolution& sol, const char* who) {
    if (sol.xi() != 1.0) throw std::invalid_argument(std::string(who) + ": needs the xi = 1 solution");
    return sol;
}

/// Largest-eigenvalue law of the orthogonal ensemble, F_-(s).
inline double e1_soft(double s, const TranscendentSolution& sol) { return f_minus(s, require_xi1(sol, "e1_soft")); }
inline double e1_soft(double s) { return e1_soft(s, cached_solution(1.0)); }

/// Symplectic-type law (F_+ + F_-)/2.
inline double e4_soft(double s, const TranscendentSolution& sol) {
    require_xi1(sol, "e4_soft");
    return 0.5 * (f_plus(s, sol) + f_minus(s, sol));
}
inline double e4_soft(double s) { return e4_soft(s, cached_solution(1.0)); }

/// Density of the largest eigenvalue, d/ds E2 = u0 E2.
inline double pdf_largest_beta2(double s, const TranscendentSolution& sol) {
    const State<3> t = detail::tails(sol, s);
    return t[0] * std::exp(-t[1]);
}
inline double pdf_largest_beta2(double s, double xi) { return pdf_largest_beta2(s, cached_solution(xi)); }

// Growth-model names: the Poissonized point-to-point last-passage law and
// the longest increasing subsequence limits are the same functions.
inline double lpp_limit_beta2(double s) { return e2_soft(s, 1.0); }
inline double lpp_limit_beta1(double s) { return e1_soft(s); }
inline double lpp_limit_beta4(double s) { return e4_soft(s); }

struct TailFit {
    double exponent_coefficient = 0.0;  // coefficient of |s|^p
    double log_coefficient = 0.0;
    double constant = 0.0;
    double power = 0.0;
};

/// Least-squares fit of -log E2(s) = a |s|^p + b log|s| + c on [lo, hi].
inline TailFit fit_left_tail(const TranscendentSolution& sol, double p, double lo, double hi, std::size_t n = 41) {
    if (lo < sol.t_min()) throw std::domain_error("tail_exponent_left: insufficient range");
    double A[3][3] = {}, r[3] = {};
    for (std::size_t i = 0; i < n; ++i) {
        const double s = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        const double y = detail::tails(sol, s)[1];
        const double b[3] = {std::pow(-s, p), std::log(-s), 1.0};
        for (int a = 0; a < 3; ++a) {
            r[a] += b[a] * y;
            for (int c = 0; c < 3; ++c) A[a][c] += b[a] * b[c];
        }
    }
    SquareMatrix<double> m(3);
    for (int a = 0; a < 3; ++a)
        for (int c = 0; c < 3; ++c) m(static_cast<std::size_t>(a), static_cast<std::size_t>(c)) = A[a][c];
    const std::vector<double> x = solve_linear(m, {r[0], r[1], r[2]});
    return {x[0], x[1], x[2], p};
}

/// Fitted leading left-tail coefficient of -log E2: the (-s)^3 coefficient
/// for xi = 1 (fit on [-8, -4]) or the (-s)^{3/2} coefficient for xi < 1
/// (fit on [-12, -4]).
inline double tail_exponent_left(double xi) {
    if (!(xi > 0.0 && xi <= 1.0)) throw std::domain_error("tail_exponent_left: xi must lie in (0, 1]");
    const TranscendentSolution& sol = cached_solution(xi);
    if (xi == 1.0) return fit_left_tail(sol, 3.0, -8.0, -4.0).exponent_coefficient;
    return fit_left_tail(sol, 1.5, -12.0, -4.0).exponent_coefficient;
}

}  // namespace pii
