#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "pii/distributions.hpp"

namespace pii {

/// Choice of the solution of the Lax pair.
///
/// Both choices have f -> 1 as s -> inf. `decaying` takes g to be the
/// particular solution that decays like q0, so at w = 0 (f, g) is
/// (cosh I, -sinh I) with I = int_s^inf q0. `connected` adds the solution
/// g ~ e^{w^3/3 - w s} shared by both systems, which gives (e^{-I}, e^{-I})
/// at w = 0. Only `connected` yields distribution functions in s: with
/// `decaying`, f E2 at w = 0 exceeds 1 near s = -1.
enum class LaxNormalization { decaying, connected };

struct LaxOptions {
    double s_max = 12.0;
    double tol = 1e-12;
    LaxNormalization normalization = LaxNormalization::decaying;
};

/// (f, g)(s; w) on [s_min, s_max] for one w, from
///   f_s = q0 g,  g_s = q0 f - w g,
/// with terminal data at s_max set by a LaxNormalization.
struct LaxSolution {
    double w = 0.0;
    Trajectory<2> traj;
    // Set when a half-tolerance rerun disagrees beyond the tolerance.
    bool unstable = false;
    double rerun_difference = 0.0;

    std::pair<double, double> operator()(double s) const {
        const State<2> y = traj(s);
        return {y[0], y[1]};
    }
    double s_min() const { return traj.t_lo(); }
    double s_max() const { return traj.t_hi(); }
};

namespace detail {

inline double q0_anywhere(const TranscendentSolution& sol, double x) {
    if (x <= sol.t_max()) return sol.q(x);
    if (x > 60.0) return 0.0;
    return hm_seed(x, sol.xi()).q;
}

inline double lax_terminal_g(const TranscendentSolution& sol, double w, double s_max) {
    const double scale = std::fabs(q0_anywhere(sol, s_max)) + 1e-300;
    auto f = [&](double x) { return std::exp(w * (x - s_max)) * q0_anywhere(sol, x); };
    // Shift so the cutoff rule sees the decay from s_max onwards.
    return -integrate_decaying([&](double t) { return f(s_max + t); }, 0.0, 2.0 / 3.0, 1e-15 * scale);
}

// (f, g) at s_max for the chosen normalization.
inline State<2> lax_terminal(const TranscendentSolution& sol, double w, double s_max, LaxNormalization n) {
    const double gp = lax_terminal_g(sol, w, s_max);
    if (n == LaxNormalization::decaying) return {1.0, gp};
    const double a = w * w * w / 3.0;
    const double scale = std::fabs(q0_anywhere(sol, s_max)) * std::exp(a - w * s_max) + 1e-300;
    // f = 1 - int_s^inf q0 g with g ~ e^{a - w s'} to leading order.
    const double corr = integrate_decaying(
        [&](double t) { return q0_anywhere(sol, s_max + t) * std::exp(a - w * (s_max + t)); }, 0.0, 2.0 / 3.0,
        1e-15 * scale);
    return {1.0 - corr, gp + std::exp(a - w * s_max)};
}

inline Trajectory<2> lax_integrate(const TranscendentSolution& sol, double w, double s_min, double s_max,
                                   const State<2>& end, double tol) {
    OdeOptions o;
    o.rtol = tol;
    o.atol = 1e-300;
    auto rhs = [&](double s, const State<2>& y, State<2>& d) {
        const double q = sol.q(s);
        d[0] = q * y[1];
        d[1] = q * y[0] - w * y[1];
    };
    return ode_integrate<2>(rhs, s_max, end, s_min, o);
}

}  // namespace detail

class LaxError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Backward integration in s of the first Lax system for xi = 1.
inline LaxSolution solve_fg_in_s(double w, double s_min, double s_max, const LaxOptions& opt = {}) {
    const TranscendentSolution& sol = cached_solution(1.0);
    if (!(s_min < s_max) || s_min < sol.t_min() || s_max > sol.t_max())
        throw std::domain_error("solve_fg_in_s: s-range outside the solved domain");
    LaxSolution out;
    out.w = w;
    const State<2> end = detail::lax_terminal(sol, w, s_max, opt.normalization);
    try {
        out.traj = detail::lax_integrate(sol, w, s_min, s_max, end, opt.tol);
        const Trajectory<2> half = detail::lax_integrate(sol, w, s_min, s_max, end, 0.5 * opt.tol);
        double diff = 0.0, mag = 1.0;
        for (std::size_t i = 0; i < out.traj.size(); ++i) {
            const double s = out.traj.grid()[i];
            const State<2> a = out.traj.state(i), b = half(s);
            diff = std::max({diff, std::fabs(a[0] - b[0]), std::fabs(a[1] - b[1])});
            mag = std::max({mag, std::fabs(a[0]), std::fabs(a[1])});
        }
        out.rerun_difference = diff;
        out.unstable = diff > 1e3 * opt.tol * mag;
    } catch (const OdeError& e) {
        throw LaxError(std::string("solve_fg_in_s: blow-up: ") + e.what());
    }
    return out;
}

inline LaxSolution solve_fg_in_s(double w, double s_min, const LaxOptions& opt = {}) {
    return solve_fg_in_s(w, s_min, opt.s_max, opt);
}

/// (f, g) on a rectangle of (s, w) values.
struct LaxPairField {
    std::vector<double> s_grid;
    std::vector<double> w_grid;
    // f[iw][is], g[iw][is]
    std::vector<std::vector<double>> f;
    std::vector<std::vector<double>> g;
    bool unstable = false;
};

inline LaxPairField build_lax_field(const std::vector<double>& s_grid, const std::vector<double>& w_grid,
                                    const LaxOptions& opt = {}) {
    if (s_grid.empty() || w_grid.empty()) throw std::invalid_argument("build_lax_field: empty grid");
    LaxPairField field;
    field.s_grid = s_grid;
    field.w_grid = w_grid;
    const double lo = *std::min_element(s_grid.begin(), s_grid.end());
    for (double w : w_grid) {
        const LaxSolution sol = solve_fg_in_s(w, std::min(lo, opt.s_max - 1.0), opt.s_max, opt);
        field.unstable = field.unstable || sol.unstable;
        std::vector<double> fr, gr;
        for (double s : s_grid) {
            const auto [fv, gv] = sol(s);
            fr.push_back(fv);
            gr.push_back(gv);
        }
        field.f.push_back(std::move(fr));
        field.g.push_back(std::move(gr));
    }
    return field;
}

/// Matrix of the w-system at (s, w):
///   [[q^2, -w q - q'], [-w q + q', w^2 - s - q^2]].
inline std::array<double, 4> lax_w_matrix(double s, double w) {
    const TranscendentSolution& sol = cached_solution(1.0);
    const double q = sol.q(s), qp = sol.q_prime(s);
    return {q * q, -w * q - qp, -w * q + qp, w * w - s - q * q};
}

/// Integrate the w-system from the field value at (s, w_from) to w_to.
inline std::pair<double, double> propagate_in_w(std::pair<double, double> start, double s, double w_from,
                                                double w_to, double tol = 1e-12) {
    const TranscendentSolution& sol = cached_solution(1.0);
    if (!sol.contains(s)) throw std::domain_error("propagate_in_w: s outside the solved domain");
    const double q = sol.q(s), qp = sol.q_prime(s);
    auto rhs = [&](double w, const State<2>& y, State<2>& d) {
        d[0] = q * q * y[0] + (-w * q - qp) * y[1];
        d[1] = (-w * q + qp) * y[0] + (w * w - s - q * q) * y[1];
    };
    if (w_from == w_to) return start;
    try {
        OdeOptions o;
        o.rtol = tol;
        o.atol = 1e-300;
        const Trajectory<2> tr = ode_integrate<2>(rhs, w_from, State<2>{start.first, start.second}, w_to, o);
        const State<2> y = tr.state(tr.size() - 1);
        return {y[0], y[1]};
    } catch (const OdeError& e) {
        throw LaxError(std::string("propagate_in_w: blow-up: ") + e.what());
    }
}

inline std::pair<double, double> propagate_in_w(const LaxPairField& field, double w_from, double w_to, double s) {
    for (std::size_t iw = 0; iw < field.w_grid.size(); ++iw) {
        if (field.w_grid[iw] != w_from) continue;
        for (std::size_t is = 0; is < field.s_grid.size(); ++is)
            if (field.s_grid[is] == s) return propagate_in_w({field.f[iw][is], field.g[iw][is]}, s, w_from, w_to);
    }
    throw std::invalid_argument("propagate_in_w: (s, w_from) is not a field node");
}

/// max over the grid of |(f,g) by s-solve at w| - |(f,g) transported in w
/// from w_grid.front()|.
inline double lax_route_residual(const std::vector<double>& s_grid, const std::vector<double>& w_grid,
                                 const LaxOptions& opt = {}) {
    const LaxPairField field = build_lax_field(s_grid, w_grid, opt);
    double m = 0.0;
    for (std::size_t iw = 1; iw < w_grid.size(); ++iw)
        for (std::size_t is = 0; is < s_grid.size(); ++is) {
            const auto [fv, gv] = propagate_in_w(field, w_grid.front(), w_grid[iw], s_grid[is]);
            m = std::max({m, std::fabs(fv - field.f[iw][is]), std::fabs(gv - field.g[iw][is])});
        }
    return m;
}

/// Mixed-derivative compatibility at (s, w): d/dw of the s-system right side
/// against d/ds of the w-system right side, both by five-point differences
/// of s-solves.
inline double lax_compatibility_residual(double s, double w, double h = 1e-2, const LaxOptions& opt = {}) {
    const TranscendentSolution& sol = cached_solution(1.0);
    auto at = [&](double ss, double ww) {
        const LaxSolution l = solve_fg_in_s(ww, std::min(ss, s - 3 * h) - 0.5, opt);
        return l(ss);
    };
    auto rhs_s = [&](double ss, double ww) {
        const auto [fv, gv] = at(ss, ww);
        const double q = sol.q(ss);
        return std::pair<double, double>{q * gv, q * fv - ww * gv};
    };
    auto rhs_w = [&](double ss, double ww) {
        const auto [fv, gv] = at(ss, ww);
        const auto b = lax_w_matrix(ss, ww);
        return std::pair<double, double>{b[0] * fv + b[1] * gv, b[2] * fv + b[3] * gv};
    };
    auto d5 = [h](auto&& fn) {
        const auto m2 = fn(-2 * h), m1 = fn(-h), p1 = fn(h), p2 = fn(2 * h);
        return std::pair<double, double>{(m2.first - 8 * m1.first + 8 * p1.first - p2.first) / (12 * h),
                                         (m2.second - 8 * m1.second + 8 * p1.second - p2.second) / (12 * h)};
    };
    const auto dw_of_s = d5([&](double e) { return rhs_s(s, w + e); });
    const auto ds_of_w = d5([&](double e) { return rhs_w(s + e, w); });
    return std::max(std::fabs(dw_of_s.first - ds_of_w.first), std::fabs(dw_of_s.second - ds_of_w.second));
}

/// f(s; w) E2(s), the rank-one perturbed beta = 2 law.
inline double perturbed_cdf_beta2(double s, double w, const LaxOptions& opt = {}) {
    const TranscendentSolution& sol = cached_solution(1.0);
    double fv;
    if (s >= opt.s_max) fv = detail::lax_terminal(sol, w, s, opt.normalization)[0];
    else fv = solve_fg_in_s(w, s, opt.s_max, opt)(s).first;
    return fv * e2_soft(s, sol);
}

/// ((f+g) e^{I/2} + (f-g) e^{-I/2}) E2^{1/2} / 2 with I = int_s^inf q0.
inline double perturbed_cdf_beta4(double s, double w, const LaxOptions& opt = {}) {
    const TranscendentSolution& sol = cached_solution(1.0);
    double fv, gv;
    if (s >= opt.s_max) {
        const State<2> e = detail::lax_terminal(sol, w, s, opt.normalization);
        fv = e[0];
        gv = e[1];
    } else {
        std::tie(fv, gv) = solve_fg_in_s(w, s, opt.s_max, opt)(s);
    }
    const double I = detail::tails(sol, s)[2];
    return 0.5 * ((fv + gv) * std::exp(0.5 * I) + (fv - gv) * std::exp(-0.5 * I)) * std::sqrt(e2_soft(s, sol));
}

}  // namespace pii
