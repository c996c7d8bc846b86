#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pii/distributions.hpp"
#include "pii/finite_n.hpp"
#include "pii/kernels.hpp"
#include "pii/ladder.hpp"
#include "pii/laxpair.hpp"
#include "pii/table.hpp"

namespace pii {

/// One property check: `value` is a nonnegative discrepancy compared
/// against `tolerance`.
struct Check {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string note;
};

struct SuiteReport {
    std::string suite;
    std::vector<Check> checks;

    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
    }
    double max_value() const {
        double m = 0.0;
        for (const auto& c : checks) m = std::max(m, c.value);
        return m;
    }
};

namespace detail {

inline void add_check(SuiteReport& r, std::string name, double value, double tol, std::string note = {}) {
    const bool ok = std::isfinite(value) && value <= tol;
    r.checks.push_back({std::move(name), value, tol, ok, std::move(note)});
}

// Largest decrease along the grid plus any excursion outside [0, 1].
inline double cdf_violation(const std::function<double(double)>& f, double lo, double hi, double step) {
    double worst = 0.0, prev = -INFINITY;
    for (double s : range_grid(lo, hi, step)) {
        const double v = f(s);
        if (!std::isfinite(v)) return INFINITY;
        worst = std::max({worst, prev - v, -v, v - 1.0});
        prev = v;
    }
    return worst;
}

inline double max_abs_over(const std::function<double(double)>& f, double lo, double hi, std::size_t n) {
    double m = 0.0;
    for (double x : sample(lo, hi, n)) m = std::max(m, std::fabs(f(x)));
    return m;
}

}  // namespace detail

inline SuiteReport verify_sigma() {
    SuiteReport r{"sigma", {}};
    for (double xi : {0.5, 1.0}) {
        const TranscendentSolution& sol = cached_solution(xi);
        const SigmaSolution u0 = sigma0_from_q0(sol);
        // u0' is rebuilt from the stored u by a centered difference of the
        // dense output, so the check exercises the integrated component.
        const double h = 1e-3;
        detail::add_check(r, "u0' + q0^2, xi=" + format_double(xi),
                          detail::max_abs_over(
                              [&](double x) {
                                  const double d = (u0.u(x - 2 * h) - 8 * u0.u(x - h) + 8 * u0.u(x + h) - u0.u(x + 2 * h)) /
                                                   (12 * h);
                                  return d + sol.q(x) * sol.q(x);
                              },
                              -8.0, 6.0, 281),
                          1e-9);
        detail::add_check(r, "PII residual off-grid, xi=" + format_double(xi),
                          detail::max_abs_over([&](double t) { return sol.ode_residual(t); }, -8.0 + 0.0137, 8.0, 163),
                          1e-8);
        detail::add_check(r, "sigma-form residual a=0, xi=" + format_double(xi), sigma_residual(u0, -8.0, 6.0), 1e-7);
    }
    return r;
}

inline SuiteReport verify_gambier() {
    SuiteReport r{"gambier", {}};
    for (double xi : {0.5, 1.0}) {
        const TranscendentSolution& sol = cached_solution(xi);
        const std::string tag = ", xi=" + format_double(xi);
        detail::add_check(r, "Gambier eps=+1" + tag, gambier_residual(sol, 1, -6.0, 6.0), 1e-7);
        detail::add_check(r, "Gambier eps=-1" + tag, gambier_residual(sol, -1, -6.0, 6.0), 1e-7);
        detail::add_check(r, "u0' from q_{1/2}" + tag, ta1_residual(sol, -6.0, 6.0), 1e-7);
        const HalfPair hp = u_half_pair(sol);
        detail::add_check(r, "u_{1/2} - u_{-1/2} + 2^{1/3} q0" + tag,
                          detail::max_abs_over(
                              [&](double x) { return hp.plus.u(x) - hp.minus.u(x) + cbrt2 * sol.q(-cbrt2 * x); }, -2.0,
                              4.0, 121),
                          1e-8);
    }
    return r;
}

inline SuiteReport verify_ladder() {
    SuiteReport r{"ladder", {}};
    const TranscendentSolution& sol = cached_solution(1.0);
    const SigmaLadder l = build_ladder(sol);
    detail::add_check(r, "sigma residual u_{1/2}", sigma_residual(l.at(0.5), -2.0, 4.0), 1e-6);
    detail::add_check(r, "sigma residual u_{-1/2}", sigma_residual(l.at(-0.5), -2.0, 4.0), 1e-6);
    detail::add_check(r, "sigma residual u_1", sigma_residual(l.at(1.0), -2.0, 6.0), 1e-6);
    detail::add_check(r, "sigma residual u_2", sigma_residual(l.at(2.0), 0.0, 6.0), 1e-6);
    detail::add_check(r, "sigma residual u_3 (recurrence)", sigma_residual(l.at(3.0), 0.0, 6.0), 1e-6);
    detail::add_check(r, "recurrence at mu=0", adpi_mu0_residual(l.at(0.0), l.at(1.0), l.at(2.0), 0.0, 6.0), 1e-7);
    const HalfTranscendent h = q_half_from_q0(sol);
    detail::add_check(r, "PII alpha=1/2 residual of q_{1/2}",
                      detail::max_abs_over([&](double t) { return h.pii_residual(t); }, -10.0, 10.0, 201), 1e-7);
    return r;
}

inline SuiteReport verify_kernels() {
    SuiteReport r{"kernels", {}};
    const KernelEvaluator k0 = KernelEvaluator::airy(0.0);
    double m = 0.0;
    for (double x : {0.0, 0.4, 1.0, 2.5})
        for (double y : {0.2, 1.0, 2.0}) m = std::max(m, std::fabs(k_even_recurrence(k0, x, y, 0.0) - k2_kernel(x, y, 0.0)));
    detail::add_check(r, "recurrence from K0 vs closed K2", m, 1e-12);
    const KernelEvaluator k4 = KernelEvaluator::even(4, 1.0);
    m = 0.0;
    double z = 0.0;
    for (double x : {0.1, 0.3, 0.8, 1.1, 2.0}) {
        for (double y : {0.2, 1.1, 1.7}) m = std::max(m, std::fabs(k4(x, y) - k4(y, x)));
        z = std::max(z, std::fabs(k4(x, 0.0)));
    }
    detail::add_check(r, "K4 symmetry", m, 1e-12);
    detail::add_check(r, "K4(x, 0) = 0", z, 1e-12);
    double neg = 0.0;
    for (int mu : {0, 2, 4}) {
        const KernelEvaluator k = KernelEvaluator::even(mu, 0.5);
        for (double x : {0.0, 0.3, 1.0, 2.2})
            for (double y : {0.1, 0.6, 1.4}) {
                const double d = k.diagonal(x) * k.diagonal(y) - k(x, y) * k(x, y);
                neg = std::max({neg, -d, -k.diagonal(x)});
            }
    }
    detail::add_check(r, "2x2 correlation determinants nonnegative", neg, 1e-10);
    detail::add_check(r, "-d/dc rho tail (mu=0) = K0(0,0;c), c=5",
                      std::fabs(-rho1_tail_dc(0, 5.0) - airy_kernel(0.0, 0.0, 5.0)), 1e-8);
    detail::add_check(r, "rho tail (mu=0) quadrature vs closed form, c=5",
                      std::fabs(rho1_tail(0, 5.0) - rho1_tail0_closed(5.0)), 1e-8);
    return r;
}

inline SuiteReport verify_fredholm() {
    SuiteReport r{"fredholm", {}};
    for (double xi : {0.25, 0.5, 1.0}) {
        const TranscendentSolution& sol = cached_solution(xi);
        FredholmConfig cfg;
        cfg.xi = xi;
        double m = 0.0, mono = 0.0, prev = -1.0;
        for (double s = -8.0; s <= 4.0 + 1e-9; s += 2.0) {
            const double f = fredholm_e2(s, cfg);
            m = std::max(m, std::fabs(f - e2_soft(s, sol)));
            mono = std::max(mono, prev - f);
            prev = f;
        }
        detail::add_check(r, "Painleve vs Nystrom E2, xi=" + format_double(xi), m, 1e-8);
        detail::add_check(r, "Nystrom E2 nondecreasing in s, xi=" + format_double(xi), mono, 0.0);
    }
    return r;
}

inline SuiteReport verify_distributions() {
    SuiteReport r{"distributions", {}};
    const TranscendentSolution& sol = cached_solution(1.0);
    double m = 0.0;
    for (double s = -8.0; s <= 6.0 + 1e-9; s += 0.5) m = std::max(m, std::fabs(e2_soft(s, sol) - e2_soft_direct(s, sol)));
    detail::add_check(r, "E2 single vs double integral", m, 1e-9);
    detail::add_check(r, "E2 is a CDF on [-8, 6]", detail::cdf_violation([&](double s) { return e2_soft(s, sol); }, -8, 6, 0.1), 0.0);
    detail::add_check(r, "E1 is a CDF on [-8, 6]", detail::cdf_violation([](double s) { return e1_soft(s); }, -8, 6, 0.1), 0.0);
    detail::add_check(r, "E4 is a CDF on [-8, 6]", detail::cdf_violation([](double s) { return e4_soft(s); }, -8, 6, 0.1), 0.0);
    detail::add_check(r, "E1^2 e^{int q0} = E2",
                      detail::max_abs_over(
                          [&](double s) { return e1_soft(s) * e1_soft(s) * std::exp(sol.int_q(s)) - e2_soft(s, sol); }, -8,
                          6, 57),
                      1e-9);
    detail::add_check(r, "F+ F- = E2",
                      detail::max_abs_over([&](double s) { return f_plus(s, sol) * f_minus(s, sol) - e2_soft(s, sol); },
                                           -8, 6, 57),
                      1e-9);
    detail::add_check(r, "pdf integrates to 1 on [-10, 8]",
                      std::fabs(integrate_panels([&](double s) { return pdf_largest_beta2(s, sol); }, -10, 8, 0.25, 20) - 1.0),
                      1e-6);
    return r;
}

inline SuiteReport verify_lax() {
    SuiteReport r{"lax", {}};
    const TranscendentSolution& sol = cached_solution(1.0);
    const std::vector<double> sg{-4.0, -2.5, -1.0, 0.5, 2.0}, wg{0.25, 0.6875, 1.125, 1.5625, 2.0};
    detail::add_check(r, "route independence on 5x5 grid", lax_route_residual(sg, wg), 1e-6);
    detail::add_check(r, "mixed-derivative compatibility at (0, 1)", lax_compatibility_residual(0.0, 1.0), 1e-6);
    detail::add_check(r, "w=0 beta=2 law vs cosh(I) E2 at s=-2",
                      std::fabs(perturbed_cdf_beta2(-2.0, 0.0) - std::cosh(sol.int_q(-2.0)) * e2_soft(-2.0, sol)), 1e-7);
    detail::add_check(r, "w=0 beta=4 law vs E4 at s=-1", std::fabs(perturbed_cdf_beta4(-1.0, 0.0) - e4_soft(-1.0)), 1e-7);
    detail::add_check(r, "beta=2 law is a CDF on [-6, 4], w=1",
                      detail::cdf_violation([](double s) { return perturbed_cdf_beta2(s, 1.0); }, -6, 4, 0.25), 0.0);
    detail::add_check(r, "beta=4 law is a CDF on [-6, 4], w=1",
                      detail::cdf_violation([](double s) { return perturbed_cdf_beta4(s, 1.0); }, -6, 4, 0.25), 0.0);
    LaxOptions con;
    con.normalization = LaxNormalization::connected;
    for (double w : {0.0, 1.0, 2.0}) {
        detail::add_check(r, "connected: beta=2 law is a CDF on [-6, 4], w=" + format_double(w),
                          detail::cdf_violation([&](double s) { return perturbed_cdf_beta2(s, w, con); }, -6, 4, 0.25), 0.0);
        detail::add_check(r, "connected: beta=4 law is a CDF on [-6, 4], w=" + format_double(w),
                          detail::cdf_violation([&](double s) { return perturbed_cdf_beta4(s, w, con); }, -6, 4, 0.25), 0.0);
    }
    detail::add_check(r, "connected: w=0 beta=2 law vs E1^2 at s=-2",
                      std::fabs(perturbed_cdf_beta2(-2.0, 0.0, con) - e1_soft(-2.0) * e1_soft(-2.0)), 1e-7);
    detail::add_check(r, "connected: w=0 beta=4 law vs E1 at s=-1",
                      std::fabs(perturbed_cdf_beta4(-1.0, 0.0, con) - e1_soft(-1.0)), 1e-7);
    return r;
}

inline SuiteReport verify_finite_n() {
    SuiteReport r{"finite_n", {}};
    double inc = 0.0;
    for (int N : {1, 3, 8})
        for (double l = 0.0; l < 4.0; l += 0.25) inc = std::max(inc, hammersley_cdf(N, l + 0.25) - hammersley_cdf(N, l));
    detail::add_check(r, "Hammersley law nonincreasing in lambda", inc, 1e-15);
    double dec = 0.0;
    for (double l : {0.5, 2.0, 5.0})
        for (int N = 1; N < 20; ++N) dec = std::max(dec, hammersley_cdf(N, l) - hammersley_cdf(N + 1, l));
    detail::add_check(r, "Hammersley law nondecreasing in N", dec, 1e-15);
    double cut = 0.0;
    for (int N : {1, 2, 4, 6})
        for (double L : {1.0, 2.5, 4.0})
            for (ThetaKind k : {ThetaKind::E_tilde, ThetaKind::F_tilde}) {
                ThetaSumSpec s{N, L, 0, k};
                const double a = theta_sum(s);
                s.cutoff = 2 * detail::theta_auto_cutoff(N, L);
                cut = std::max(cut, std::fabs(theta_sum(s) - a));
            }
    detail::add_check(r, "theta sums stable under cutoff doubling", cut, 1e-12);
    double brute = 0.0;
    for (double L : {1.0, 2.0, 3.5})
        for (ThetaKind k : {ThetaKind::E_tilde, ThetaKind::F_tilde}) {
            const ThetaSumSpec s{2, L, 0, k};
            brute = std::max(brute, std::fabs(theta_sum(s) - theta_sum_direct(s)));
        }
    detail::add_check(r, "N=2 determinant route vs unreduced tuple sum", brute, 1e-12);
    detail::add_check(r, "excursion law (N=2) is a CDF on [0.5, 6]",
                      detail::cdf_violation([](double L) { return excursion_max_cdf(2, L); }, 0.5, 6.0, 0.05), 0.0);
    return r;
}

inline std::vector<std::string> suite_names() {
    return {"sigma", "gambier", "ladder", "kernels", "fredholm", "distributions", "lax", "finite_n"};
}

inline SuiteReport run_suite(const std::string& name) {
    if (name == "sigma") return verify_sigma();
    if (name == "gambier") return verify_gambier();
    if (name == "ladder") return verify_ladder();
    if (name == "kernels") return verify_kernels();
    if (name == "fredholm") return verify_fredholm();
    if (name == "distributions") return verify_distributions();
    if (name == "lax") return verify_lax();
    if (name == "finite_n" || name == "finite-n") return verify_finite_n();
    throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace pii
