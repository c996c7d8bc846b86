// Acceptance run: one PASS/FAIL line per criterion, followed by the measured
// quantities behind it. Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "pii/distributions.hpp"
#include "pii/finite_n.hpp"
#include "pii/kernels.hpp"
#include "pii/ladder.hpp"
#include "pii/laxpair.hpp"
#include "pii/specfun.hpp"
#include "pii/table.hpp"

using namespace pii;

namespace {

struct Part {
    std::string what;
    double value;
    double tol;
    bool ok;
};

struct Criterion {
    int id;
    std::string title;
    std::vector<Part> parts;
    std::vector<std::string> notes;

    void le(std::string what, double value, double tol) { parts.push_back({std::move(what), value, tol, std::isfinite(value) && value <= tol}); }
    // |ratio - 1| <= tol, reported as the ratio itself.
    void ratio(std::string what, double r, double tol) {
        parts.push_back({std::move(what) + " ratio", r, tol, std::isfinite(r) && std::fabs(r - 1.0) <= tol});
    }
    void flag(std::string what, bool ok) { parts.push_back({std::move(what), ok ? 1.0 : 0.0, 1.0, ok}); }
    bool ok() const {
        for (const auto& p : parts)
            if (!p.ok) return false;
        return true;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double max_over(double lo, double hi, std::size_t n, const std::function<double(double)>& f) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(f(lo + (hi - lo) * double(i) / double(n - 1))));
    return m;
}

// Largest decrease plus any excursion outside [0, 1] along a grid.
double cdf_violation(double lo, double hi, double step, const std::function<double(double)>& f) {
    double worst = 0.0, prev = -INFINITY;
    for (double s : range_grid(lo, hi, step)) {
        const double v = f(s);
        if (!std::isfinite(v)) return INFINITY;
        worst = std::max({worst, prev - v, -v, v - 1.0});
        prev = v;
    }
    return worst;
}

double instanton(double x) { return std::exp(-4.0 / 3.0 * x * std::sqrt(x)); }

Criterion c1() {
    Criterion c{1, "Painleve-route E2 vs Nystrom Fredholm determinant", {}, {}};
    const auto t0 = std::chrono::steady_clock::now();
    for (double xi : {0.25, 0.5, 1.0}) {
        const TranscendentSolution sol = solve_q0(xi);
        FredholmConfig cfg;
        cfg.xi = xi;
        double m = 0.0;
        for (double s = -8.0; s <= 4.0 + 1e-9; s += 2.0) m = std::max(m, std::fabs(e2_soft(s, sol) - fredholm_e2(s, cfg)));
        c.le("max |diff| on s=-8..4, xi=" + format_double(xi), m, 1e-8);
    }
    c.le("runtime [s]", seconds_since(t0), 60.0);
    return c;
}

Criterion c2() {
    Criterion c{2, "sigma identity u0' = -q0^2 on [-8, 6]", {}, {}};
    for (double xi : {0.5, 1.0}) {
        const TranscendentSolution& sol = cached_solution(xi);
        const double h = 1e-3;
        // u0' by a five-point difference of the integrated u0.
        c.le("max |u0' + q0^2|, xi=" + format_double(xi), max_over(-8.0, 6.0, 281, [&](double x) {
                 const double d = (sol.u0(x - 2 * h) - 8 * sol.u0(x - h) + 8 * sol.u0(x + h) - sol.u0(x + 2 * h)) / (12 * h);
                 return d + sol.q(x) * sol.q(x);
             }),
             1e-9);
    }
    return c;
}

Criterion c3() {
    Criterion c{3, "Gambier identity and the q_{1/2} form of u0' on [-6, 6]", {}, {}};
    for (double xi : {0.5, 1.0}) {
        const TranscendentSolution& sol = cached_solution(xi);
        const std::string tag = ", xi=" + format_double(xi);
        c.le("Gambier eps=+1" + tag, gambier_residual(sol, 1, -6.0, 6.0), 1e-7);
        c.le("Gambier eps=-1" + tag, gambier_residual(sol, -1, -6.0, 6.0), 1e-7);
        c.le("u0' + 2^{-1/3}(q' + q^2 + t/2)" + tag, ta1_residual(sol, -6.0, 6.0), 1e-7);
    }
    c.notes.push_back("xi=0.5: windows of half-width 0.05 around the poles of q_{1/2} are excluded");
    return c;
}

Criterion c4() {
    Criterion c{4, "ladder members satisfy the sigma form", {}, {}};
    const SigmaLadder l = build_ladder(cached_solution(1.0));
    c.le("u_{1/2}, a=1/2 on [-2, 4]", sigma_residual(l.at(0.5), -2.0, 4.0), 1e-6);
    c.le("u_1, a=1 on [-2, 6]", sigma_residual(l.at(1.0), -2.0, 6.0), 1e-6);
    c.le("u_2, a=2 on [0, 6]", sigma_residual(l.at(2.0), 0.0, 6.0), 1e-6);
    c.le("u_3 by recurrence, a=3 on [0, 6]", sigma_residual(l.at(3.0), 0.0, 6.0), 1e-6);
    c.le("recurrence at mu=0 among u0, u1, u2 on [0, 6]", adpi_mu0_residual(l.at(0.0), l.at(1.0), l.at(2.0), 0.0, 6.0), 1e-7);
    return c;
}

Criterion c5() {
    Criterion c{5, "large-x expansions of u_1, u_2", {}, {}};
    const SigmaLadder one = build_ladder(cached_solution(1.0));
    const SigmaLadder half = build_ladder(cached_solution(0.5));
    const double x = 8.0;
    c.le("|u_1(8) + sqrt x + 1/(4x) - 5/(32 x^{5/2})|", std::fabs(one.at(1.0).u(x) - asym_u_mu_xistar(x, 1.0)), 1e-3);
    c.le("|u_2(8) + 2 sqrt x + 1/x - 17/(16 x^{5/2})|", std::fabs(one.at(2.0).u(x) - asym_u_mu_xistar(x, 2.0)), 1e-3);
    const double y = 4.0;
    const AiryPair a = airy(y);
    // u_1(x; 0+) = Ai'/Ai.
    const double d1 = one.at(1.0).u(y) - a.ai_prime / a.ai;
    c.ratio("u_1 xi-part at x=4 vs -xi e^{-4/3 x^{3/2}}/(64 pi x^{5/2})",
            d1 / (-instanton(y) / (64.0 * std::numbers::pi * std::pow(y, 2.5))), 0.25);
    const double d2 = (half.at(2.0).u(y) - one.at(2.0).u(y)) / (0.5 - 1.0);
    c.ratio("u_2 xi-difference at x=4 times 256 pi x^4 e^{4/3 x^{3/2}}", d2 * 256.0 * std::numbers::pi * std::pow(y, 4) / instanton(y),
            0.25);
    return c;
}

Criterion c6() {
    Criterion c{6, "half-integer members: large-x form and oscillatory envelope", {}, {}};
    const SigmaLadder one = build_ladder(cached_solution(1.0));
    const double x = 8.0;
    c.le("|u_{1/2}(8) + sqrt(8)/2|", std::fabs(one.at(0.5).u(x) + std::sqrt(x) / 2.0), 1e-3);
    c.le("|u_{-1/2}(8) - sqrt(8)/2|", std::fabs(one.at(-0.5).u(x) - std::sqrt(x) / 2.0), 1e-3);
    const double xi = 0.5;
    const TranscendentSolution sol = solve_q0(xi, -32.0);
    const HalfPair hp = u_half_pair(sol);
    // Window mean of -2^{-1/3} u_{1/2}(2^{-1/3} x) + x^2/8 over x in [29, 31].
    double sum = 0.0;
    const int n = 2001;
    for (int i = 0; i < n; ++i) {
        const double X = 29.0 + 2.0 * i / (n - 1.0);
        sum += -hp.plus.u(X / cbrt2) / cbrt2 + X * X / 8.0;
    }
    const double mean = sum / n;
    const double amp = std::fabs(std::log(1.0 - xi)) * std::sqrt(30.0) / (2.0 * std::numbers::pi);
    c.ratio("xi=0.5 window mean near x=30 vs |log(1-xi)| sqrt(x)/(2 pi)", mean / amp, 0.10);
    return c;
}

Criterion c7() {
    Criterion c{7, "boundary asymptotics and left tails", {}, {}};
    const TranscendentSolution& sol = cached_solution(1.0);
    c.ratio("q0(-8; 1)/sqrt(4)", sol.q(-8.0) / 2.0, 1e-3);
    const TranscendentSolution& h = cached_solution(0.5);
    const double t = -30.0;
    const double amp = std::sqrt(h.q(t) * h.q(t) + h.q_prime(t) * h.q_prime(t) / (-t)) * std::pow(-t, 0.25);
    c.ratio("xi=0.5 amplitude (-t)^{1/4} sqrt(q^2 + q'^2/|t|) at t=-30 vs d", amp / std::sqrt(-std::log(0.5) / std::numbers::pi),
            0.05);
    c.ratio("log E2(-8) / (-8^3/12)", std::log(e2_soft(-8.0, sol)) / (-512.0 / 12.0), 0.05);
    c.ratio("fitted (-s)^3 coefficient vs 1/12", tail_exponent_left(1.0) * 12.0, 0.05);
    c.ratio("fitted (-s)^{3/2} coefficient, xi=0.5, vs (2/3pi) log 2",
            tail_exponent_left(0.5) / (2.0 / (3.0 * std::numbers::pi) * std::log(2.0)), 0.10);
    return c;
}

Criterion c8() {
    Criterion c{8, "kernel recurrence, large-c forms, second-order u0", {}, {}};
    const KernelEvaluator k0 = KernelEvaluator::airy(0.0);
    double m = 0.0;
    for (double x : {0.0, 0.5, 1.0, 2.0})
        for (double y : {0.3, 1.0, 2.0}) m = std::max(m, std::fabs(k_even_recurrence(k0, x, y, 0.0) - k2_kernel(x, y, 0.0)));
    c.le("max |recurrence - closed K2|", m, 1e-12);
    c.ratio("K2(0.5, 0.5; 6) vs large-c form", k2_kernel(0.5, 0.5, 6.0) / k2_large_c(0.5, 0.5, 6.0), 0.15);
    c.ratio("-d/dc tail integral (mu=2), c=6, vs e^{-4/3 c^{3/2}}/(256 pi c^4)", -rho1_tail_dc(2, 6.0) / rho1_tail2_large_c(6.0), 0.15);
    c.ratio("u0 second order vs trans-series, c=5", u0_second_order(5.0, 1.0) / transseries_u0(5.0, 1.0), 1e-3);
    return c;
}

Criterion c9() {
    Criterion c{9, "Lax pair: routes, compatibility, w=0 reductions, CDF validity", {}, {}};
    const TranscendentSolution& sol = cached_solution(1.0);
    const std::vector<double> sg{-4.0, -2.5, -1.0, 0.5, 2.0}, wg{0.25, 0.6875, 1.125, 1.5625, 2.0};
    c.le("route independence on 5x5 grid in [-4,2]x[0.25,2]", lax_route_residual(sg, wg), 1e-6);
    c.le("mixed-derivative compatibility at (0, 1)", lax_compatibility_residual(0.0, 1.0), 1e-6);
    double r2 = 0.0, r4 = 0.0;
    for (double s : {-4.0, -2.0, -1.0, 0.0, 2.0}) {
        r2 = std::max(r2, std::fabs(perturbed_cdf_beta2(s, 0.0) - std::cosh(sol.int_q(s)) * e2_soft(s, sol)));
        r4 = std::max(r4, std::fabs(perturbed_cdf_beta4(s, 0.0) - e4_soft(s)));
    }
    c.le("w=0 beta=2 law vs cosh(int q0) E2", r2, 1e-7);
    c.le("w=0 beta=4 law vs E4", r4, 1e-7);
    for (double w : {0.0, 1.0}) {
        c.le("beta=2 law CDF violation on [-6, 4], w=" + format_double(w),
             cdf_violation(-6, 4, 0.25, [&](double s) { return perturbed_cdf_beta2(s, w); }), 0.0);
        c.le("beta=4 law CDF violation on [-6, 4], w=" + format_double(w),
             cdf_violation(-6, 4, 0.25, [&](double s) { return perturbed_cdf_beta4(s, w); }), 0.0);
    }
    LaxOptions con;
    con.normalization = LaxNormalization::connected;
    double v = 0.0;
    for (double w : {0.0, 1.0, 2.0}) {
        v = std::max(v, cdf_violation(-6, 4, 0.25, [&](double s) { return perturbed_cdf_beta2(s, w, con); }));
        v = std::max(v, cdf_violation(-6, 4, 0.25, [&](double s) { return perturbed_cdf_beta4(s, w, con); }));
    }
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "connected normalization (not scored): CDF violation %.3g for w in {0,1,2}; at w=0 it gives E1^2 and E1 "
                  "(diff %.2g, %.2g)",
                  v, std::fabs(perturbed_cdf_beta2(-2.0, 0.0, con) - e1_soft(-2.0) * e1_soft(-2.0)),
                  std::fabs(perturbed_cdf_beta4(-1.0, 0.0, con) - e1_soft(-1.0)));
    c.notes.push_back(buf);
    return c;
}

Criterion c10() {
    Criterion c{10, "finite-N convergence and CDF checks", {}, {}};
    const auto t0 = std::chrono::steady_clock::now();
    const double lambda = 40.0;
    const int N = static_cast<int>(std::ceil(2.0 * lambda));
    c.le("|hammersley(N=80, lambda=40) - E2(0)|", std::fabs(hammersley_cdf(N, lambda) - fredholm_e2(0.0)), 0.05);
    const int n6 = 6;
    const double L = std::sqrt(2.0 * n6);
    c.le("|F_6(sqrt 12) - E1(0)|", std::fabs(theta_sum({n6, L, 0, ThetaKind::F_tilde}) - e1_soft(0.0)), 0.1);
    double inc = 0.0, dec = 0.0;
    for (int n : {1, 4, 10})
        for (double l = 0.0; l < 5.0; l += 0.25) inc = std::max(inc, hammersley_cdf(n, l + 0.25) - hammersley_cdf(n, l));
    for (double l : {1.0, 3.0})
        for (int n = 1; n < 20; ++n) dec = std::max(dec, hammersley_cdf(n, l) - hammersley_cdf(n + 1, l));
    c.le("hammersley monotonicity violation (lambda up, N down)", std::max(inc, dec), 0.0);
    c.le("F_2 CDF violation on L in [0.5, 6]", cdf_violation(0.5, 6.0, 0.05, [](double x) { return excursion_max_cdf(2, x); }), 0.0);
    c.le("runtime [s]", seconds_since(t0), 300.0);
    return c;
}

}  // namespace

int main() {
    const std::vector<std::function<Criterion()>> all = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};
    int failed = 0;
    for (const auto& make : all) {
        Criterion c;
        try {
            c = make();
        } catch (const std::exception& e) {
            c.id = static_cast<int>(&make - all.data()) + 1;
            c.title = "evaluation error";
            c.parts.push_back({e.what(), INFINITY, 0.0, false});
        }
        const bool ok = c.ok();
        failed += ok ? 0 : 1;
        std::printf("%s %2d. %s\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str());
        for (const auto& p : c.parts)
            std::printf("        %s %-72s %.6g (tol %.3g)\n", p.ok ? " " : "*", p.what.c_str(), p.value, p.tol);
        for (const auto& n : c.notes) std::printf("          note: %s\n", n.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
    return failed;
}
