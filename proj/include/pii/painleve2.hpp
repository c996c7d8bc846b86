#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pii/core_numerics.hpp"
#include "pii/specfun.hpp"

namespace pii {

struct PIIParams {
    double alpha = 0.0;
    double xi = 1.0;
    // Recorded only; no solver exists for complex deformations.
    std::optional<std::complex<double>> xi_star;
};

struct TransSeriesCoeffs {
    static constexpr double c = -17.0 / 12.0;
    static constexpr double c1 = (35.0 / 24.0) * (35.0 / 24.0);
    static constexpr double d = -13.0 / 6.0;
    static constexpr double d1 = 1531.0 / 288.0;
    static constexpr double alpha1 = 5.0 / 72.0;
    static constexpr double a1 = 23.0 / 24.0;
};

struct SeedValue {
    double q = 0.0;
    double q_prime = 0.0;
};

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double hm_seed_min_t = 6.0;

/// Relative size of the first neglected term in the two-instanton seed.
inline double hm_seed_truncation(double t0, double xi) {
    const double zeta = 2.0 / 3.0 * t0 * std::sqrt(t0);
    return xi * std::exp(-2.0 * zeta) / (16.0 * std::numbers::pi * t0 * std::sqrt(t0)) / (zeta * zeta)
           + xi * xi * std::exp(-4.0 * zeta);
}

/// Right boundary data of the Hastings-McLeod family: one-instanton part
/// sqrt(xi) Ai(t) plus the xi-proportional second instanton with the a1
/// correction. The one-instanton prefactor 1 - alpha1/zeta + ... is the
/// asymptotic series of Ai itself, so Ai is used exactly.
inline SeedValue hm_seed(double t0, double xi) {
    if (!(xi >= 0.0 && xi <= 1.0)) throw std::domain_error("hm_seed: xi must lie in [0, 1]");
    if (xi == 0.0) return {0.0, 0.0};
    if (t0 < hm_seed_min_t || hm_seed_truncation(t0, xi) > 1e-15)
        throw std::domain_error("hm_seed: t0 too small for the two-instanton truncation");
    const double sq = std::sqrt(xi);
    const AiryPair a = airy(t0);
    const double rt = std::sqrt(t0);
    const double zeta = 2.0 / 3.0 * t0 * rt;
    const double k = xi * sq / (32.0 * std::pow(std::numbers::pi, 1.5));
    const double e3 = std::exp(-3.0 * zeta) * std::pow(t0, -1.75);
    const double corr = 1.0 - TransSeriesCoeffs::a1 / zeta;
    const double s = k * e3 * corr;
    const double ds = k * e3 * ((-3.0 * rt - 1.75 / t0) * corr + TransSeriesCoeffs::a1 * rt / (zeta * zeta));
    return {sq * a.ai + s, sq * a.ai_prime + ds};
}

/// Truncated two-instanton series for q0 exactly as printed (prefactor
/// 1 - alpha1/zeta rather than Ai); kept for comparison with hm_seed.
inline double transseries_q0(double t, double xi) {
    if (t < 4.0) throw std::domain_error("transseries_q0: t below validity threshold");
    const double zeta = 2.0 / 3.0 * t * std::sqrt(t);
    const double lead = std::sqrt(xi) * std::exp(-zeta) / (2.0 * std::sqrt(std::numbers::pi) * std::pow(t, 0.25));
    return lead * (1.0 - TransSeriesCoeffs::alpha1 / zeta
                   + xi * std::exp(-2.0 * zeta) / (16.0 * std::numbers::pi * t * std::sqrt(t))
                         * (1.0 - TransSeriesCoeffs::a1 / zeta));
}

/// Two-instanton trans-series of u0(x; xi) through the x^{-3} corrections.
inline double transseries_u0(double x, double xi) {
    if (x < 4.0) throw std::domain_error("transseries_u0: x below validity threshold");
    using C = TransSeriesCoeffs;
    const double x32 = x * std::sqrt(x);
    const double pi = std::numbers::pi;
    const double one = xi * std::exp(-4.0 / 3.0 * x32) / (8.0 * pi * x)
                       * (1.0 + C::c / (2.0 * x32) + C::c1 / (2.0 * x * x * x));
    const double two = xi * xi * std::exp(-8.0 / 3.0 * x32) / (128.0 * pi * pi * x * x * std::sqrt(x))
                       * (1.0 + C::d / x32 + C::d1 / (x * x * x));
    return one + two;
}

/// Left asymptotic series of the xi = 1 solution (through t^{-15}).
inline SeedValue hm_left_asymptotic(double t) {
    if (t >= 0.0) throw std::domain_error("hm_left_asymptotic: t must be negative");
    static constexpr double a[] = {1.0, 1.0 / 8.0, -73.0 / 128.0, 10657.0 / 1024.0, -13912277.0 / 32768.0,
                                   8045883943.0 / 262144.0};
    const double s = std::sqrt(-t / 2.0);
    const double r = 1.0 / (t * t * t);
    double sum = 0.0, dsum = 0.0, rk = 1.0;
    for (int k = 0; k < 6; ++k) {
        sum += a[k] * rk;
        dsum += a[k] * (-3.0 * k) * rk / t;
        rk *= r;
    }
    // d/dt sqrt(-t/2) = -1/(4 s)
    return {s * sum, -sum / (4.0 * s) + s * dsum};
}

struct SolveOptions {
    double tol = 1e-13;
    // Left end of the leftward march for xi = 1; the rest is refined.
    double t_join = 0.0;
    // Multiple-shooting segment size: sqrt(2|t|) * h <= growth.
    double growth = 1.5;
    int max_newton = 60;
};

/// Painleve II transcendent of the Hastings-McLeod family on [t_min, t_max].
///
/// The trajectory carries (q, q', u, v, w) with u = int_t^inf q^2,
/// v = int_t^inf u and w = int_t^inf q, the tails beyond t_max taken
/// from the seed.
class TranscendentSolution {
public:
    TranscendentSolution(PIIParams params, double t_min, double t_max, Trajectory<5> traj)
        : params_(params), t_min_(t_min), t_max_(t_max),
          traj_(std::make_shared<const Trajectory<5>>(std::move(traj))) {}

    const PIIParams& params() const { return params_; }
    double xi() const { return params_.xi; }
    double alpha() const { return params_.alpha; }
    double t_min() const { return t_min_; }
    double t_max() const { return t_max_; }
    const Trajectory<5>& trajectory() const { return *traj_; }

    bool contains(double t) const { return t >= t_min_ && t <= t_max_; }

    State<5> state(double t) const {
        if (!contains(t)) throw std::domain_error("TranscendentSolution: t outside the solved domain");
        return (*traj_)(t);
    }

    double q(double t) const { return state(t)[0]; }
    double q_prime(double t) const { return state(t)[1]; }
    /// u0(t) = int_t^inf q^2.
    double u0(double t) const { return state(t)[2]; }
    /// int_t^inf u0 = int_t^inf (x - t) q(x)^2 dx.
    double int_u0(double t) const { return state(t)[3]; }
    /// int_t^inf q.
    double int_q(double t) const { return state(t)[4]; }

    static double second(double t, double q, double alpha) { return t * q + 2.0 * q * q * q - alpha; }
    static double third(double t, double q, double qp) { return q + t * qp + 6.0 * q * q * qp; }

    /// (q, q', q'') as a jet in t.
    Jet q_jet(double t) const {
        const State<5> y = state(t);
        return {y[0], y[1], second(t, y[0], params_.alpha)};
    }

    /// (q', q'', q''') as a jet in t.
    Jet qp_jet(double t) const {
        const State<5> y = state(t);
        return {y[1], second(t, y[0], params_.alpha), third(t, y[0], y[1])};
    }

    /// q'' - t q - 2 q^3 + alpha with q'' from a five-point difference of
    /// the dense q'. Diagnostic only.
    double ode_residual(double t, double h = 1e-3) const {
        const double qpp =
            (q_prime(t - 2 * h) - 8 * q_prime(t - h) + 8 * q_prime(t + h) - q_prime(t + 2 * h)) / (12.0 * h);
        return qpp - second(t, q(t), params_.alpha);
    }

private:
    PIIParams params_;
    double t_min_, t_max_;
    std::shared_ptr<const Trajectory<5>> traj_;
};

namespace detail {

struct PiiRhs {
    double alpha = 0.0;
    void operator()(double t, const State<5>& y, State<5>& d) const {
        d[0] = y[1];
        d[1] = t * y[0] + 2.0 * y[0] * y[0] * y[0] - alpha;
        d[2] = -y[0] * y[0];
        d[3] = -y[2];
        d[4] = -y[0];
    }
};

struct PiiVariationalRhs {
    void operator()(double t, const State<6>& y, State<6>& d) const {
        const double q = y[0];
        const double j = t + 6.0 * q * q;
        d[0] = y[1];
        d[1] = t * q + 2.0 * q * q * q;
        // Fundamental matrix [[y2, y3], [y4, y5]], Y' = [[0, 1], [j, 0]] Y.
        d[2] = y[4];
        d[3] = y[5];
        d[4] = j * y[2];
        d[5] = j * y[3];
    }
};

inline OdeOptions pii_ode_options(double tol) {
    OdeOptions o;
    o.rtol = tol;
    o.atol = 1e-300;
    return o;
}

inline State<5> seed_state(double t_max, double xi) {
    const SeedValue s = hm_seed(t_max, xi);
    if (xi == 0.0) return {0, 0, 0, 0, 0};
    auto qs = [xi](double x) { return hm_seed(x, xi).q; };
    const double mag_q = std::fabs(s.q) + 1e-300;
    const double u = integrate_decaying([&](double x) { double v = qs(x); return v * v; }, t_max, 4.0 / 3.0,
                                        1e-15 * mag_q * mag_q);
    const double v = integrate_decaying([&](double x) { double w = qs(x); return (x - t_max) * w * w; }, t_max,
                                        4.0 / 3.0, 1e-15 * mag_q * mag_q);
    const double w = integrate_decaying(qs, t_max, 2.0 / 3.0, 1e-15 * mag_q);
    return {s.q, s.q_prime, u, v, w};
}

// Damped Newton multiple shooting for the xi = 1 separatrix on
// [t_min, t_join] with q(t_min) from the left asymptotic series and
// q(t_join) from the leftward march.
inline Trajectory<5> refine_left(double t_min, double t_join, const State<5>& join_state, const SolveOptions& opt) {
    std::vector<double> nodes;  // descending from t_join
    {
        double t = t_join;
        nodes.push_back(t);
        while (t > t_min) {
            const double h = std::min(1.0, opt.growth / std::sqrt(2.0 * std::fabs(t) + 1.0));
            t = std::max(t - h, t_min);
            if (t - t_min < 0.25 * h) t = t_min;
            nodes.push_back(t);
        }
        std::reverse(nodes.begin(), nodes.end());
    }
    const std::size_t M = nodes.size() - 1;
    const std::size_t n = 2 * (M + 1);
    if (M == 0) throw SolverError("solve_q0: empty refinement interval");

    // Initial guess: left asymptotics up to t = -2.5, Hermite blend to the join.
    std::vector<double> z(n);
    const double tb = std::min(-2.5, 0.5 * (t_min + t_join));
    const SeedValue lb = hm_left_asymptotic(tb);
    for (std::size_t i = 0; i <= M; ++i) {
        const double t = nodes[i];
        if (t <= tb) {
            const SeedValue g = hm_left_asymptotic(t);
            z[2 * i] = g.q;
            z[2 * i + 1] = g.q_prime;
        } else {
            const double L = t_join - tb, s = (t - tb) / L;
            const double h00 = 2 * s * s * s - 3 * s * s + 1, h10 = s * s * s - 2 * s * s + s;
            const double h01 = -2 * s * s * s + 3 * s * s, h11 = s * s * s - s * s;
            const double d00 = 6 * s * s - 6 * s, d10 = 3 * s * s - 4 * s + 1;
            const double d01 = -6 * s * s + 6 * s, d11 = 3 * s * s - 2 * s;
            z[2 * i] = h00 * lb.q + h10 * L * lb.q_prime + h01 * join_state[0] + h11 * L * join_state[1];
            z[2 * i + 1] = (d00 * lb.q + d10 * L * lb.q_prime + d01 * join_state[0] + d11 * L * join_state[1]) / L;
        }
    }
    const double q_left = hm_left_asymptotic(t_min).q;
    const double q_right = join_state[0];
    OdeOptions vo = pii_ode_options(opt.tol);
    vo.atol = 1e-3 * opt.tol;

    auto residual = [&](const std::vector<double>& zz, std::vector<double>& F, SquareMatrix<double>* J) -> bool {
        F.assign(n, 0.0);
        if (J) *J = SquareMatrix<double>(n);
        F[0] = zz[0] - q_left;
        if (J) (*J)(0, 0) = 1.0;
        for (std::size_t i = 0; i < M; ++i) {
            State<6> y0{zz[2 * i], zz[2 * i + 1], 1.0, 0.0, 0.0, 1.0};
            State<6> y1;
            try {
                auto tr = ode_integrate<6>(PiiVariationalRhs{}, nodes[i], y0, nodes[i + 1], vo);
                y1 = tr.state(tr.size() - 1);
            } catch (const OdeError&) {
                return false;
            }
            F[2 * i + 1] = y1[0] - zz[2 * i + 2];
            F[2 * i + 2] = y1[1] - zz[2 * i + 3];
            if (J) {
                (*J)(2 * i + 1, 2 * i) = y1[2];
                (*J)(2 * i + 1, 2 * i + 1) = y1[3];
                (*J)(2 * i + 2, 2 * i) = y1[4];
                (*J)(2 * i + 2, 2 * i + 1) = y1[5];
                (*J)(2 * i + 1, 2 * i + 2) = -1.0;
                (*J)(2 * i + 2, 2 * i + 3) = -1.0;
            }
        }
        F[n - 1] = zz[2 * M] - q_right;
        if (J) (*J)(n - 1, 2 * M) = 1.0;
        return true;
    };
    auto norm = [](const std::vector<double>& v) {
        double m = 0;
        for (double x : v) m = std::max(m, std::fabs(x));
        return m;
    };

    std::vector<double> F;
    SquareMatrix<double> J(n);
    if (!residual(z, F, &J)) throw SolverError("solve_q0: initial guess hits a pole");
    bool converged = false;
    for (int it = 0; it < opt.max_newton; ++it) {
        std::vector<double> rhs(n);
        for (std::size_t k = 0; k < n; ++k) rhs[k] = -F[k];
        const std::vector<double> dz = solve_linear(J, rhs);
        const double f0 = norm(F);
        double lam = 1.0;
        std::vector<double> zt(n), Ft;
        bool accepted = false;
        for (int damp = 0; damp < 30; ++damp) {
            for (std::size_t k = 0; k < n; ++k) zt[k] = z[k] + lam * dz[k];
            if (residual(zt, Ft, nullptr) && norm(Ft) < (1.0 - 0.25 * lam) * f0 + 1e-15) {
                accepted = true;
                break;
            }
            lam *= 0.5;
        }
        if (!accepted) break;
        z = zt;
        const double step = lam * norm(dz);
        if (!residual(z, F, &J)) throw SolverError("solve_q0: Newton iterate hits a pole");
        if (step <= 1e-14 * std::max(1.0, norm(z)) || norm(F) <= 1e-15) {
            converged = true;
            break;
        }
    }
    if (!converged) throw SolverError("solve_q0: collocation (multiple shooting) did not converge");

    // Rebuild the augmented trajectory leftward so u, v, w stay continuous.
    Trajectory<5> out;
    State<5> cur = join_state;
    out.start(t_join, cur);
    const OdeOptions po = pii_ode_options(opt.tol);
    for (std::size_t i = M; i-- > 0;) {
        State<5> y0{z[2 * (i + 1)], z[2 * (i + 1) + 1], cur[2], cur[3], cur[4]};
        if (i + 1 == M) y0[0] = cur[0], y0[1] = cur[1];
        out.append(ode_integrate<5>(PiiRhs{0.0}, nodes[i + 1], y0, nodes[i], po));
        cur = out.state(out.size() - 1);
    }
    return out;
}

}  // namespace detail

inline double default_t_min(double xi) { return xi == 1.0 ? -16.0 : -30.0; }
inline constexpr double default_t_max = 16.0;

/// Hastings-McLeod family member q(t; xi) with its running integrals.
///
/// For xi < 1 the solution is obtained by a single leftward march from the
/// seed at t_max. For xi = 1 the leftward march is only used down to
/// opt.t_join; below that the separatrix is refined by damped Newton
/// multiple shooting between the march and the left asymptotic series.
inline TranscendentSolution solve_q0(double xi, double t_min, double t_max = default_t_max,
                                     const SolveOptions& opt = {}) {
    if (!(xi >= 0.0 && xi <= 1.0)) throw std::domain_error("solve_q0: xi must lie in [0, 1]");
    if (!(t_min < t_max)) throw std::invalid_argument("solve_q0: t_min must be below t_max");
    if (t_max < hm_seed_min_t || t_max > 40.0) throw std::domain_error("solve_q0: t_max must lie in [6, 40]");
    if (t_min < -40.0) throw std::domain_error("solve_q0: t_min below -40 is not supported");
    if (!(opt.tol >= 1e-15 && opt.tol <= 1e-6)) throw std::invalid_argument("solve_q0: tol out of range");
    PIIParams params{0.0, xi, std::nullopt};
    const State<5> y0 = detail::seed_state(t_max, xi);
    const OdeOptions po = detail::pii_ode_options(opt.tol);
    // Short leftward excursions are marched directly; longer ones need the
    // left asymptotic series, which is only accurate from about t = -10 on.
    const bool separatrix = xi == 1.0 && t_min < -4.0;
    if (separatrix) t_min = std::min(t_min, -10.0);
    const double march_end = separatrix ? opt.t_join : t_min;
    Trajectory<5> traj;
    try {
        traj = ode_integrate<5>(detail::PiiRhs{0.0}, t_max, y0, march_end, po);
    } catch (const OdeError& e) {
        throw SolverError(std::string("solve_q0: march failed: ") + e.what());
    }
    if (separatrix) traj.append(detail::refine_left(t_min, opt.t_join, traj.state(traj.size() - 1), opt));
    return TranscendentSolution(params, t_min, t_max, std::move(traj));
}

inline TranscendentSolution solve_q0(double xi, double t_min, double t_max, double tol) {
    SolveOptions opt;
    opt.tol = tol;
    return solve_q0(xi, t_min, t_max, opt);
}

inline TranscendentSolution solve_q0(double xi) { return solve_q0(xi, default_t_min(xi)); }

/// Solution of the sigma form
///   (u'')^2 + 4 u' ((u')^2 - x u' + u) - a^2 = 0
/// as a jet-valued function on [x_min, x_max].
struct SigmaSolution {
    double a = 0.0;
    double xi = 1.0;
    double x_min = 0.0;
    double x_max = 0.0;
    std::function<Jet(double)> eval;
    // Third derivative where available (needed to differentiate u' twice).
    std::function<double(double)> eval_third;
    std::string provenance;

    bool contains(double x) const { return x >= x_min && x <= x_max; }
    Jet jet(double x) const {
        if (!contains(x)) throw std::domain_error("SigmaSolution: x outside the domain");
        return eval(x);
    }
    double u(double x) const { return jet(x).v; }
};

/// u0(x) = int_x^inf q0^2, a = 0 member of the sigma-form ladder.
inline SigmaSolution sigma0_from_q0(const TranscendentSolution& sol) {
    SigmaSolution s;
    s.a = 0.0;
    s.xi = sol.xi();
    s.x_min = sol.t_min();
    s.x_max = sol.t_max();
    s.provenance = "u0 = int q0^2";
    s.eval = [sol](double x) {
        const State<5> y = sol.state(x);
        return Jet{y[2], -y[0] * y[0], -2.0 * y[0] * y[1]};
    };
    s.eval_third = [sol](double x) {
        const Jet q = sol.q_jet(x);
        return -2.0 * q.d1 * q.d1 - 2.0 * q.v * q.d2;
    };
    return s;
}

inline double sigma_residual_at(const Jet& j, double x, double a) {
    return j.d2 * j.d2 + 4.0 * j.d1 * (j.d1 * j.d1 - x * j.d1 + j.v) - a * a;
}

inline double sigma_residual_at(const SigmaSolution& s, double x) { return sigma_residual_at(s.jet(x), x, s.a); }

/// max |residual| over an evenly spaced sample of [lo, hi].
inline double sigma_residual(const SigmaSolution& s, double lo, double hi, std::size_t samples = 241) {
    if (!(lo <= hi) || samples < 2) throw std::invalid_argument("sigma_residual: bad sample interval");
    double m = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
        m = std::max(m, std::fabs(sigma_residual_at(s, x)));
    }
    return m;
}

}  // namespace pii
