#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>

#include "pii/core/dop853_tableau.hpp"
#include "pii/core/trajectory.hpp"

namespace pii {

class OdeError : public std::runtime_error {
public:
    enum class Kind { step_underflow, non_finite, too_many_steps };

    OdeError(Kind kind, double t, const std::string& what)
        : std::runtime_error(what), kind_(kind), t_(t) {}

    Kind kind() const { return kind_; }
    double where() const { return t_; }

private:
    Kind kind_;
    double t_;
};

struct OdeOptions {
    double rtol = 1e-12;
    double atol = 1e-12;
    double h_max = 0.0;  // 0 means |t1 - t0|
    std::size_t max_steps = 2'000'000;
};

namespace detail {

template <std::size_t N, class Rhs>
class Dop853 {
public:
    Dop853(Rhs& rhs, const OdeOptions& opt) : f_(rhs), opt_(opt) {}

    Trajectory<N> run(double t0, const State<N>& y0, double t1) {
        Trajectory<N> out;
        out.start(t0, y0);
        if (t1 == t0) return out;

        const double posneg = t1 > t0 ? 1.0 : -1.0;
        const double hmax = opt_.h_max > 0 ? std::min(opt_.h_max, std::fabs(t1 - t0)) : std::fabs(t1 - t0);
        const double uround = 2.3e-16, safe = 0.9, fac1 = 1.0 / 3.0, fac2 = 6.0;
        const double expo1 = 1.0 / 8.0;

        t_ = t0;
        y_ = y0;
        f_(t_, y_, k1_);
        check_finite(k1_, t_);
        double h = initial_step(hmax, posneg);
        double facold = 1e-4;
        bool last = false, reject = false;
        std::size_t nstep = 0;

        while (true) {
            if (nstep++ > opt_.max_steps)
                throw OdeError(OdeError::Kind::too_many_steps, t_, "ode_integrate: step budget exhausted");
            if (0.1 * std::fabs(h) <= std::fabs(t_) * uround || h == 0.0)
                throw OdeError(OdeError::Kind::step_underflow, t_,
                               "ode_integrate: step size underflow near t=" + std::to_string(t_));
            if ((t_ + 1.01 * h - t1) * posneg > 0.0) {
                h = t1 - t_;
                last = true;
            }
            step(h);
            double err = std::fabs(h) * error_estimate();
            if (!std::isfinite(err)) err = 1e10;
            const double fac11 = std::pow(err, expo1);
            double fac = std::max(1.0 / fac2, std::min(1.0 / fac1, fac11 / safe));
            double hnew = h / fac;

            if (err <= 1.0) {
                facold = std::max(err, 1e-4);
                (void)facold;
                State<N> ynew = k5_;
                check_finite(ynew, tph_);
                f_(tph_, ynew, k4_);
                check_finite(k4_, tph_);

                typename Trajectory<N>::Step st;
                dense(h, st);
                st.t0 = t_;
                st.h = h;

                k1_ = k4_;
                y_ = ynew;
                t_ = last ? t1 : tph_;
                out.push(st, t_, y_);
                if (last) return out;

                if (std::fabs(hnew) > hmax) hnew = posneg * hmax;
                if (reject) hnew = posneg * std::min(std::fabs(hnew), std::fabs(h));
                reject = false;
            } else {
                hnew = h / std::min(1.0 / fac1, fac11 / safe);
                reject = true;
                last = false;
            }
            h = hnew;
        }
    }

private:
    static void check_finite(const State<N>& y, double t) {
        for (double v : y)
            if (!std::isfinite(v))
                throw OdeError(OdeError::Kind::non_finite, t,
                               "ode_integrate: non-finite state near t=" + std::to_string(t));
    }

    double scale(std::size_t i, double a, double b) const {
        return opt_.atol + opt_.rtol * std::max(std::fabs(a), std::fabs(b));
    }

    double initial_step(double hmax, double posneg) {
        double dnf = 0, dny = 0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sk = scale(i, y_[i], 0.0);
            dnf += (k1_[i] / sk) * (k1_[i] / sk);
            dny += (y_[i] / sk) * (y_[i] / sk);
        }
        double h = (dnf <= 1e-10 || dny <= 1e-10 || !std::isfinite(dnf) || !std::isfinite(dny)) ? 1e-6 : std::sqrt(dny / dnf) * 0.01;
        h = std::min(h, hmax) * posneg;
        State<N> w;
        for (std::size_t i = 0; i < N; ++i) w[i] = y_[i] + h * k1_[i];
        f_(t_ + h, w, k2_);
        double der2 = 0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sk = scale(i, y_[i], 0.0);
            const double d = (k2_[i] - k1_[i]) / sk;
            der2 += d * d;
        }
        der2 = std::sqrt(der2) / std::fabs(h);
        const double der12 = std::max(std::fabs(der2), std::sqrt(dnf));
        const double h1 = !std::isfinite(der12) ? 1e-6 : der12 <= 1e-15 ? std::max(1e-6, std::fabs(h) * 1e-3) : std::pow(0.01 / der12, 0.125);
        return std::min(100.0 * std::fabs(h), std::min(h1, hmax)) * posneg;
    }

    void step(double h) {
        using namespace dop853;
        State<N> w;
        const double t = t_;
        for (std::size_t i = 0; i < N; ++i) w[i] = y_[i] + h * a21 * k1_[i];
        f_(t + c2 * h, w, k2_);
        for (std::size_t i = 0; i < N; ++i) w[i] = y_[i] + h * (a31 * k1_[i] + a32 * k2_[i]);
        f_(t + c3 * h, w, k3_);
        for (std::size_t i = 0; i < N; ++i) w[i] = y_[i] + h * (a41 * k1_[i] + a43 * k3_[i]);
        f_(t + c4 * h, w, k4_);
        for (std::size_t i = 0; i < N; ++i) w[i] = y_[i] + h * (a51 * k1_[i] + a53 * k3_[i] + a54 * k4_[i]);
        f_(t + c5 * h, w, k5_);
        for (std::size_t i = 0; i < N; ++i) w[i] = y_[i] + h * (a61 * k1_[i] + a64 * k4_[i] + a65 * k5_[i]);
        f_(t + c6 * h, w, k6_);
        for (std::size_t i = 0; i < N; ++i)
            w[i] = y_[i] + h * (a71 * k1_[i] + a74 * k4_[i] + a75 * k5_[i] + a76 * k6_[i]);
        f_(t + c7 * h, w, k7_);
        for (std::size_t i = 0; i < N; ++i)
            w[i] = y_[i] + h * (a81 * k1_[i] + a84 * k4_[i] + a85 * k5_[i] + a86 * k6_[i] + a87 * k7_[i]);
        f_(t + c8 * h, w, k8_);
        for (std::size_t i = 0; i < N; ++i)
            w[i] = y_[i] + h * (a91 * k1_[i] + a94 * k4_[i] + a95 * k5_[i] + a96 * k6_[i] + a97 * k7_[i]
                                + a98 * k8_[i]);
        f_(t + c9 * h, w, k9_);
        for (std::size_t i = 0; i < N; ++i)
            w[i] = y_[i] + h * (a101 * k1_[i] + a104 * k4_[i] + a105 * k5_[i] + a106 * k6_[i] + a107 * k7_[i]
                                + a108 * k8_[i] + a109 * k9_[i]);
        f_(t + c10 * h, w, k10_);
        for (std::size_t i = 0; i < N; ++i)
            w[i] = y_[i] + h * (a111 * k1_[i] + a114 * k4_[i] + a115 * k5_[i] + a116 * k6_[i] + a117 * k7_[i]
                                + a118 * k8_[i] + a119 * k9_[i] + a1110 * k10_[i]);
        f_(t + c11 * h, w, k2_);
        tph_ = t + h;
        for (std::size_t i = 0; i < N; ++i)
            w[i] = y_[i] + h * (a121 * k1_[i] + a124 * k4_[i] + a125 * k5_[i] + a126 * k6_[i] + a127 * k7_[i]
                                + a128 * k8_[i] + a129 * k9_[i] + a1210 * k10_[i] + a1211 * k2_[i]);
        f_(tph_, w, k3_);
        for (std::size_t i = 0; i < N; ++i) {
            k4_[i] = b1 * k1_[i] + b6 * k6_[i] + b7 * k7_[i] + b8 * k8_[i] + b9 * k9_[i] + b10 * k10_[i]
                     + b11 * k2_[i] + b12 * k3_[i];
            k5_[i] = y_[i] + h * k4_[i];
        }
    }

    double error_estimate() const {
        using namespace dop853;
        double err = 0, err2 = 0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sk = 1.0 / scale(i, y_[i], k5_[i]);
            double e2 = (k4_[i] - bhh1 * k1_[i] - bhh2 * k9_[i] - bhh3 * k3_[i]) * sk;
            err2 += e2 * e2;
            double e = (er1 * k1_[i] + er6 * k6_[i] + er7 * k7_[i] + er8 * k8_[i] + er9 * k9_[i]
                        + er10 * k10_[i] + er11 * k2_[i] + er12 * k3_[i]) * sk;
            err += e * e;
        }
        double deno = err + 0.01 * err2;
        if (deno <= 0.0) deno = 1.0;
        return err * std::sqrt(1.0 / (deno * static_cast<double>(N)));
    }

    // Requires k4_ = f(t+h, y_new) as computed after acceptance.
    void dense(double h, typename Trajectory<N>::Step& st) {
        using namespace dop853;
        auto& rc = st.rc;
        for (std::size_t i = 0; i < N; ++i) {
            rc[0][i] = y_[i];
            const double ydiff = k5_[i] - y_[i];
            rc[1][i] = ydiff;
            const double bspl = h * k1_[i] - ydiff;
            rc[2][i] = bspl;
            rc[3][i] = ydiff - h * k4_[i] - bspl;
            rc[4][i] = d41 * k1_[i] + d46 * k6_[i] + d47 * k7_[i] + d48 * k8_[i] + d49 * k9_[i] + d410 * k10_[i]
                       + d411 * k2_[i] + d412 * k3_[i];
            rc[5][i] = d51 * k1_[i] + d56 * k6_[i] + d57 * k7_[i] + d58 * k8_[i] + d59 * k9_[i] + d510 * k10_[i]
                       + d511 * k2_[i] + d512 * k3_[i];
            rc[6][i] = d61 * k1_[i] + d66 * k6_[i] + d67 * k7_[i] + d68 * k8_[i] + d69 * k9_[i] + d610 * k10_[i]
                       + d611 * k2_[i] + d612 * k3_[i];
            rc[7][i] = d71 * k1_[i] + d76 * k6_[i] + d77 * k7_[i] + d78 * k8_[i] + d79 * k9_[i] + d710 * k10_[i]
                       + d711 * k2_[i] + d712 * k3_[i];
        }
        State<N> w, k14, k15, k16;
        const double t = t_;
        for (std::size_t i = 0; i < N; ++i)
            w[i] = y_[i] + h * (a141 * k1_[i] + a147 * k7_[i] + a148 * k8_[i] + a149 * k9_[i] + a1410 * k10_[i]
                                + a1411 * k2_[i] + a1412 * k3_[i] + a1413 * k4_[i]);
        f_(t + c14 * h, w, k14);
        for (std::size_t i = 0; i < N; ++i)
            w[i] = y_[i] + h * (a151 * k1_[i] + a156 * k6_[i] + a157 * k7_[i] + a158 * k8_[i] + a1511 * k2_[i]
                                + a1512 * k3_[i] + a1513 * k4_[i] + a1514 * k14[i]);
        f_(t + c15 * h, w, k15);
        for (std::size_t i = 0; i < N; ++i)
            w[i] = y_[i] + h * (a161 * k1_[i] + a166 * k6_[i] + a167 * k7_[i] + a168 * k8_[i] + a169 * k9_[i]
                                + a1613 * k4_[i] + a1614 * k14[i] + a1615 * k15[i]);
        f_(t + c16 * h, w, k16);
        for (std::size_t i = 0; i < N; ++i) {
            rc[4][i] = h * (rc[4][i] + d413 * k4_[i] + d414 * k14[i] + d415 * k15[i] + d416 * k16[i]);
            rc[5][i] = h * (rc[5][i] + d513 * k4_[i] + d514 * k14[i] + d515 * k15[i] + d516 * k16[i]);
            rc[6][i] = h * (rc[6][i] + d613 * k4_[i] + d614 * k14[i] + d615 * k15[i] + d616 * k16[i]);
            rc[7][i] = h * (rc[7][i] + d713 * k4_[i] + d714 * k14[i] + d715 * k15[i] + d716 * k16[i]);
        }
    }

    Rhs& f_;
    OdeOptions opt_;
    double t_ = 0, tph_ = 0;
    State<N> y_{}, k1_{}, k2_{}, k3_{}, k4_{}, k5_{}, k6_{}, k7_{}, k8_{}, k9_{}, k10_{};
};

}  // namespace detail

/// Integrate y' = rhs(t, y) from t0 to t1 (either direction) with DOP853.
///
/// `rhs` is called as rhs(t, y, dydt). Throws OdeError on step-size
/// underflow (typically a pole of the solution) or a non-finite state.
template <std::size_t N, class Rhs>
Trajectory<N> ode_integrate(Rhs&& rhs, double t0, const State<N>& y0, double t1, const OdeOptions& opt) {
    if (!(opt.rtol >= 1e-15 && opt.rtol <= 1e-3)) throw std::invalid_argument("ode_integrate: rtol out of range");
    if (!(opt.atol >= 0.0) || (opt.atol == 0.0 && opt.rtol == 0.0))
        throw std::invalid_argument("ode_integrate: invalid atol");
    for (double v : y0)
        if (!std::isfinite(v)) throw std::invalid_argument("ode_integrate: non-finite initial state");
    auto& f = rhs;
    detail::Dop853<N, std::remove_reference_t<decltype(f)>> solver(f, opt);
    return solver.run(t0, y0, t1);
}

/// Convenience form with a single tolerance used as both rtol and atol.
template <std::size_t N, class Rhs>
Trajectory<N> ode_integrate(Rhs&& rhs, double t0, const State<N>& y0, double t1, double tol) {
    if (!(tol >= 1e-14 && tol <= 1e-6)) throw std::invalid_argument("ode_integrate: tol must lie in [1e-14, 1e-6]");
    OdeOptions opt;
    opt.rtol = tol;
    opt.atol = tol;
    return ode_integrate<N>(std::forward<Rhs>(rhs), t0, y0, t1, opt);
}

}  // namespace pii
