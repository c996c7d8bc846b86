#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "pii/painleve2.hpp"

namespace pii {

class PoleError : public std::runtime_error {
public:
    PoleError(const std::string& what, double where) : std::runtime_error(what), where_(where) {}
    double where() const { return where_; }

private:
    double where_;
};

inline const double cbrt2 = std::cbrt(2.0);

/// Zeros of q0 on the solved domain, ascending, located by bisection on
/// the dense output between sign changes of the stored states.
inline std::vector<double> q0_zeros(const TranscendentSolution& sol) {
    std::vector<double> z;
    const auto& tr = sol.trajectory();
    for (std::size_t i = 1; i < tr.size(); ++i) {
        const double a = tr.grid()[i - 1], b = tr.grid()[i];
        const double qa = tr.state(i - 1)[0], qb = tr.state(i)[0];
        if (qa == 0.0) { z.push_back(a); continue; }
        if ((qa > 0) == (qb > 0)) continue;
        double lo = a, hi = b, flo = qa;
        for (int it = 0; it < 80 && std::fabs(hi - lo) > 1e-15 * (1.0 + std::fabs(lo)); ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = sol.q(mid);
            if ((fm > 0) == (flo > 0)) { lo = mid; flo = fm; } else { hi = mid; }
        }
        z.push_back(0.5 * (lo + hi));
    }
    std::sort(z.begin(), z.end());
    return z;
}

/// Right end of the zero-free interval of q0 reaching t_max, or t_min when
/// q0 has no zero.
inline double zero_free_left_end(const TranscendentSolution& sol, double margin = 1e-2) {
    const auto z = q0_zeros(sol);
    return z.empty() ? sol.t_min() : z.back() + margin;
}

/// q_{1/2}(t) = -2^{-1/3} d/ds log q0(s), s = -2^{-1/3} t, as a jet in t.
/// Its negative is the alpha = -1/2 transcendent.
class HalfTranscendent {
public:
    HalfTranscendent(TranscendentSolution base, double s_lo, double s_hi)
        : base_(std::move(base)), s_lo_(s_lo), s_hi_(s_hi) {}

    double xi() const { return base_.xi(); }
    const TranscendentSolution& base() const { return base_; }
    double t_min() const { return -cbrt2 * s_hi_; }
    double t_max() const { return -cbrt2 * s_lo_; }
    bool contains(double t) const { return t >= t_min() && t <= t_max(); }

    Jet jet(double t) const {
        if (!contains(t)) throw std::domain_error("HalfTranscendent: t outside the mapped domain");
        const double s = -t / cbrt2;
        const Jet l = base_.qp_jet(s) / base_.q_jet(s);
        return rescale(-(1.0 / cbrt2) * l, -1.0 / cbrt2);
    }
    double q(double t) const { return jet(t).v; }
    double q_prime(double t) const { return jet(t).d1; }

    /// q'' - t q - 2 q^3 + 1/2.
    double pii_residual(double t) const {
        const Jet j = jet(t);
        return j.d2 - t * j.v - 2.0 * j.v * j.v * j.v + 0.5;
    }

private:
    TranscendentSolution base_;
    double s_lo_, s_hi_;
};

/// q_{1/2} on the image of s in [s_lo, s_hi]; throws PoleError if q0
/// vanishes there.
inline HalfTranscendent q_half_from_q0(const TranscendentSolution& sol, double s_lo, double s_hi) {
    if (sol.alpha() != 0.0) throw std::invalid_argument("q_half_from_q0: needs an alpha = 0 solution");
    if (sol.xi() == 0.0) throw std::domain_error("q_half_from_q0: q0 vanishes identically for xi = 0");
    if (!(s_lo < s_hi) || !sol.contains(s_lo) || !sol.contains(s_hi))
        throw std::domain_error("q_half_from_q0: interval outside the solved domain");
    for (double z : q0_zeros(sol))
        if (z >= s_lo && z <= s_hi) throw PoleError("q_half_from_q0: zero of q0 inside the interval", -cbrt2 * z);
    return HalfTranscendent(sol, s_lo, s_hi);
}

inline HalfTranscendent q_half_from_q0(const TranscendentSolution& sol) {
    return q_half_from_q0(sol, zero_free_left_end(sol), sol.t_max());
}

/// p_alpha = q' + q^2 + t/2 sampled for the alpha = 1/2 transcendent.
struct PAux {
    std::vector<double> t;
    std::vector<double> p_alpha;
};

inline PAux p_aux(const HalfTranscendent& h, const std::vector<double>& grid) {
    PAux out;
    for (double t : grid) {
        const Jet j = h.jet(t);
        out.t.push_back(t);
        out.p_alpha.push_back(j.d1 + j.v * j.v + 0.5 * t);
    }
    return out;
}

namespace detail {

inline std::vector<double> sample(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

// Samples of [lo, hi] farther than `gap` from every pole.
inline std::vector<double> sample_avoiding(double lo, double hi, std::size_t n, const std::vector<double>& poles,
                                           double gap) {
    std::vector<double> out;
    for (double t : sample(lo, hi, n)) {
        bool near = false;
        for (double p : poles) near = near || std::fabs(t - p) < gap;
        if (!near) out.push_back(t);
    }
    return out;
}

}  // namespace detail

/// Gambier residual
///   eps 2^{1/3} q0(-2^{-1/3} t)^2 - q_{eps/2}'(t) - eps q_{eps/2}(t)^2 - eps t / 2
/// maximized over [t_lo, t_hi]. Poles of q_{eps/2} (zeros of q0) are
/// excluded with a window of half-width `gap`.
inline double gambier_residual(const TranscendentSolution& sol, int eps, double t_lo, double t_hi,
                               std::size_t samples = 241, double gap = 0.05) {
    if (eps != 1 && eps != -1) throw std::invalid_argument("gambier_residual: eps must be +1 or -1");
    if (sol.xi() == 0.0) return 0.0;
    const double s_hi = -t_lo / cbrt2, s_lo = -t_hi / cbrt2;
    if (!sol.contains(s_lo) || !sol.contains(s_hi)) throw std::domain_error("gambier_residual: domain mismatch");
    std::vector<double> poles;
    for (double z : q0_zeros(sol)) poles.push_back(-cbrt2 * z);
    HalfTranscendent h(sol, s_lo, s_hi);
    double m = 0.0;
    for (double t : detail::sample_avoiding(t_lo, t_hi, samples, poles, gap)) {
        const Jet j = static_cast<double>(eps) * h.jet(t);
        const double q0 = sol.q(-t / cbrt2);
        const double r = eps * cbrt2 * q0 * q0 - j.d1 - eps * j.v * j.v - 0.5 * eps * t;
        m = std::max(m, std::fabs(r));
    }
    return m;
}

/// Residual of u0'(t) + 2^{-1/3}(q' + q^2 + t/2) with the bracket built from
/// q_{1/2} and evaluated at -2^{1/3} t.
inline double ta1_residual(const TranscendentSolution& sol, double t_lo, double t_hi, std::size_t samples = 241,
                           double gap = 0.05) {
    if (sol.xi() == 0.0) return 0.0;
    const double lo = std::min(-cbrt2 * t_lo, -cbrt2 * t_hi), hi = std::max(-cbrt2 * t_lo, -cbrt2 * t_hi);
    HalfTranscendent h(sol, -hi / cbrt2, -lo / cbrt2);
    const auto z = q0_zeros(sol);
    double m = 0.0;
    for (double t : detail::sample_avoiding(t_lo, t_hi, samples, z, gap)) {
        const Jet j = h.jet(-cbrt2 * t);
        const double u0p = -sol.q(t) * sol.q(t);
        m = std::max(m, std::fabs(u0p + (j.d1 + j.v * j.v - 0.5 * cbrt2 * t) / cbrt2));
    }
    return m;
}

/// u1 = u0 + d/dx log q0, on the zero-free interval of q0 reaching x_max.
inline SigmaSolution u_one(const SigmaSolution& sigma0, const TranscendentSolution& sol) {
    if (sol.xi() == 0.0) throw std::domain_error("u_one: log q0 undefined for xi = 0");
    SigmaSolution s;
    s.a = 1.0;
    s.xi = sol.xi();
    s.x_min = std::max(sigma0.x_min, zero_free_left_end(sol));
    s.x_max = std::min(sigma0.x_max, sol.t_max());
    s.provenance = "direct: u0 + (log q0)'";
    s.eval = [sigma0, sol](double x) { return sigma0.jet(x) + sol.qp_jet(x) / sol.q_jet(x); };
    return s;
}

/// u2 = d/dx log u0 + u0.
inline SigmaSolution u_two(const SigmaSolution& sigma0) {
    if (sigma0.xi == 0.0) throw std::domain_error("u_two: u0 vanishes identically for xi = 0");
    if (sigma0.a != 0.0) throw std::invalid_argument("u_two: needs the a = 0 member");
    if (!sigma0.eval_third) throw std::invalid_argument("u_two: third derivative of u0 unavailable");
    SigmaSolution s;
    s.a = 2.0;
    s.xi = sigma0.xi;
    s.x_min = sigma0.x_min;
    s.x_max = sigma0.x_max;
    s.provenance = "direct: (log u0)' + u0";
    s.eval = [sigma0](double x) {
        const Jet u = sigma0.jet(x);
        const Jet up{u.d1, u.d2, sigma0.eval_third(x)};
        return up / u + u;
    };
    return s;
}

struct HalfPair {
    SigmaSolution plus;
    SigmaSolution minus;
};

/// u_{+1/2} and u_{-1/2} from the Hamiltonian of q0 on t = -2^{1/3} x:
///   u_{1/2} = -2^{1/3}(H + q0/2),  H = q0'^2/2 - (q0^2 + t/2)^2/2,
///   u_{-1/2} = u_{1/2} + 2^{1/3} q0.
inline HalfPair u_half_pair(const TranscendentSolution& sol) {
    HalfPair out;
    const double k = -cbrt2;
    auto pieces = [sol, k](double x, Jet& h, Jet& q) {
        const double t = k * x;
        q = sol.q_jet(t);
        const Jet p = sol.qp_jet(t);
        const Jet w = q * q + 0.5 * Jet::variable(t);
        h = 0.5 * p * p - 0.5 * w * w;
    };
    for (SigmaSolution* s : {&out.plus, &out.minus}) {
        s->xi = sol.xi();
        s->x_min = sol.t_max() / k;
        s->x_max = sol.t_min() / k;
    }
    out.plus.a = 0.5;
    out.plus.provenance = "direct: Hamiltonian of q0, mu = +1/2";
    out.plus.eval = [pieces, k](double x) {
        Jet h, q;
        pieces(x, h, q);
        return rescale(-cbrt2 * (h + 0.5 * q), k);
    };
    out.minus.a = -0.5;
    out.minus.provenance = "direct: Hamiltonian of q0, mu = -1/2";
    out.minus.eval = [pieces, k](double x) {
        Jet h, q;
        pieces(x, h, q);
        return rescale(-cbrt2 * (h - 0.5 * q), k);
    };
    return out;
}

/// One step of the alternate discrete Painleve I recurrence:
///   u_{mu+2} = u_mu + (mu+1) / (x - (u_{mu+1} - u_mu)^2 - mu / (u_{mu+1} - u_{mu-1})).
/// At mu = 0 the last term is the limit u_0', and u_prev is not used.
inline SigmaSolution adpi_extend(const SigmaSolution& u_prev, const SigmaSolution& u_cur, const SigmaSolution& u_next,
                                 double mu) {
    SigmaSolution s;
    s.a = mu + 2.0;
    s.xi = u_cur.xi;
    s.x_min = std::max(u_cur.x_min, u_next.x_min);
    s.x_max = std::min(u_cur.x_max, u_next.x_max);
    if (mu == 0.0 && !u_cur.eval_third)
        throw std::invalid_argument("adpi_extend: mu = 0 needs the third derivative of u_0");
    if (mu != 0.0) {
        s.x_min = std::max(s.x_min, u_prev.x_min);
        s.x_max = std::min(s.x_max, u_prev.x_max);
    }
    s.provenance = "recurrence: discrete PI step from mu = " + std::to_string(mu);
    s.eval = [u_prev, u_cur, u_next, mu](double x) {
        const Jet uc = u_cur.jet(x), un = u_next.jet(x);
        Jet last;
        if (mu == 0.0) {
            last = {uc.d1, uc.d2, u_cur.eval_third(x)};
        } else {
            last = mu * reciprocal(un - u_prev.jet(x));
        }
        const Jet d = un - uc;
        const Jet den = Jet::variable(x) - d * d - last;
        if (std::fabs(den.v) < 1e-12) throw PoleError("adpi_extend: vanishing denominator", x);
        return uc + (mu + 1.0) * reciprocal(den);
    };
    return s;
}

/// Residual of the mu = 0 instance  u0' + 1/(u2 - u0) - x + (u1 - u0)^2.
inline double adpi_mu0_residual(const SigmaSolution& u0, const SigmaSolution& u1, const SigmaSolution& u2, double lo,
                                double hi, std::size_t samples = 241) {
    double m = 0.0;
    for (double x : detail::sample(lo, hi, samples)) {
        const Jet a = u0.jet(x), b = u1.jet(x), c = u2.jet(x);
        const double r = a.d1 + 1.0 / (c.v - a.v) - x + (b.v - a.v) * (b.v - a.v);
        m = std::max(m, std::fabs(r));
    }
    return m;
}

/// Large-x form  -mu x^{1/2} - mu^2/(4x) + mu(4mu^2 + 1)/(32 x^{5/2}).
inline double asym_u_mu_xistar(double x, double mu) {
    if (x < 4.0) throw std::domain_error("asym_u_mu_xistar: x below validity threshold");
    return -mu * std::sqrt(x) - mu * mu / (4.0 * x) + mu * (4.0 * mu * mu + 1.0) / (32.0 * x * x * std::sqrt(x));
}

/// u_{3/2} = u_{1/2} - 2^{1/3} q_1(t) with q_1 = -q0 + 1/(2q0^2 - 2q0' + t) at
/// t = -2^{1/3} x, and u_{5/2} from one recurrence step at mu = 1/2.
/// Experimental.
inline SigmaSolution u_three_halves(const TranscendentSolution& sol, const HalfPair& half) {
    SigmaSolution s;
    s.a = 1.5;
    s.xi = sol.xi();
    s.x_min = half.plus.x_min;
    s.x_max = half.plus.x_max;
    s.provenance = "experimental: Backlund step alpha 0 -> 1";
    const double k = -cbrt2;
    s.eval = [sol, half, k](double x) {
        const double t = k * x;
        const Jet q = sol.q_jet(t), p = sol.qp_jet(t);
        const Jet den = 2.0 * q * q - 2.0 * p + Jet::variable(t);
        if (std::fabs(den.v) < 1e-12) throw PoleError("u_three_halves: Backlund denominator vanishes", x);
        const Jet q1 = -q + reciprocal(den);
        return half.plus.jet(x) - cbrt2 * rescale(q1, k);
    };
    return s;
}

/// The mu-ladder sharing one q0.
struct SigmaLadder {
    double xi = 1.0;
    std::map<double, SigmaSolution> members;

    const SigmaSolution& at(double mu) const {
        auto it = members.find(mu);
        if (it == members.end()) throw std::out_of_range("SigmaLadder: no member for this mu");
        return it->second;
    }
    const std::string& provenance(double mu) const { return at(mu).provenance; }
};

/// Ladder members -1/2, 0, 1/2, 1, 2, 3 (and experimental 3/2, 5/2).
inline SigmaLadder build_ladder(const TranscendentSolution& sol, bool experimental = false) {
    SigmaLadder l;
    l.xi = sol.xi();
    const SigmaSolution u0 = sigma0_from_q0(sol);
    const HalfPair half = u_half_pair(sol);
    l.members.emplace(0.0, u0);
    l.members.emplace(0.5, half.plus);
    l.members.emplace(-0.5, half.minus);
    if (sol.xi() == 0.0) return l;
    const SigmaSolution u1 = u_one(u0, sol);
    const SigmaSolution u2 = u_two(u0);
    l.members.emplace(1.0, u1);
    l.members.emplace(2.0, u2);
    l.members.emplace(3.0, adpi_extend(u0, u1, u2, 1.0));
    if (experimental) {
        const SigmaSolution u32 = u_three_halves(sol, half);
        l.members.emplace(1.5, u32);
        l.members.emplace(2.5, adpi_extend(half.minus, half.plus, u32, 0.5));
    }
    return l;
}

}  // namespace pii
