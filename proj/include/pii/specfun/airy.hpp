#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace pii {

struct AiryPair {
    double ai = 0.0;
    double ai_prime = 0.0;
};

inline constexpr double airy_x_min = -30.0;
inline constexpr double airy_x_max = 200.0;

namespace detail::airy {

using ld = long double;

// Ai(0) = 3^{-2/3}/Gamma(2/3), Ai'(0) = -3^{-1/3}/Gamma(1/3).
inline constexpr ld ai0 = 0.355028053887817239260063186004183176L;
inline constexpr ld aip0 = -0.258819403792806798405183560189203963L;

struct Pair {
    ld y;
    ld dy;
};

// Ai and Ai' at x0 + d from Taylor coefficients generated by Ai'' = x Ai.
inline Pair taylor(ld x0, ld y0, ld y1, ld d) {
    // Rolling coefficients a_{k-2}, a_{k-1}, a_k with a_{k+1} = (x0 a_{k-1} + a_{k-2}) / ((k+1) k).
    ld am2 = y0, am1 = y1, ak = x0 * y0 / 2;
    ld sum = y0 + y1 * d, dsum = y1;
    ld dpow = d;
    for (int k = 2; k < 80; ++k) {
        const ld term = ak * dpow * d;
        const ld dterm = static_cast<ld>(k) * ak * dpow;
        sum += term;
        dsum += dterm;
        dpow *= d;
        const ld next = (x0 * am1 + am2) / (static_cast<ld>(k + 1) * static_cast<ld>(k));
        am2 = am1;
        am1 = ak;
        ak = next;
        if (k > 8 && std::fabs(term) <= 1e-22L * std::fabs(sum) && std::fabs(dterm) <= 1e-22L * std::fabs(dsum))
            break;
    }
    return {sum, dsum};
}

// Large positive x: DLMF 9.7.5 and 9.7.6 in long double.
inline Pair asymptotic_positive(ld x) {
    const ld zeta = 2.0L / 3.0L * x * std::sqrt(x);
    ld u = 1, su = 1, sv = 1;
    ld zk = 1;
    ld prev = 1e300L;
    for (int k = 1; k < 60; ++k) {
        u *= static_cast<ld>((6 * k - 5) * (6 * k - 3) * (6 * k - 1)) / (static_cast<ld>(2 * k - 1) * 216.0L * k);
        const ld v = -static_cast<ld>(6 * k + 1) / static_cast<ld>(6 * k - 1) * u;
        zk *= -zeta;
        const ld tu = u / zk, tv = v / zk;
        if (std::fabs(tu) > prev) break;
        prev = std::fabs(tu);
        su += tu;
        sv += tv;
        if (std::fabs(tu) < 1e-21L) break;
    }
    const ld e = std::exp(-zeta);
    const ld sqpi = 1.772453850905516027298167483341145182798L;
    const ld x14 = std::sqrt(std::sqrt(x));
    return {e / (2 * sqpi * x14) * su, -x14 * e / (2 * sqpi) * sv};
}

inline constexpr ld table_h = 0.125L;
inline constexpr ld table_lo = -30.0L;
inline constexpr ld table_hi = 10.0L;
inline constexpr int table_n = 321;  // (hi - lo)/h + 1

struct Table {
    std::array<ld, table_n> y{};
    std::array<ld, table_n> dy{};

    Table() {
        const int i0 = static_cast<int>((0.0L - table_lo) / table_h + 0.5L);
        y[i0] = ai0;
        dy[i0] = aip0;
        for (int i = i0; i > 0; --i) {
            const ld x0 = table_lo + table_h * i;
            Pair p = taylor(x0, y[i], dy[i], -table_h);
            y[i - 1] = p.y;
            dy[i - 1] = p.dy;
        }
        Pair top = asymptotic_positive(table_hi);
        y[table_n - 1] = top.y;
        dy[table_n - 1] = top.dy;
        for (int i = table_n - 1; i > i0 + 1; --i) {
            const ld x0 = table_lo + table_h * i;
            Pair p = taylor(x0, y[i], dy[i], -table_h);
            y[i - 1] = p.y;
            dy[i - 1] = p.dy;
        }
    }
};

inline const Table& table() {
    static const Table t;
    return t;
}

}  // namespace detail::airy

/// Ai(x) and Ai'(x) for x in [-30, 200].
///
/// On [-30, 10] the value is a short Taylor expansion about the nearest
/// node of a precomputed table; the table is built in extended precision by
/// stepping the Airy equation away from x = 0 on the left and down from
/// x = 10 on the right, the directions in which Ai does not lose relative
/// accuracy. Beyond x = 10 the asymptotic series is used.
inline AiryPair airy(double x) {
    namespace A = detail::airy;
    if (!(x >= airy_x_min && x <= airy_x_max)) throw std::domain_error("airy: argument outside [-30, 200]");
    if (x > 10.0) {
        A::Pair p = A::asymptotic_positive(x);
        return {static_cast<double>(p.y), static_cast<double>(p.dy)};
    }
    const auto& t = A::table();
    const A::ld xl = x;
    int i = static_cast<int>(std::floor((xl - A::table_lo) / A::table_h + 0.5L));
    if (i < 0) i = 0;
    if (i >= A::table_n) i = A::table_n - 1;
    const A::ld x0 = A::table_lo + A::table_h * i;
    if (x0 == xl) return {static_cast<double>(t.y[i]), static_cast<double>(t.dy[i])};
    A::Pair p = A::taylor(x0, t.y[i], t.dy[i], xl - x0);
    return {static_cast<double>(p.y), static_cast<double>(p.dy)};
}

inline double airy_ai(double x) { return airy(x).ai; }

/// Maclaurin series of Ai and Ai' in arbitrary floating type T.
///
/// Suffers cancellation of order exp((4/3)|x|^{3/2}) for x > 0, so it is an
/// independent check only when T carries enough digits.
template <class T>
std::array<T, 2> airy_maclaurin(const T& x, const T& ai0, const T& aip0, int max_terms = 2000) {
    using std::abs;
    if (x == T(0)) return {ai0, aip0};
    // Ai = ai0 f(x) + aip0 g(x), with f = 1 + x^3/6 + ..., g = x + x^4/12 + ...
    T f = 1, g = x, df = 0, dg = 1;
    T tf = 1, tg = x;
    const T x3 = x * x * x;
    for (int k = 1; k < max_terms; ++k) {
        tf = tf * x3 / T((3 * k - 1) * (3 * k));
        tg = tg * x3 / T((3 * k) * (3 * k + 1));
        f += tf;
        g += tg;
        df += T(3 * k) * tf / x;
        dg += T(3 * k + 1) * tg / x;
        if (abs(tf) + abs(tg) < std::numeric_limits<T>::epsilon() * T(1e-3) * (abs(f) + abs(g)) && k > 4) break;
    }
    return {ai0 * f + aip0 * g, ai0 * df + aip0 * dg};
}

}  // namespace pii
