#pragma once

#include <cmath>

namespace pii {

/// Second-order forward-mode jet: value with first and second derivative
/// in one independent variable. Used to push exact derivatives of stored
/// solutions through the algebraic ladder formulas.
struct Jet {
    double v = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;

    constexpr Jet() = default;
    constexpr Jet(double value) : v(value) {}
    constexpr Jet(double value, double first, double second) : v(value), d1(first), d2(second) {}

    static constexpr Jet variable(double x) { return {x, 1.0, 0.0}; }
};

constexpr Jet operator+(Jet a, Jet b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2}; }
constexpr Jet operator-(Jet a, Jet b) { return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2}; }
constexpr Jet operator-(Jet a) { return {-a.v, -a.d1, -a.d2}; }
constexpr Jet operator*(Jet a, Jet b) {
    return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}
constexpr Jet operator*(double s, Jet a) { return {s * a.v, s * a.d1, s * a.d2}; }
constexpr Jet operator*(Jet a, double s) { return s * a; }

constexpr Jet reciprocal(Jet a) {
    const double r = 1.0 / a.v;
    return {r, -a.d1 * r * r, (2.0 * a.d1 * a.d1 * r - a.d2) * r * r};
}

constexpr Jet operator/(Jet a, Jet b) { return a * reciprocal(b); }
constexpr Jet operator/(Jet a, double s) { return {a.v / s, a.d1 / s, a.d2 / s}; }

constexpr Jet square(Jet a) { return a * a; }

inline Jet log(Jet a) { return {std::log(a.v), a.d1 / a.v, (a.d2 * a.v - a.d1 * a.d1) / (a.v * a.v)}; }

/// Reparametrize a jet in t to a jet in x for t = k x.
constexpr Jet rescale(Jet a, double k) { return {a.v, k * a.d1, k * k * a.d2}; }

}  // namespace pii
