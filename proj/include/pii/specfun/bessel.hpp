#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <vector>

namespace pii {

/// I_0(x), ..., I_nmax(x) by Miller's backward recurrence, normalized with
/// e^x = I_0(x) + 2 sum_{k>=1} I_k(x).
///
/// T may be double or a Boost.Multiprecision float; the start index grows
/// with the number of digits carried by T.
template <class T>
std::vector<T> bessel_i_sequence(int nmax, const T& x) {
    using std::exp;
    using std::sqrt;
    if (nmax < 0) throw std::invalid_argument("bessel_i_sequence: nmax must be nonnegative");
    std::vector<T> out(static_cast<std::size_t>(nmax) + 1, T(0));
    if (x == T(0)) {
        out[0] = T(1);
        return out;
    }
    const double xd = static_cast<double>(x);
    const double digits = std::numeric_limits<T>::digits10 + 5.0;
    const double big = std::max(static_cast<double>(nmax), xd);
    // Start far enough past max(n, x) that the spurious K_n component is
    // below the working precision.
    const int start = static_cast<int>(big + 2.0 * digits + 4.0 * std::sqrt(digits * (big + 1.0))) + 10;

    const T two_over_x = T(2) / x;
    T ip1 = T(0);
    T i = T(1e-30);
    T sum = T(0);
    const T rescale_at = T(1e250);
    for (int k = start; k >= 1; --k) {
        const T im1 = T(k) * two_over_x * i + ip1;
        ip1 = i;
        i = im1;
        // i now holds the unnormalized I_{k-1}.
        if (k - 1 <= nmax) out[static_cast<std::size_t>(k - 1)] = i;
        if (k - 1 >= 1) sum += T(2) * i;
        if (i > rescale_at) {
            const T r = T(1) / rescale_at;
            i *= r;
            ip1 *= r;
            sum *= r;
            for (int j = k - 1; j <= nmax; ++j)
                if (j >= 0) out[static_cast<std::size_t>(j)] *= r;
        }
    }
    sum += i;
    const T scale = exp(x) / sum;
    for (auto& v : out) v *= scale;
    return out;
}

/// Modified Bessel function I_n(x) of integer order, |n| <= 200, 0 <= x <= 200.
inline double bessel_i(int n, double x) {
    if (std::abs(n) > 200 || !(x >= 0.0 && x <= 200.0))
        throw std::domain_error("bessel_i: argument outside |n| <= 200, 0 <= x <= 200");
    const int m = std::abs(n);
    return bessel_i_sequence<double>(m, x)[static_cast<std::size_t>(m)];
}

}  // namespace pii
