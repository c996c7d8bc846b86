#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "pii/specfun/bessel.hpp"

namespace pii {

class FiniteNError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

using Wide = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<130>>;

// Determinant by Gaussian elimination with partial pivoting; a is consumed.
template <class T>
T wide_determinant(std::vector<std::vector<T>>& a) {
    using std::abs;
    const std::size_t n = a.size();
    T det = T(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (abs(a[i][k]) > abs(a[p][k])) p = i;
        if (a[p][k] == T(0)) return T(0);
        if (p != k) {
            std::swap(a[p], a[k]);
            det = -det;
        }
        det *= a[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            const T m = a[i][k] / a[k][k];
            if (m == T(0)) continue;
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] -= m * a[k][j];
        }
    }
    return det;
}

}  // namespace detail

/// Poissonized Hammersley law Pr(h <= N) at intensity lambda^2, as the
/// Toeplitz determinant e^{-lambda^2} det[I_{j-k}(2 lambda)]_{j,k=1..N}.
///
/// The determinant loses about 4 lambda / ln 10 digits to cancellation, so
/// it is evaluated with 130 significant digits and rounded once at the end.
/// Domain: 1 <= N <= 200, 0 <= lambda <= 50.
inline double hammersley_cdf(int N, double lambda) {
    if (N < 1 || N > 200) throw std::domain_error("hammersley_cdf: N must lie in [1, 200]");
    if (!(lambda >= 0.0 && lambda <= 50.0)) throw std::domain_error("hammersley_cdf: lambda must lie in [0, 50]");
    if (lambda == 0.0) return 1.0;
    using detail::Wide;
    const Wide l(lambda);
    const std::vector<Wide> I = bessel_i_sequence<Wide>(N, Wide(2) * l);
    std::vector<std::vector<Wide>> a(static_cast<std::size_t>(N), std::vector<Wide>(static_cast<std::size_t>(N)));
    for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k) a[j][k] = I[static_cast<std::size_t>(std::abs(j - k))];
    const Wide det = detail::wide_determinant(a);
    return static_cast<double>(exp(-l * l) * det);
}

enum class ThetaKind { E_tilde, F_tilde };

struct ThetaSumSpec {
    int N = 1;
    double L = 1.0;
    // Largest |n_j| kept; 0 selects it from the Gaussian tail bound.
    int cutoff = 0;
    ThetaKind kind = ThetaKind::F_tilde;
};

namespace detail {

// Relative size of the dropped tail of sum_{n > M} n^{2k} e^{-a n^2}
// against the retained part, for the largest moment order k.
inline double theta_tail_ratio(int M, int k, double a) {
    auto logterm = [&](double n) { return 2.0 * k * std::log(n) - a * n * n; };
    const double n0 = std::sqrt(k / a);  // peak of the summand
    const double lt = logterm(M + 1.0);
    const double r = std::exp(logterm(M + 2.0) - lt);
    if (M + 1.0 <= n0 || r >= 1.0) return 1.0;
    const double peak = logterm(std::max(1.0, std::min(n0, static_cast<double>(M))));
    return std::exp(lt - peak) / (1.0 - r);
}

inline int theta_auto_cutoff(int N, double L) {
    return static_cast<int>(std::ceil(L / M_PI * std::sqrt(2.0 * (35.0 + 4.0 * N * N)))) + N + 2;
}

inline Wide wide_pi() { return boost::math::constants::pi<Wide>(); }

// Normalization so that the L -> inf limit is 1: the lattice sum tends to
// the Selberg-type integral over R^N or (0, inf)^N.
inline Wide theta_constant(int N, ThetaKind kind) {
    const Wide pi = wide_pi();
    const Wide sqrt_pi = sqrt(pi);
    Wide prod = 1;
    for (int j = 0; j < N; ++j) {
        Wide fact = 1;  // Gamma(2 + j) = (j + 1)!
        for (int i = 2; i <= j + 1; ++i) fact *= i;
        Wide half = sqrt_pi;  // Gamma(1/2 + j) or Gamma(3/2 + j)
        const int top = kind == ThetaKind::E_tilde ? j : j + 1;
        for (int i = 0; i < top; ++i) half *= Wide(i) + Wide(0.5);
        prod *= fact * half;
    }
    const double n = N;
    if (kind == ThetaKind::F_tilde)
        return pow(Wide(2), N) * pow(pi, 2 * N * N + N) / (pow(Wide(2), Wide(n * n + n / 2)) * prod);
    return pow(pi, 2 * N * N - N) / (pow(Wide(2), Wide(n * n - n / 2)) * prod);
}

}  // namespace detail

/// Theta-type sums over N-tuples of integers with Vandermonde weight
/// Delta^2(n_1^2, ..., n_N^2), normalized to tend to 1 as L -> inf.
///
/// F_tilde: n_j >= 1 with extra weight prod n_j^2, power L^{-2N^2-N}.
/// E_tilde: n_j over all integers, power L^{-2N^2+N}.
/// The tuple sum is N! det[m_{j+k}] with the lattice moments
/// m_i = sum_n n^{2i} w(n) (Heine), evaluated in 130-digit arithmetic.
inline double theta_sum(const ThetaSumSpec& spec) {
    if (spec.N < 1 || spec.N > 8) throw std::domain_error("theta_sum: N must lie in [1, 8]");
    if (!(spec.L > 0.0) || !std::isfinite(spec.L)) throw std::domain_error("theta_sum: L must be positive");
    if (spec.cutoff < 0) throw std::domain_error("theta_sum: negative cutoff");
    const int N = spec.N;
    const bool F = spec.kind == ThetaKind::F_tilde;
    const double a = M_PI * M_PI / (2.0 * spec.L * spec.L);
    const int kmax = 2 * (N - 1) + (F ? 1 : 0);
    int M = spec.cutoff;
    if (M == 0) {
        M = detail::theta_auto_cutoff(N, spec.L);
        while (detail::theta_tail_ratio(M, kmax, a) > 1e-16) M += 1 + M / 8;
    } else if (detail::theta_tail_ratio(M, kmax, a) > 1e-14) {
        throw FiniteNError("theta_sum: cutoff " + std::to_string(M) + " leaves a tail above 1e-14");
    }

    using detail::Wide;
    const Wide wa = detail::wide_pi() * detail::wide_pi() / (Wide(2) * Wide(spec.L) * Wide(spec.L));
    std::vector<Wide> mom(static_cast<std::size_t>(2 * N - 1), Wide(0));
    for (int n = F ? 1 : 0; n <= M; ++n) {
        const Wide n2 = Wide(n) * Wide(n);
        Wide w = exp(-wa * n2);
        if (F) w *= n2;
        if (!F && n > 0) w *= 2;  // +n and -n
        Wide p = 1;
        for (std::size_t i = 0; i < mom.size(); ++i) {
            mom[i] += p * w;
            p *= n2;
        }
    }
    std::vector<std::vector<Wide>> h(static_cast<std::size_t>(N), std::vector<Wide>(static_cast<std::size_t>(N)));
    for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k) h[j][k] = mom[static_cast<std::size_t>(j + k)];
    Wide total = detail::wide_determinant(h);
    for (int i = 2; i <= N; ++i) total *= i;
    const int power = F ? -(2 * N * N + N) : -(2 * N * N - N);
    return static_cast<double>(detail::theta_constant(N, spec.kind) * pow(Wide(spec.L), power) * total);
}

/// Unreduced tuple sum in double precision, every ordered N-tuple visited.
/// Practical for N <= 3; used to check the determinant route.
inline double theta_sum_direct(const ThetaSumSpec& spec) {
    if (spec.N < 1 || spec.N > 4) throw std::domain_error("theta_sum_direct: N must lie in [1, 4]");
    const int N = spec.N;
    const bool F = spec.kind == ThetaKind::F_tilde;
    const int M = spec.cutoff > 0 ? spec.cutoff : detail::theta_auto_cutoff(N, spec.L);
    const double a = M_PI * M_PI / (2.0 * spec.L * spec.L);
    const int lo = F ? 1 : -M;
    std::vector<int> n(static_cast<std::size_t>(N), lo);
    double sum = 0.0;
    for (;;) {
        double term = 1.0, e = 0.0;
        for (int i = 0; i < N; ++i) {
            const double ni2 = static_cast<double>(n[i]) * n[i];
            e += ni2;
            if (F) term *= ni2;
            for (int j = i + 1; j < N; ++j) {
                const double d = ni2 - static_cast<double>(n[j]) * n[j];
                term *= d * d;
            }
        }
        sum += term * std::exp(-a * e);
        int i = 0;
        while (i < N && n[i] == M) n[i++] = lo;
        if (i == N) break;
        ++n[i];
    }
    const int power = F ? -(2 * N * N + N) : -(2 * N * N - N);
    return static_cast<double>(detail::theta_constant(N, spec.kind)) * std::pow(spec.L, power) * sum;
}

/// Pr(H_N <= L) for the maximum of N nonintersecting Brownian excursions.
inline double excursion_max_cdf(int N, double L) { return theta_sum({N, L, 0, ThetaKind::F_tilde}); }

}  // namespace pii
