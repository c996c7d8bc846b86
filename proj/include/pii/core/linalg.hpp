#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pii {

/// Dense square matrix, row-major, over any field-like scalar type
/// (double or a Boost.Multiprecision float).
template <class T = double>
class SquareMatrix {
public:
    explicit SquareMatrix(std::size_t n) : n_(n), a_(n * n, T(0)) {
        if (n == 0) throw std::invalid_argument("SquareMatrix: order must be at least 1");
    }

    static SquareMatrix identity(std::size_t n) {
        SquareMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t order() const { return n_; }
    T& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    SquareMatrix operator*(const SquareMatrix& b) const {
        if (b.n_ != n_) throw std::invalid_argument("SquareMatrix: order mismatch");
        SquareMatrix c(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t k = 0; k < n_; ++k) {
                const T aik = (*this)(i, k);
                for (std::size_t j = 0; j < n_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

private:
    std::size_t n_;
    std::vector<T> a_;
};

/// LU factorization with partial pivoting, P A = L U stored in place.
template <class T>
struct LuDecomposition {
    SquareMatrix<T> lu;
    std::vector<std::size_t> perm;
    int sign = 1;
    bool singular = false;

    explicit LuDecomposition(SquareMatrix<T> m) : lu(std::move(m)), perm(lu.order()) {
        using std::abs;
        const std::size_t n = lu.order();
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t p = k;
            T best = abs(lu(k, k));
            for (std::size_t i = k + 1; i < n; ++i) {
                T v = abs(lu(i, k));
                if (v > best) { best = v; p = i; }
            }
            if (best == T(0)) { singular = true; continue; }
            if (p != k) {
                for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
                std::swap(perm[k], perm[p]);
                sign = -sign;
            }
            const T piv = lu(k, k);
            for (std::size_t i = k + 1; i < n; ++i) {
                const T l = lu(i, k) / piv;
                lu(i, k) = l;
                if (l == T(0)) continue;
                for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= l * lu(k, j);
            }
        }
    }

    T determinant() const {
        if (singular) return T(0);
        T d = T(sign);
        for (std::size_t i = 0; i < lu.order(); ++i) d *= lu(i, i);
        return d;
    }

    // log|det| and the sign, for determinants outside the floating range.
    std::pair<T, int> log_abs_determinant() const {
        using std::abs;
        using std::log;
        if (singular) return {-std::numeric_limits<double>::infinity(), 0};
        T s = T(0);
        int sg = sign;
        for (std::size_t i = 0; i < lu.order(); ++i) {
            const T d = lu(i, i);
            if (d < T(0)) sg = -sg;
            s += log(abs(d));
        }
        return {s, sg};
    }

    std::vector<T> solve(std::vector<T> b) const {
        const std::size_t n = lu.order();
        if (b.size() != n) throw std::invalid_argument("LuDecomposition::solve: size mismatch");
        if (singular) throw std::runtime_error("LuDecomposition::solve: singular matrix");
        std::vector<T> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = b[perm[i]];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) x[i] -= lu(i, j) * x[j];
        for (std::size_t i = n; i-- > 0;) {
            for (std::size_t j = i + 1; j < n; ++j) x[i] -= lu(i, j) * x[j];
            x[i] /= lu(i, i);
        }
        return x;
    }
};

template <class T>
T determinant(const SquareMatrix<T>& m) {
    for (std::size_t i = 0; i < m.order(); ++i)
        for (std::size_t j = 0; j < m.order(); ++j) {
            using std::isfinite;
            if (!isfinite(m(i, j))) throw std::invalid_argument("determinant: non-finite entry");
        }
    return LuDecomposition<T>(m).determinant();
}

template <class T>
std::vector<T> solve_linear(const SquareMatrix<T>& m, std::vector<T> b) {
    return LuDecomposition<T>(m).solve(std::move(b));
}

}  // namespace pii
