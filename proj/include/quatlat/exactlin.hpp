#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "quatlat/error.hpp"

namespace quatlat {

using VecQ = std::vector<mpq_class>;
using MatQ = std::vector<VecQ>;
using MatZ = std::vector<std::vector<mpz_class>>;

/* Exact determinant of a square rational matrix: clear denominators
 * column-wise, run fraction-free Bareiss elimination over Z, divide back. */
inline mpq_class exact_det(const MatQ& m) {
    const size_t n = m.size();
    if (n == 0) return 1;
    for (const auto& row : m)
        if (row.size() != n) throw precondition_error("exact_det: matrix not square");

    MatZ a(n, std::vector<mpz_class>(n));
    mpz_class denom_prod = 1;
    for (size_t j = 0; j < n; ++j) {
        mpz_class colden = 1;
        for (size_t i = 0; i < n; ++i)
            mpz_lcm(colden.get_mpz_t(), colden.get_mpz_t(), m[i][j].get_den().get_mpz_t());
        for (size_t i = 0; i < n; ++i) {
            mpq_class scaled = m[i][j] * colden;
            a[i][j] = scaled.get_num();
        }
        denom_prod *= colden;
    }

    mpz_class det_sign = 1;
    mpz_class prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            size_t piv = k + 1;
            while (piv < n && a[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(a[k], a[piv]);
            det_sign = -det_sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                a[i][j] = a[k][k] * a[i][j] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    mpq_class det(det_sign * a[n - 1][n - 1], denom_prod);
    det.canonicalize();
    return det;
}

/* Solve A x = b exactly over Q for square nonsingular A (Gaussian elimination
 * with rational pivots). Returns nullopt when A is singular. */
inline std::optional<VecQ> solve_square(MatQ a, VecQ b) {
    const size_t n = a.size();
    if (b.size() != n) throw precondition_error("solve_square: size mismatch");
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        while (piv < n && a[piv][k] == 0) ++piv;
        if (piv == n) return std::nullopt;
        if (piv != k) {
            std::swap(a[piv], a[k]);
            std::swap(b[piv], b[k]);
        }
        mpq_class inv = 1 / a[k][k];
        for (size_t j = k; j < n; ++j) a[k][j] *= inv;
        b[k] *= inv;
        for (size_t i = 0; i < n; ++i) {
            if (i == k || a[i][k] == 0) continue;
            mpq_class f = a[i][k];
            for (size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
            b[i] -= f * b[k];
        }
    }
    return b;
}

inline MatQ mat_mul(const MatQ& a, const MatQ& b) {
    const size_t n = a.size(), m = b[0].size(), p = b.size();
    MatQ c(n, VecQ(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < p; ++k) {
            if (a[i][k] == 0) continue;
            for (size_t j = 0; j < m; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

inline bool is_integer_vec(const VecQ& v) {
    for (const auto& q : v)
        if (q.get_den() != 1) return false;
    return true;
}

} // namespace quatlat
