#ifndef CHAR3_MATRIX_HPP
#define CHAR3_MATRIX_HPP

#include <cstring>
#include <optional>
#include <utility>

#include "char3/fp.hpp"

namespace char3 {

/// Dense row-major matrix over GF(p). All entries reduced in [0, p).
struct Matrix {
    u32 p = 3;
    size_t rows = 0, cols = 0;
    std::vector<u8> a;

    Matrix() = default;
    Matrix(u32 p_, size_t r, size_t c) : p(p_), rows(r), cols(c), a(r * c, 0) {}

    static Matrix identity(u32 p, size_t n) {
        Matrix m(p, n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    u8& at(size_t r, size_t c) { return a[r * cols + c]; }
    u8 at(size_t r, size_t c) const { return a[r * cols + c]; }
    u8* row(size_t r) { return a.data() + r * cols; }
    const u8* row(size_t r) const { return a.data() + r * cols; }

    bool operator==(const Matrix& o) const { return p == o.p && rows == o.rows && cols == o.cols && a == o.a; }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    bool is_zero() const {
        for (u8 x : a)
            if (x) return false;
        return true;
    }

    Vec apply(const Vec& v) const {
        PrimeField F(p);
        Vec r(rows, 0);
        for (size_t i = 0; i < rows; ++i) {
            u64 acc = 0;
            const u8* ri = row(i);
            for (size_t j = 0; j < cols; ++j) acc += static_cast<u64>(ri[j]) * v[j];
            r[i] = static_cast<u8>(acc % p);
        }
        return r;
    }

    Vec row_vec(size_t r) const { return Vec(row(r), row(r) + cols); }
    Vec col_vec(size_t c) const {
        Vec v(rows);
        for (size_t i = 0; i < rows; ++i) v[i] = at(i, c);
        return v;
    }

    Matrix transpose() const {
        Matrix t(p, cols, rows);
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
        return t;
    }
};

/// dst += c * src over GF(p), on raw rows of equal length.
inline void row_axpy(u32 p, u8* dst, const u8* src, u32 c, size_t n) {
    if (c == 0) return;
    if (p == 3) {
        if (c == 1) {
            for (size_t i = 0; i < n; ++i) {
                u8 t = static_cast<u8>(dst[i] + src[i]);
                dst[i] = t >= 3 ? static_cast<u8>(t - 3) : t;
            }
        } else {  // c == 2
            for (size_t i = 0; i < n; ++i) {
                u8 t = static_cast<u8>(dst[i] + 2 * src[i]);
                t = t >= 3 ? static_cast<u8>(t - 3) : t;
                dst[i] = t >= 3 ? static_cast<u8>(t - 3) : t;
            }
        }
        return;
    }
    for (size_t i = 0; i < n; ++i) dst[i] = static_cast<u8>((dst[i] + c * src[i]) % p);
}

inline void row_scale(u32 p, u8* r, u32 c, size_t n) {
    for (size_t i = 0; i < n; ++i) r[i] = static_cast<u8>((r[i] * c) % p);
}

inline Matrix mat_mul(const Matrix& A, const Matrix& B) {
    if (A.cols != B.rows || A.p != B.p) throw std::invalid_argument("mat_mul: shape/modulus mismatch");
    Matrix C(A.p, A.rows, B.cols);
    std::vector<u32> acc(B.cols);
    for (size_t i = 0; i < A.rows; ++i) {
        std::fill(acc.begin(), acc.end(), 0u);
        const u8* ai = A.row(i);
        for (size_t k = 0; k < A.cols; ++k) {
            u32 v = ai[k];
            if (!v) continue;
            const u8* bk = B.row(k);
            for (size_t j = 0; j < B.cols; ++j) acc[j] += v * bk[j];
        }
        u8* ci = C.row(i);
        for (size_t j = 0; j < B.cols; ++j) ci[j] = static_cast<u8>(acc[j] % A.p);
    }
    return C;
}

inline Matrix mat_add(const Matrix& A, const Matrix& B) {
    PrimeField F(A.p);
    Matrix C = A;
    for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = static_cast<u8>(F.add(C.a[i], B.a[i]));
    return C;
}

inline Matrix mat_sub(const Matrix& A, const Matrix& B) {
    PrimeField F(A.p);
    Matrix C = A;
    for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = static_cast<u8>(F.sub(C.a[i], B.a[i]));
    return C;
}

inline Matrix mat_scale(const Matrix& A, u32 c) {
    Matrix C = A;
    row_scale(A.p, C.a.data(), c % A.p, C.a.size());
    return C;
}

inline Matrix mat_neg(const Matrix& A) { return mat_scale(A, A.p - 1); }

inline Matrix commutator(const Matrix& A, const Matrix& B) { return mat_sub(mat_mul(A, B), mat_mul(B, A)); }

inline Matrix anticommutator(const Matrix& A, const Matrix& B) { return mat_add(mat_mul(A, B), mat_mul(B, A)); }

inline Matrix mat_pow(const Matrix& A, u64 e) {
    Matrix acc = Matrix::identity(A.p, A.rows);
    Matrix base = A;
    while (e) {
        if (e & 1) acc = mat_mul(acc, base);
        base = mat_mul(base, base);
        e >>= 1;
    }
    return acc;
}

/// Reduced row-echelon form; returns the RREF and the pivot column indices.
inline std::pair<Matrix, std::vector<size_t>> rref(Matrix m) {
    PrimeField F(m.p);
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < m.cols && r < m.rows; ++c) {
        size_t sel = r;
        while (sel < m.rows && m.at(sel, c) == 0) ++sel;
        if (sel == m.rows) continue;
        if (sel != r)
            for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
        u32 inv = F.inv(m.at(r, c));
        if (inv != 1) row_scale(m.p, m.row(r), inv, m.cols);
        for (size_t i = 0; i < m.rows; ++i) {
            if (i == r) continue;
            u32 v = m.at(i, c);
            if (v) row_axpy(m.p, m.row(i), m.row(r), F.neg(v), m.cols);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(pivots)};
}

inline size_t rank(const Matrix& m) { return rref(m).second.size(); }

/// Canonical basis (rows, in RREF) of the right kernel {v : m v = 0}.
inline Matrix kernel_basis(const Matrix& m) {
    auto [R, piv] = rref(m);
    PrimeField F(m.p);
    std::vector<bool> is_piv(m.cols, false);
    for (size_t c : piv) is_piv[c] = true;
    size_t k = m.cols - piv.size();
    Matrix K(m.p, k, m.cols);
    size_t r = 0;
    for (size_t f = 0; f < m.cols; ++f) {
        if (is_piv[f]) continue;
        K.at(r, f) = 1;
        for (size_t i = 0; i < piv.size(); ++i) K.at(r, piv[i]) = static_cast<u8>(F.neg(R.at(i, f)));
        ++r;
    }
    return rref(K).first;  // canonicalize
}

inline std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows != m.cols) return std::nullopt;
    PrimeField F(m.p);
    size_t n = m.rows;
    Matrix aug(m.p, n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        std::memcpy(aug.row(i), m.row(i), n);
        aug.at(i, n + i) = 1;
    }
    auto [R, piv] = rref(std::move(aug));
    if (piv.size() != n || piv.back() != n - 1) return std::nullopt;
    Matrix inv(m.p, n, n);
    for (size_t i = 0; i < n; ++i) std::memcpy(inv.row(i), R.row(i) + n, n);
    return inv;
}

/// One solution of m x = b, if any.
inline std::optional<Vec> solve(const Matrix& m, const Vec& b) {
    Matrix aug(m.p, m.rows, m.cols + 1);
    for (size_t i = 0; i < m.rows; ++i) {
        std::memcpy(aug.row(i), m.row(i), m.cols);
        aug.at(i, m.cols) = b[i];
    }
    auto [R, piv] = rref(std::move(aug));
    if (!piv.empty() && piv.back() == m.cols) return std::nullopt;
    Vec x(m.cols, 0);
    for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = R.at(i, m.cols);
    return x;
}

/// Flatten an operator matrix row-major into a coordinate vector.
inline Vec flatten(const Matrix& m) { return m.a; }

inline Matrix unflatten(u32 p, size_t rows, size_t cols, const Vec& v) {
    Matrix m(p, rows, cols);
    m.a = v;
    return m;
}

}  // namespace char3

#endif
