#ifndef CHAR3_ALGEBRA_HPP
#define CHAR3_ALGEBRA_HPP

#include <deque>

#include "char3/check.hpp"
#include "char3/subspace.hpp"

namespace char3 {

/// Finite-dimensional algebra over GF(p) given by sparse structure constants:
/// e_i · e_j = Σ c · e_k over the stored (k, c) entries. No zero coefficients
/// are stored and (i,j,k) keys are unique.
struct Algebra {
    u32 p = 3;
    size_t dim = 0;
    std::vector<std::string> basis_names;
    std::vector<std::vector<std::pair<u32, u8>>> mul_table;  // index i*dim+j
    std::optional<Vec> unit;

    Algebra() = default;
    Algebra(u32 p_, size_t dim_) : p(p_), dim(dim_), mul_table(dim_ * dim_) {
        basis_names.resize(dim);
        for (size_t i = 0; i < dim; ++i) basis_names[i] = "e" + std::to_string(i);
    }

    const std::vector<std::pair<u32, u8>>& basis_product(size_t i, size_t j) const { return mul_table[i * dim + j]; }

    void add_entry(size_t i, size_t j, size_t k, u32 c) {
        c %= p;
        if (!c) return;
        auto& lst = mul_table[i * dim + j];
        for (auto& [kk, cc] : lst) {
            if (kk == k) {
                u32 nc = (cc + c) % p;
                if (nc == 0) {
                    lst.erase(std::remove_if(lst.begin(), lst.end(), [&](const auto& e) { return e.first == k; }),
                              lst.end());
                } else {
                    cc = static_cast<u8>(nc);
                }
                return;
            }
        }
        lst.emplace_back(static_cast<u32>(k), static_cast<u8>(c));
    }

    void set_product(size_t i, size_t j, const Vec& v) {
        auto& lst = mul_table[i * dim + j];
        lst.clear();
        for (size_t k = 0; k < dim; ++k)
            if (v[k]) lst.emplace_back(static_cast<u32>(k), v[k]);
    }

    Vec multiply(const Vec& x, const Vec& y) const {
        if (x.size() != dim || y.size() != dim) throw std::invalid_argument("Algebra::multiply: dimension mismatch");
        Vec r(dim, 0);
        PrimeField F(p);
        for (size_t i = 0; i < dim; ++i) {
            if (!x[i]) continue;
            for (size_t j = 0; j < dim; ++j) {
                if (!y[j]) continue;
                u32 c = F.mul(x[i], y[j]);
                for (auto [k, v] : basis_product(i, j)) r[k] = static_cast<u8>((r[k] + c * v) % p);
            }
        }
        return r;
    }

    /// Accumulate c · (e_i · y) into r.
    void accumulate_left_basis(Vec& r, size_t i, const Vec& y, u32 c) const {
        PrimeField F(p);
        for (size_t j = 0; j < dim; ++j) {
            if (!y[j]) continue;
            u32 cc = F.mul(c, y[j]);
            for (auto [k, v] : basis_product(i, j)) r[k] = static_cast<u8>((r[k] + cc * v) % p);
        }
    }

    /// Accumulate c · (e_i · e_j) into r.
    void accumulate_basis_pair(Vec& r, size_t i, size_t j, u32 c) const {
        for (auto [k, v] : basis_product(i, j)) r[k] = static_cast<u8>((r[k] + c * v) % p);
    }

    Vec associator(const Vec& x, const Vec& y, const Vec& z) const {
        PrimeField F(p);
        return vec_sub(F, multiply(multiply(x, y), z), multiply(x, multiply(y, z)));
    }

    Matrix left_mul(const Vec& x) const {
        Matrix m(p, dim, dim);
        for (size_t j = 0; j < dim; ++j) {
            Vec col = multiply(x, unit_vec(dim, j));
            for (size_t i = 0; i < dim; ++i) m.at(i, j) = col[i];
        }
        return m;
    }

    Matrix right_mul(const Vec& x) const {
        Matrix m(p, dim, dim);
        for (size_t j = 0; j < dim; ++j) {
            Vec col = multiply(unit_vec(dim, j), x);
            for (size_t i = 0; i < dim; ++i) m.at(i, j) = col[i];
        }
        return m;
    }

    bool is_anticommutative() const {
        PrimeField F(p);
        for (size_t i = 0; i < dim; ++i) {
            if (!basis_product(i, i).empty()) return false;
            for (size_t j = i + 1; j < dim; ++j) {
                Vec a(dim, 0), b(dim, 0);
                for (auto [k, c] : basis_product(i, j)) a[k] = c;
                for (auto [k, c] : basis_product(j, i)) b[k] = static_cast<u8>(F.neg(c));
                if (a != b) return false;
            }
        }
        return true;
    }
};

/// Canonical span of flattened operator matrices inside the dim²-dimensional
/// operator space.
inline Subspace operator_span(const std::vector<Matrix>& ops) {
    if (ops.empty()) return Subspace::zero(3, 0);
    SpanBuilder sb(ops[0].p, ops[0].rows * ops[0].cols);
    for (const auto& m : ops) sb.insert(flatten(m));
    return Subspace::from_builder(sb);
}

/// Linear span closed under operator composition (plus id when `unital`),
/// via span-saturation with right multiplication by the generators. Stops
/// early when the span is the full operator space.
struct GeneratedAlgebra {
    size_t dim;
    Subspace span;
};

inline GeneratedAlgebra assoc_subalgebra_generated(const std::vector<Matrix>& gens, bool unital) {
    if (gens.empty()) {
        if (!unital) return {0, Subspace::zero(3, 0)};
        throw std::invalid_argument("assoc_subalgebra_generated: need generators to size the unital algebra");
    }
    size_t n = gens[0].rows;
    u32 p = gens[0].p;
    for (const auto& g : gens)
        if (g.rows != n || g.cols != n || g.p != p)
            throw std::invalid_argument("assoc_subalgebra_generated: mixed operator shapes");
    SpanBuilder sb(p, n * n);
    std::deque<Matrix> queue;
    auto push = [&](Matrix m) {
        if (sb.full()) return;
        if (sb.insert(flatten(m))) queue.push_back(std::move(m));
    };
    if (unital) push(Matrix::identity(p, n));
    for (const auto& g : gens) push(g);
    size_t guard = n * n * (gens.size() + 2) + 16;
    size_t steps = 0;
    while (!queue.empty() && !sb.full()) {
        Matrix m = std::move(queue.front());
        queue.pop_front();
        for (const auto& g : gens) {
            if (sb.full()) break;
            push(mat_mul(m, g));
        }
        if (++steps > guard) throw std::logic_error("assoc_subalgebra_generated: saturation did not stabilize");
    }
    return {sb.dim(), Subspace::from_builder(sb)};
}

inline GeneratedAlgebra assoc_subalgebra_generated(const std::vector<Matrix>& gens, bool unital, u32 p, size_t n) {
    if (gens.empty()) {
        SpanBuilder sb(p, n * n);
        if (unital) sb.insert(flatten(Matrix::identity(p, n)));
        return {sb.dim(), Subspace::from_builder(sb)};
    }
    return assoc_subalgebra_generated(gens, unital);
}

/// Span of generator vectors closed under the (bilinear) product of L.
inline Subspace span_closure_under_product(const Algebra& L, const std::vector<Vec>& gens) {
    SpanBuilder sb(L.p, L.dim);
    std::deque<Vec> queue;
    for (const auto& g : gens)
        if (sb.insert(g)) queue.push_back(g);
    size_t guard = L.dim * L.dim + 16;
    size_t steps = 0;
    while (!queue.empty() && !sb.full()) {
        Vec v = std::move(queue.front());
        queue.pop_front();
        // multiply against the current basis from both sides
        std::vector<Vec> snapshot = sb.rows;
        for (const auto& b : snapshot) {
            Vec x = L.multiply(v, b);
            if (sb.insert(x)) queue.push_back(std::move(x));
            Vec y = L.multiply(b, v);
            if (sb.insert(y)) queue.push_back(std::move(y));
        }
        if (++steps > guard) throw std::logic_error("span_closure_under_product: saturation did not stabilize");
    }
    return Subspace::from_builder(sb);
}

inline Subspace lie_bracket_closure(const Algebra& L, const std::vector<Vec>& gens) {
    return span_closure_under_product(L, gens);
}

/// {x : x e_j = 0 for all j}; for anticommutative L this is the center.
inline Subspace center(const Algebra& L) {
    Matrix m(L.p, L.dim * L.dim, L.dim);
    for (size_t j = 0; j < L.dim; ++j) {
        // row block j: map x -> (x e_j)
        for (size_t i = 0; i < L.dim; ++i)
            for (auto [k, c] : L.basis_product(i, j)) m.at(j * L.dim + k, i) = c;
    }
    Matrix K = kernel_basis(m);
    SpanBuilder sb(L.p, L.dim);
    for (size_t i = 0; i < K.rows; ++i) sb.insert(K.row_vec(i));
    return Subspace::from_builder(sb);
}

inline Subspace derived_subalgebra(const Algebra& L) {
    SpanBuilder sb(L.p, L.dim);
    for (size_t i = 0; i < L.dim && !sb.full(); ++i)
        for (size_t j = 0; j < L.dim && !sb.full(); ++j) {
            const auto& prod = L.basis_product(i, j);
            if (prod.empty()) continue;
            Vec v(L.dim, 0);
            for (auto [k, c] : prod) v[k] = c;
            sb.insert(std::move(v));
        }
    return Subspace::from_builder(sb);
}

/// Smallest subspace containing S and closed under multiplication by L's
/// basis on both sides.
inline Subspace ideal_generated(const Algebra& L, const Subspace& S) {
    SpanBuilder sb(L.p, L.dim);
    std::deque<Vec> queue;
    for (size_t i = 0; i < S.dim(); ++i) {
        Vec v = S.basis.row_vec(i);
        if (sb.insert(v)) queue.push_back(std::move(v));
    }
    size_t guard = L.dim * L.dim + 16;
    size_t steps = 0;
    while (!queue.empty() && !sb.full()) {
        Vec v = std::move(queue.front());
        queue.pop_front();
        for (size_t i = 0; i < L.dim; ++i) {
            Vec x = L.multiply(unit_vec(L.dim, i), v);
            if (sb.insert(x)) queue.push_back(std::move(x));
            Vec y = L.multiply(v, unit_vec(L.dim, i));
            if (sb.insert(y)) queue.push_back(std::move(y));
        }
        if (++steps > guard) throw std::logic_error("ideal_generated: saturation did not stabilize");
    }
    return Subspace::from_builder(sb);
}

/// d(e_i e_j) = d(e_i) e_j + e_i d(e_j) on all basis pairs.
inline bool is_derivation(const Algebra& L, const Matrix& d) {
    PrimeField F(L.p);
    for (size_t i = 0; i < L.dim; ++i) {
        Vec dei = d.col_vec(i);
        for (size_t j = 0; j < L.dim; ++j) {
            Vec prod(L.dim, 0);
            for (auto [k, c] : L.basis_product(i, j)) prod[k] = c;
            Vec lhs = d.apply(prod);
            Vec rhs = L.multiply(dei, unit_vec(L.dim, j));
            Vec rhs2 = L.multiply(unit_vec(L.dim, i), d.col_vec(j));
            for (size_t k = 0; k < L.dim; ++k)
                if (lhs[k] != F.add(rhs[k], rhs2[k])) return false;
        }
    }
    return true;
}

/// Conjugate the structure constants by an invertible change of basis:
/// new basis vectors are the columns of Pcols (expressed in the old basis).
inline Algebra apply_basis_change(const Algebra& A, const Matrix& Pcols) {
    auto Pinv = inverse(Pcols);
    if (!Pinv) throw std::invalid_argument("apply_basis_change: singular matrix");
    Algebra B(A.p, A.dim);
    B.unit = A.unit ? std::optional<Vec>(Pinv->apply(*A.unit)) : std::nullopt;
    for (size_t i = 0; i < A.dim; ++i) {
        Vec bi = Pcols.col_vec(i);
        for (size_t j = 0; j < A.dim; ++j) {
            Vec prod = A.multiply(bi, Pcols.col_vec(j));
            B.set_product(i, j, Pinv->apply(prod));
        }
    }
    return B;
}

}  // namespace char3

#endif
