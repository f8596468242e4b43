#ifndef CHAR3_SUBSPACE_HPP
#define CHAR3_SUBSPACE_HPP

#include <algorithm>

#include "char3/matrix.hpp"

namespace char3 {

/// Incrementally maintained reduced row-echelon span. Rows are kept fully
/// reduced and sorted by pivot, so the state is the canonical RREF basis of
/// everything inserted so far.
struct SpanBuilder {
    u32 p;
    size_t len;
    std::vector<Vec> rows;
    std::vector<size_t> pivots;  // sorted, pivots[i] is the pivot column of rows[i]

    SpanBuilder(u32 p_, size_t len_) : p(p_), len(len_) {}

    size_t dim() const { return rows.size(); }
    bool full() const { return rows.size() == len; }

    /// Reduce v against the current rows (in place).
    void reduce_inplace(Vec& v) const {
        PrimeField F(p);
        for (size_t i = 0; i < rows.size(); ++i) {
            u32 c = v[pivots[i]];
            if (c) row_axpy(p, v.data(), rows[i].data(), F.neg(c), len);
        }
    }

    Vec reduce(Vec v) const {
        reduce_inplace(v);
        return v;
    }

    /// Insert a vector; returns true iff the dimension grew.
    bool insert(Vec v) {
        if (v.size() != len) throw std::invalid_argument("SpanBuilder: length mismatch");
        reduce_inplace(v);
        size_t lead = 0;
        while (lead < len && v[lead] == 0) ++lead;
        if (lead == len) return false;
        PrimeField F(p);
        u32 c = v[lead];
        if (c != 1) row_scale(p, v.data(), F.inv(c), len);
        for (size_t i = 0; i < rows.size(); ++i) {
            u32 x = rows[i][lead];
            if (x) row_axpy(p, rows[i].data(), v.data(), F.neg(x), len);
        }
        auto pos = std::upper_bound(pivots.begin(), pivots.end(), lead) - pivots.begin();
        pivots.insert(pivots.begin() + pos, lead);
        rows.insert(rows.begin() + pos, std::move(v));
        return true;
    }

    bool contains(Vec v) const { return is_zero(reduce(std::move(v))); }

    Matrix basis_matrix() const {
        Matrix m(p, rows.size(), len);
        for (size_t i = 0; i < rows.size(); ++i) std::copy(rows[i].begin(), rows[i].end(), m.row(i));
        return m;
    }
};

/// Subspace of GF(p)^ambient, stored by its canonical RREF basis (rows).
/// Two Subspace values are equal iff the basis matrices are identical.
struct Subspace {
    u32 p = 3;
    size_t ambient = 0;
    Matrix basis;  // RREF, rows are basis vectors
    std::vector<size_t> pivots;

    Subspace() = default;
    Subspace(u32 p_, size_t ambient_) : p(p_), ambient(ambient_), basis(p_, 0, ambient_) {}

    static Subspace zero(u32 p, size_t ambient) { return Subspace(p, ambient); }

    static Subspace full(u32 p, size_t ambient) {
        Subspace s(p, ambient);
        s.basis = Matrix::identity(p, ambient);
        for (size_t i = 0; i < ambient; ++i) s.pivots.push_back(i);
        return s;
    }

    /// Span of arbitrary row vectors.
    static Subspace span(u32 p, size_t ambient, const std::vector<Vec>& gens) {
        SpanBuilder sb(p, ambient);
        for (const auto& g : gens) sb.insert(g);
        return from_builder(sb);
    }

    static Subspace from_builder(const SpanBuilder& sb) {
        Subspace s(sb.p, sb.len);
        s.basis = sb.basis_matrix();
        s.pivots = sb.pivots;
        return s;
    }

    size_t dim() const { return basis.rows; }

    bool contains(const Vec& v) const {
        SpanBuilder sb = to_builder();
        return sb.contains(v);
    }

    bool contains(const Subspace& other) const {
        SpanBuilder sb = to_builder();
        for (size_t i = 0; i < other.dim(); ++i)
            if (!sb.contains(other.basis.row_vec(i))) return false;
        return true;
    }

    /// Coordinates of v in the RREF basis; nullopt if v is outside.
    std::optional<Vec> coords(const Vec& v) const {
        Vec c(dim());
        for (size_t i = 0; i < dim(); ++i) c[i] = v[pivots[i]];
        // verify
        PrimeField F(p);
        Vec rec(ambient, 0);
        for (size_t i = 0; i < dim(); ++i)
            if (c[i]) row_axpy(p, rec.data(), basis.row(i), c[i], ambient);
        if (rec != v) return std::nullopt;
        return c;
    }

    Vec from_coords(const Vec& c) const {
        Vec v(ambient, 0);
        for (size_t i = 0; i < dim(); ++i)
            if (c[i]) row_axpy(p, v.data(), basis.row(i), c[i], ambient);
        return v;
    }

    SpanBuilder to_builder() const {
        SpanBuilder sb(p, ambient);
        sb.pivots = pivots;
        sb.rows.reserve(dim());
        for (size_t i = 0; i < dim(); ++i) sb.rows.push_back(basis.row_vec(i));
        return sb;
    }

    bool operator==(const Subspace& o) const { return p == o.p && ambient == o.ambient && basis == o.basis; }
    bool operator!=(const Subspace& o) const { return !(*this == o); }
};

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    SpanBuilder sb = a.to_builder();
    for (size_t i = 0; i < b.dim(); ++i) sb.insert(b.basis.row_vec(i));
    return Subspace::from_builder(sb);
}

/// Intersection via the kernel of [A^T | -B^T] on stacked coefficients.
inline Subspace subspace_intersection(const Subspace& a, const Subspace& b) {
    PrimeField F(a.p);
    size_t da = a.dim(), db = b.dim();
    Matrix m(a.p, a.ambient, da + db);
    for (size_t i = 0; i < da; ++i)
        for (size_t r = 0; r < a.ambient; ++r) m.at(r, i) = a.basis.at(i, r);
    for (size_t j = 0; j < db; ++j)
        for (size_t r = 0; r < a.ambient; ++r) m.at(r, da + j) = static_cast<u8>(F.neg(b.basis.at(j, r)));
    Matrix K = kernel_basis(m);
    SpanBuilder sb(a.p, a.ambient);
    for (size_t i = 0; i < K.rows; ++i) {
        Vec v(a.ambient, 0);
        for (size_t k = 0; k < da; ++k)
            if (K.at(i, k)) row_axpy(a.p, v.data(), a.basis.row(k), K.at(i, k), a.ambient);
        sb.insert(std::move(v));
    }
    return Subspace::from_builder(sb);
}

/// Deterministic complement W with outer = inner ⊕ W: greedily keep the
/// outer RREF basis rows that are independent of inner.
inline Subspace canonical_complement(const Subspace& inner, const Subspace& outer) {
    if (!outer.contains(inner)) throw std::invalid_argument("canonical_complement: inner is not contained in outer");
    SpanBuilder sb = inner.to_builder();
    SpanBuilder w(outer.p, outer.ambient);
    for (size_t i = 0; i < outer.dim(); ++i) {
        Vec v = outer.basis.row_vec(i);
        if (sb.insert(v)) w.insert(std::move(v));
    }
    return Subspace::from_builder(w);
}

}  // namespace char3

#endif
