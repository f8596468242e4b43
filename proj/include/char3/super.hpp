#ifndef CHAR3_SUPER_HPP
#define CHAR3_SUPER_HPP

#include "char3/lie.hpp"

namespace char3 {

/// Lie superalgebra over GF(p) by parity vector and sparse structure
/// constants.
struct LieSuperalgebra {
    u32 p = 3;
    size_t dim = 0;
    std::vector<u8> parity;
    std::vector<std::string> basis_names;
    std::vector<std::vector<std::pair<u32, u8>>> bracket;  // i*dim + j

    LieSuperalgebra() = default;
    LieSuperalgebra(u32 p_, size_t dim_) : p(p_), dim(dim_), parity(dim_, 0), bracket(dim_ * dim_) {
        basis_names.resize(dim);
        for (size_t i = 0; i < dim; ++i) basis_names[i] = "g" + std::to_string(i);
    }

    const std::vector<std::pair<u32, u8>>& basis_bracket(size_t i, size_t j) const { return bracket[i * dim + j]; }

    void add_entry(size_t i, size_t j, size_t k, u32 c) {
        c %= p;
        if (!c) return;
        auto& lst = bracket[i * dim + j];
        for (auto it = lst.begin(); it != lst.end(); ++it)
            if (it->first == k) {
                u32 nc = (it->second + c) % p;
                if (nc == 0)
                    lst.erase(it);
                else
                    it->second = static_cast<u8>(nc);
                return;
            }
        lst.emplace_back(static_cast<u32>(k), static_cast<u8>(c));
    }

    void set_entry_vec(size_t i, size_t j, const Vec& v) {
        auto& lst = bracket[i * dim + j];
        lst.clear();
        for (size_t k = 0; k < dim; ++k)
            if (v[k]) lst.emplace_back(static_cast<u32>(k), v[k]);
    }

    Vec bracket_vec(const Vec& x, const Vec& y) const {
        PrimeField F(p);
        Vec r(dim, 0);
        for (size_t i = 0; i < dim; ++i) {
            if (!x[i]) continue;
            for (size_t j = 0; j < dim; ++j) {
                if (!y[j]) continue;
                u32 c = F.mul(x[i], y[j]);
                for (auto [k, v] : basis_bracket(i, j)) r[k] = static_cast<u8>((r[k] + c * v) % p);
            }
        }
        return r;
    }

    size_t even_dim() const {
        size_t e = 0;
        for (u8 b : parity) e += (b == 0);
        return e;
    }
    size_t odd_dim() const { return dim - even_dim(); }

    std::vector<size_t> odd_indices() const {
        std::vector<size_t> r;
        for (size_t i = 0; i < dim; ++i)
            if (parity[i]) r.push_back(i);
        return r;
    }
    std::vector<size_t> even_indices() const {
        std::vector<size_t> r;
        for (size_t i = 0; i < dim; ++i)
            if (!parity[i]) r.push_back(i);
        return r;
    }
};

/// Parity-homogeneity, super-anticommutativity and super-Jacobi.
inline std::vector<CheckReport> check_weak(const LieSuperalgebra& L, const CheckPolicy& policy = {}) {
    size_t n = L.dim;
    PrimeField F(L.p);
    std::vector<CheckReport> out;
    {
        CheckReport r;
        r.name = "parity_homogeneous";
        r.checked = n * n;
        for (size_t i = 0; i < n && r.passed; ++i)
            for (size_t j = 0; j < n; ++j) {
                u8 want = L.parity[i] ^ L.parity[j];
                for (auto [k, c] : L.basis_bracket(i, j)) {
                    (void)c;
                    if (L.parity[k] != want) {
                        r.passed = false;
                        r.cex = Counterexample{{i, j, k}, ""};
                        break;
                    }
                }
                if (!r.passed) break;
            }
        out.push_back(std::move(r));
    }
    out.push_back(run_tuple_check("super_anticommutative", {n, n}, 4.0 * n, policy, [&](const std::vector<u64>& t) {
        size_t i = t[0], j = t[1];
        Vec a(n, 0), b(n, 0);
        for (auto [k, c] : L.basis_bracket(i, j)) a[k] = c;
        for (auto [k, c] : L.basis_bracket(j, i)) b[k] = c;
        u32 sign = (L.parity[i] & L.parity[j]) ? 1 : F.neg(1);
        return a == vec_scale(F, b, sign);
    }));
    out.push_back(run_tuple_check("super_jacobi", {n, n, n}, 6.0 * n, policy, [&](const std::vector<u64>& t) {
        size_t x = t[0], y = t[1], z = t[2];
        // [[x,y],z] + (-1)^{|x|(|y|+|z|)} [[y,z],x] + (-1)^{|z|(|x|+|y|)} [[z,x],y] = 0
        Vec r(n, 0);
        auto addterm = [&](size_t a, size_t b, size_t c, u32 sign) {
            for (auto [k, v] : L.basis_bracket(a, b))
                for (auto [l, w] : L.basis_bracket(k, c)) r[l] = static_cast<u8>((r[l] + sign * v % L.p * w) % L.p);
        };
        u32 s1 = (L.parity[x] & ((L.parity[y] + L.parity[z]) & 1)) ? F.neg(1) : 1;
        u32 s2 = (L.parity[z] & ((L.parity[x] + L.parity[y]) & 1)) ? F.neg(1) : 1;
        addterm(x, y, z, 1);
        addterm(y, z, x, s1);
        addterm(z, x, y, s2);
        return is_zero(r);
    }));
    return out;
}

/// x ↦ [[x,x],x] on the odd part, as a linear operator in odd-block
/// coordinates (additivity follows from the odd Jacobi identity at p = 3).
inline Matrix cube_map(const LieSuperalgebra& L) {
    if (L.p != 3) throw std::invalid_argument("cube_map: only defined at p = 3");
    auto odd = L.odd_indices();
    Matrix m(L.p, odd.size(), odd.size());
    for (size_t c = 0; c < odd.size(); ++c) {
        Vec x = unit_vec(L.dim, odd[c]);
        Vec v = L.bracket_vec(L.bracket_vec(x, x), x);
        for (size_t r = 0; r < odd.size(); ++r) m.at(r, c) = v[odd[r]];
    }
    return m;
}

/// Additivity of the cube on seeded odd pairs (property backing the
/// basis-only computation of cube_map).
inline CheckReport check_cube_additivity(const LieSuperalgebra& L, u64 samples = 10000, u64 seed = kDefaultSeed) {
    CheckReport rep;
    rep.name = "cube_additivity";
    rep.checked = samples;
    if (L.p != 3) {
        rep.checked = 0;
        return rep;
    }
    PrimeField F(3);
    auto odd = L.odd_indices();
    if (odd.empty()) {
        rep.checked = 0;
        return rep;
    }
    auto cube = [&](const Vec& v) { return L.bracket_vec(L.bracket_vec(v, v), v); };
    auto fail = parallel_first_fail(samples, [&](u64 i) {
        u64 s = splitmix64(seed ^ (i * 77 + 5));
        Vec x(L.dim, 0), y(L.dim, 0);
        for (size_t k : odd) {
            s = splitmix64(s);
            x[k] = static_cast<u8>(s % 3);
            s = splitmix64(s);
            y[k] = static_cast<u8>(s % 3);
        }
        Vec lhs = cube(vec_add(F, x, y));
        Vec rhs = vec_add(F, cube(x), cube(y));
        return lhs == rhs;
    });
    if (fail) {
        rep.passed = false;
        rep.cex = Counterexample{{*fail}, "(seeded odd pair)"};
    }
    return rep;
}

/// Span of [[x,x],x] over the odd part (inside the full space).
inline Subspace cube_ideal(const LieSuperalgebra& L) {
    if (L.p != 3) return Subspace::zero(L.p, L.dim);
    auto odd = L.odd_indices();
    Matrix m = cube_map(L);
    SpanBuilder sb(L.p, L.dim);
    for (size_t c = 0; c < odd.size(); ++c) {
        Vec v(L.dim, 0);
        for (size_t r = 0; r < odd.size(); ++r) v[odd[r]] = m.at(r, c);
        sb.insert(std::move(v));
    }
    return Subspace::from_builder(sb);
}

/// Lie superalgebra test: weak axioms plus (at p = 3) the vanishing of the
/// cube ideal; at p > 3 the weak verdict is final.
inline bool is_lie(const LieSuperalgebra& L, const CheckPolicy& policy = {}) {
    if (!all_passed(check_weak(L, policy))) return false;
    if (L.p == 3) return cube_ideal(L).dim() == 0;
    return true;
}

/// Quotient by a graded ideal; the new basis is the canonical graded
/// complement of the ideal.
inline LieSuperalgebra quotient(const LieSuperalgebra& L, const Subspace& ideal) {
    size_t n = L.dim;
    u32 p = L.p;
    // gradedness: ideal = (ideal ∩ even) ⊕ (ideal ∩ odd)
    SpanBuilder ev(p, n), od(p, n);
    for (size_t i = 0; i < n; ++i)
        (L.parity[i] ? od : ev).insert(unit_vec(n, i));
    Subspace even_sub = Subspace::from_builder(ev), odd_sub = Subspace::from_builder(od);
    Subspace ie = subspace_intersection(ideal, even_sub);
    Subspace io = subspace_intersection(ideal, odd_sub);
    if (ie.dim() + io.dim() != ideal.dim()) throw std::invalid_argument("quotient: ideal is not graded");
    // ideal property
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < ideal.dim(); ++k)
            if (!ideal.contains(L.bracket_vec(unit_vec(n, i), ideal.basis.row_vec(k))))
                throw std::invalid_argument("quotient: subspace is not an ideal");

    Subspace ce = canonical_complement(ie, even_sub);
    Subspace co = canonical_complement(io, odd_sub);
    size_t ne = ce.dim(), no = co.dim();
    // decomposition basis: [ideal | even reps | odd reps]
    size_t q = ne + no;
    Matrix M(p, n, n);
    for (size_t c = 0; c < ideal.dim(); ++c)
        for (size_t r = 0; r < n; ++r) M.at(r, c) = ideal.basis.at(c, r);
    for (size_t c = 0; c < ne; ++c)
        for (size_t r = 0; r < n; ++r) M.at(r, ideal.dim() + c) = ce.basis.at(c, r);
    for (size_t c = 0; c < no; ++c)
        for (size_t r = 0; r < n; ++r) M.at(r, ideal.dim() + ne + c) = co.basis.at(c, r);
    auto Minv = inverse(M);
    if (!Minv) throw std::logic_error("quotient: complement is not complementary");

    LieSuperalgebra Q(p, q);
    for (size_t i = 0; i < ne; ++i) Q.parity[i] = 0;
    for (size_t i = 0; i < no; ++i) Q.parity[ne + i] = 1;
    auto rep_vec = [&](size_t i) { return i < ne ? ce.basis.row_vec(i) : co.basis.row_vec(i - ne); };
    for (size_t i = 0; i < q; ++i)
        for (size_t j = 0; j < q; ++j) {
            Vec w = L.bracket_vec(rep_vec(i), rep_vec(j));
            Vec coords = Minv->apply(w);
            Vec out(q, 0);
            for (size_t k = 0; k < q; ++k) out[k] = coords[ideal.dim() + k];
            Q.set_entry_vec(i, j, out);
        }
    return Q;
}

/// Structural invariants used as isomorphism evidence (not proof).
struct Fingerprint {
    size_t even = 0, odd = 0;
    size_t center_even = 0, center_odd = 0;
    size_t derived_even = 0, derived_odd = 0;
    size_t odd_odd = 0;
    size_t cube_dim = 0;
    bool odd_irreducible_heuristic = false;  // heuristic, not a proof

    bool core_match(const Fingerprint& o) const {
        return even == o.even && odd == o.odd && center_even == o.center_even && center_odd == o.center_odd &&
               derived_even == o.derived_even && derived_odd == o.derived_odd && odd_odd == o.odd_odd;
    }
};

inline Fingerprint fingerprint(const LieSuperalgebra& L, u64 seed = kDefaultSeed) {
    size_t n = L.dim;
    u32 p = L.p;
    Fingerprint f;
    f.even = L.even_dim();
    f.odd = L.odd_dim();
    // center: kernel of x ↦ ([x, e_j])_j
    {
        Matrix m(p, n * n, n);
        for (size_t j = 0; j < n; ++j)
            for (size_t i = 0; i < n; ++i)
                for (auto [k, c] : L.basis_bracket(i, j)) m.at(j * n + k, i) = c;
        Matrix kb = kernel_basis(m);
        SpanBuilder ce(p, n), co(p, n);
        for (size_t r = 0; r < kb.rows; ++r) {
            Vec v = kb.row_vec(r);
            Vec vev(n, 0), vod(n, 0);
            for (size_t i = 0; i < n; ++i) (L.parity[i] ? vod : vev)[i] = v[i];
            ce.insert(vev);
            co.insert(vod);
        }
        // homogeneous parts of central elements are central (brackets are
        // parity-homogeneous), so splitting the kernel basis is sound
        f.center_even = ce.dim();
        f.center_odd = co.dim();
    }
    {
        SpanBuilder de(p, n), dodd(p, n), oo(p, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                const auto& lst = L.basis_bracket(i, j);
                if (lst.empty()) continue;
                Vec v(n, 0);
                for (auto [k, c] : lst) v[k] = c;
                ((L.parity[i] ^ L.parity[j]) ? dodd : de).insert(v);
                if (L.parity[i] && L.parity[j]) oo.insert(std::move(v));
            }
        f.derived_even = de.dim();
        f.derived_odd = dodd.dim();
        f.odd_odd = oo.dim();
    }
    f.cube_dim = (p == 3) ? cube_ideal(L).dim() : 0;
    // irreducibility heuristic: the adjoint submodule generated by each odd
    // basis vector and by 100 seeded random odd vectors covers the whole
    // odd part (evidence that the odd part is a sum of nontrivial
    // irreducibles with every piece reaching the others)
    {
        auto odd = L.odd_indices();
        f.odd_irreducible_heuristic = !odd.empty();
        auto generates = [&](Vec v) {
            SpanBuilder sb(p, n);
            std::vector<Vec> queue;
            if (sb.insert(v)) queue.push_back(v);
            while (!queue.empty()) {
                Vec x = std::move(queue.back());
                queue.pop_back();
                for (size_t e = 0; e < n; ++e) {
                    Vec y(n, 0);
                    for (size_t j = 0; j < n; ++j) {
                        if (!x[j]) continue;
                        for (auto [k, c] : L.basis_bracket(e, j)) y[k] = static_cast<u8>((y[k] + x[j] * c) % p);
                    }
                    if (sb.insert(y)) queue.push_back(std::move(y));
                }
            }
            for (size_t k : odd)
                if (!sb.contains(unit_vec(n, k))) return false;
            return true;
        };
        for (size_t i = 0; i < odd.size() && f.odd_irreducible_heuristic; ++i)
            f.odd_irreducible_heuristic = generates(unit_vec(n, odd[i]));
        u64 s = seed;
        for (int t = 0; t < 100 && f.odd_irreducible_heuristic; ++t) {
            Vec v(n, 0);
            bool nz = false;
            for (size_t k : odd) {
                s = splitmix64(s);
                v[k] = static_cast<u8>(s % p);
                nz = nz || v[k];
            }
            if (nz) f.odd_irreducible_heuristic = generates(v);
        }
    }
    return f;
}

}  // namespace char3

#endif
