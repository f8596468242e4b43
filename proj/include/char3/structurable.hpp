#ifndef CHAR3_STRUCTURABLE_HPP
#define CHAR3_STRUCTURABLE_HPP

#include "char3/composition.hpp"

namespace char3 {

/// Unital algebra with involution satisfying the structurable axioms
/// [V_{a,b},V_{c,d}] = V_{V_{a,b}(c),d} - V_{c,V_{b,a}(d)} and the
/// skew-alternativity (a-ā,b,c) = (b,ā-a,c).
struct StructurableAlgebra {
    Algebra alg;
    Matrix inv;
    Vec unit;
    Subspace skew, herm;
    std::vector<CheckReport> reports;

    size_t dim() const { return alg.dim; }
    Vec conj(const Vec& x) const { return inv.apply(x); }
};

/// Sparse table of the operators V_{e_i,e_j}: column k of V_{ij} is stored as
/// a list of (row, coeff). V_{a,b}(c) = (a b̄)c + (c b̄)a - (c ā)b.
struct VTable {
    size_t dim;
    std::vector<std::vector<std::pair<u32, u8>>> col;  // index (i*dim + j)*dim + k

    const std::vector<std::pair<u32, u8>>& at(size_t i, size_t j, size_t k) const {
        return col[(i * dim + j) * dim + k];
    }

    /// Accumulate c * V_{ij}(e_k) into r.
    void axpy(Vec& r, u32 p, size_t i, size_t j, size_t k, u32 c) const {
        for (auto [row, v] : at(i, j, k)) r[row] = static_cast<u8>((r[row] + c * v) % p);
    }

    Matrix dense(u32 p, size_t i, size_t j) const {
        Matrix m(p, dim, dim);
        for (size_t k = 0; k < dim; ++k)
            for (auto [row, v] : at(i, j, k)) m.at(row, k) = v;
        return m;
    }
};

inline Vec v_operator_apply(const StructurableAlgebra& A, const Vec& a, const Vec& b, const Vec& c) {
    PrimeField F(A.alg.p);
    Vec bbar = A.conj(b), abar = A.conj(a);
    Vec r = A.alg.multiply(A.alg.multiply(a, bbar), c);
    r = vec_add(F, r, A.alg.multiply(A.alg.multiply(c, bbar), a));
    return vec_sub(F, r, A.alg.multiply(A.alg.multiply(c, abar), b));
}

inline Matrix v_operator(const StructurableAlgebra& A, const Vec& a, const Vec& b) {
    size_t n = A.dim();
    Matrix m(A.alg.p, n, n);
    for (size_t k = 0; k < n; ++k) {
        Vec colv = v_operator_apply(A, a, b, unit_vec(n, k));
        for (size_t r = 0; r < n; ++r) m.at(r, k) = colv[r];
    }
    return m;
}

inline VTable v_table(const StructurableAlgebra& A) {
    size_t n = A.dim();
    VTable t;
    t.dim = n;
    t.col.resize(n * n * n);
    std::vector<Vec> cbar(n);
    for (size_t i = 0; i < n; ++i) cbar[i] = A.conj(unit_vec(n, i));
    for (size_t i = 0; i < n; ++i) {
        Vec ei = unit_vec(n, i);
        for (size_t j = 0; j < n; ++j) {
            Vec w = A.alg.multiply(ei, cbar[j]);  // (e_i ē_j)
            for (size_t k = 0; k < n; ++k) {
                Vec ek = unit_vec(n, k);
                PrimeField F(A.alg.p);
                Vec colv = A.alg.multiply(w, ek);
                colv = vec_add(F, colv, A.alg.multiply(A.alg.multiply(ek, cbar[j]), ei));
                colv = vec_sub(F, colv, A.alg.multiply(A.alg.multiply(ek, cbar[i]), unit_vec(n, j)));
                auto& lst = t.col[(i * n + j) * n + k];
                for (size_t r = 0; r < n; ++r)
                    if (colv[r]) lst.emplace_back(static_cast<u32>(r), colv[r]);
            }
        }
    }
    return t;
}

/// T^ε = T - L_{T(1) + conj(T(1))}
inline Matrix t_eps(const StructurableAlgebra& A, const Matrix& T) {
    PrimeField F(A.alg.p);
    Vec t1 = T.apply(A.unit);
    return mat_sub(T, A.alg.left_mul(vec_add(F, t1, A.conj(t1))));
}

/// T^δ(x) = T(x) + x·conj(T(1)), i.e. T^δ = T + R_{conj(T(1))}
inline Matrix t_delta(const StructurableAlgebra& A, const Matrix& T) {
    return mat_add(T, A.alg.right_mul(A.conj(T.apply(A.unit))));
}

namespace detail {

inline CheckReport check_str1(const StructurableAlgebra& A, const VTable& vt, const CheckPolicy& policy) {
    size_t n = A.dim();
    u32 p = A.alg.p;
    return run_tuple_check("str1", {n, n, n, n, n}, 60.0, policy, [&](const std::vector<u64>& t) {
        size_t a = t[0], b = t[1], c = t[2], d = t[3], e = t[4];
        Vec lhs(n, 0), rhs(n, 0);
        // V_ab(V_cd(e)) - V_cd(V_ab(e))
        for (auto [l, v] : vt.at(c, d, e)) vt.axpy(lhs, p, a, b, l, v);
        for (auto [l, v] : vt.at(a, b, e)) {
            u32 nv = p - v;
            vt.axpy(lhs, p, c, d, l, nv);
        }
        // V_{V_ab(c), d}(e) - V_{c, V_ba(d)}(e)
        for (auto [l, v] : vt.at(a, b, c)) vt.axpy(rhs, p, l, d, e, v);
        for (auto [l, v] : vt.at(b, a, d)) {
            u32 nv = p - v;
            vt.axpy(rhs, p, c, l, e, nv);
        }
        return lhs == rhs;
    });
}

inline CheckReport check_str2(const StructurableAlgebra& A, const CheckPolicy& policy) {
    size_t n = A.dim();
    PrimeField F(A.alg.p);
    std::vector<Vec> skewpart(n);
    for (size_t i = 0; i < n; ++i) skewpart[i] = vec_sub(F, unit_vec(n, i), A.conj(unit_vec(n, i)));
    return run_tuple_check("str2", {n, n, n}, 40.0, policy, [&](const std::vector<u64>& t) {
        const Vec& s = skewpart[t[0]];
        Vec b = unit_vec(n, t[1]), c = unit_vec(n, t[2]);
        Vec lhs = A.alg.associator(s, b, c);
        Vec rhs = A.alg.associator(b, vec_scale(F, s, F.neg(1)), c);
        return lhs == rhs;
    });
}

}  // namespace detail

/// Assemble and verify a structurable algebra. Throws on axiom failure.
inline StructurableAlgebra make_structurable(Algebra alg, Matrix inv, Vec unit, const CheckPolicy& policy = {}) {
    StructurableAlgebra A;
    A.alg = std::move(alg);
    A.inv = std::move(inv);
    A.unit = std::move(unit);
    A.alg.unit = A.unit;
    size_t n = A.dim();
    PrimeField F(A.alg.p);

    // unit and involution sanity
    for (size_t j = 0; j < n; ++j) {
        if (A.alg.multiply(A.unit, unit_vec(n, j)) != unit_vec(n, j) ||
            A.alg.multiply(unit_vec(n, j), A.unit) != unit_vec(n, j))
            throw std::invalid_argument("make_structurable: unit is not two-sided");
    }
    if (A.conj(A.unit) != A.unit) throw std::invalid_argument("make_structurable: involution does not fix 1");
    if (mat_mul(A.inv, A.inv) != Matrix::identity(A.alg.p, n))
        throw std::invalid_argument("make_structurable: involution is not of order <= 2");
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Vec lhs = A.conj(A.alg.multiply(unit_vec(n, i), unit_vec(n, j)));
            Vec rhs = A.alg.multiply(A.conj(unit_vec(n, j)), A.conj(unit_vec(n, i)));
            if (lhs != rhs) throw std::invalid_argument("make_structurable: involution is not an anti-automorphism");
        }

    InvolutiveAlgebra tmp{A.alg, A.inv, A.unit, {}, {}};
    compute_skew_herm(tmp);
    A.skew = tmp.skew;
    A.herm = tmp.herm;
    if (A.skew.dim() + A.herm.dim() != n)
        throw std::logic_error("make_structurable: skew/herm do not decompose the algebra");

    VTable vt = v_table(A);
    A.reports.push_back(detail::check_str1(A, vt, policy));
    A.reports.push_back(detail::check_str2(A, policy));
    for (const auto& r : A.reports)
        if (!r.passed) throw std::logic_error("make_structurable: axiom failed: " + r.summary());
    return A;
}

/// Inner structure Lie algebra instrl(A,-) = span{V_{a,b}}; the basis
/// operators and the canonical span. Closure under commutators is verified.
struct Instrl {
    Subspace span;                // inside the dim²-dimensional operator space
    std::vector<Matrix> basis;    // unflattened canonical basis
};

inline Instrl instrl(const StructurableAlgebra& A, const VTable& vt, bool verify_closure = true) {
    size_t n = A.dim();
    SpanBuilder sb(A.alg.p, n * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) sb.insert(flatten(vt.dense(A.alg.p, i, j)));
    Instrl out;
    out.span = Subspace::from_builder(sb);
    for (size_t i = 0; i < out.span.dim(); ++i)
        out.basis.push_back(unflatten(A.alg.p, n, n, out.span.basis.row_vec(i)));
    if (verify_closure) {
        for (size_t i = 0; i < out.basis.size(); ++i)
            for (size_t j = i + 1; j < out.basis.size(); ++j)
                if (!out.span.contains(flatten(commutator(out.basis[i], out.basis[j]))))
                    throw std::logic_error("instrl: span is not closed under commutators");
    }
    return out;
}

inline Instrl instrl(const StructurableAlgebra& A, bool verify_closure = true) {
    VTable vt = v_table(A);
    return instrl(A, vt, verify_closure);
}

// ---------------------------------------------------------------------------
// Tensor products of composition algebras and the Albert form apparatus
// ---------------------------------------------------------------------------

/// Albert quadratic form data on the skew part S = S1 ⊕ S2 of C1 ⊗ C2:
/// Q(s1+s2) = n1(s1) - n2(s2), (s1+s2)♯ = s1-s2, in the embedded basis
/// (S1-basis ⊗ 1, then 1 ⊗ S2-basis).
struct AlbertFormData {
    Matrix embed;          // rows: S basis vectors inside A
    std::vector<u8> q_diag;
    Matrix q_polar;
    Matrix sharp;          // coordinates of ♯ in the embedded basis (diagonal ±1)
    size_t dim1 = 0;       // dim of the S1 block

    size_t sdim() const { return embed.rows; }

    u32 Q(const Vec& c) const {
        u64 acc = 0;
        u32 p = embed.p;
        for (size_t i = 0; i < sdim(); ++i) {
            if (!c[i]) continue;
            acc += static_cast<u64>(c[i]) * c[i] % p * q_diag[i];
            for (size_t j = i + 1; j < sdim(); ++j)
                if (c[j]) acc += static_cast<u64>(c[i]) * c[j] % p * q_polar.at(i, j);
        }
        return static_cast<u32>(acc % p);
    }

    u32 Q_pair(const Vec& a, const Vec& b) const {
        u64 acc = 0;
        u32 p = embed.p;
        for (size_t i = 0; i < sdim(); ++i) {
            if (!a[i]) continue;
            for (size_t j = 0; j < sdim(); ++j)
                if (b[j]) acc += static_cast<u64>(a[i]) * b[j] % p * q_polar.at(i, j);
        }
        return static_cast<u32>(acc % p);
    }

    Vec sharp_apply(const Vec& c) const { return sharp.apply(c); }

    Vec to_ambient(const Vec& c) const {
        Vec v(embed.cols, 0);
        for (size_t i = 0; i < sdim(); ++i)
            if (c[i]) row_axpy(embed.p, v.data(), embed.row(i), c[i], embed.cols);
        return v;
    }

    std::optional<Vec> from_ambient(const Vec& v) const {
        Matrix et = embed.transpose();
        auto c = solve(et, v);
        if (!c) return std::nullopt;
        if (to_ambient(*c) != v) return std::nullopt;
        return c;
    }
};

/// A structurable tensor product C1 ⊗ C2 together with its Albert form data.
struct TensorStructurable {
    StructurableAlgebra A;
    CompositionAlgebra C1, C2;
    AlbertFormData albert;
};

inline TensorStructurable tensor_structurable(const CompositionAlgebra& C1, const CompositionAlgebra& C2,
                                              const CheckPolicy& policy = {}) {
    if (C1.alg.p != C2.alg.p) throw std::invalid_argument("tensor_structurable: modulus mismatch");
    u32 p = C1.alg.p;
    PrimeField F(p);
    size_t d1 = C1.alg.dim, d2 = C2.alg.dim, n = d1 * d2;
    Algebra T(p, n);
    for (size_t i = 0; i < d1; ++i)
        for (size_t j = 0; j < d2; ++j) {
            T.basis_names[i * d2 + j] = C1.alg.basis_names[i] + "*" + C2.alg.basis_names[j];
            for (size_t k = 0; k < d1; ++k)
                for (size_t l = 0; l < d2; ++l)
                    for (auto [r1, c1] : C1.alg.basis_product(i, k))
                        for (auto [r2, c2] : C2.alg.basis_product(j, l))
                            T.add_entry(i * d2 + j, k * d2 + l, r1 * d2 + r2, F.mul(c1, c2));
        }
    // involution = conj1 ⊗ conj2 (Kronecker product)
    Matrix inv(p, n, n);
    for (size_t i = 0; i < d1; ++i)
        for (size_t r = 0; r < d1; ++r) {
            u32 a = C1.conj_mat.at(r, i);
            if (!a) continue;
            for (size_t j = 0; j < d2; ++j)
                for (size_t s = 0; s < d2; ++s) {
                    u32 b = C2.conj_mat.at(s, j);
                    if (b) inv.at(r * d2 + s, i * d2 + j) = static_cast<u8>(F.mul(a, b));
                }
        }
    Vec unit(n, 0);
    for (size_t i = 0; i < d1; ++i)
        for (size_t j = 0; j < d2; ++j) unit[i * d2 + j] = static_cast<u8>(F.mul(C1.unit[i], C2.unit[j]));

    TensorStructurable out;
    out.C1 = C1;
    out.C2 = C2;
    out.A = make_structurable(std::move(T), std::move(inv), std::move(unit), policy);

    // embedded skew basis: S1 ⊗ 1 then 1 ⊗ S2
    size_t k1 = C1.skew.dim(), k2 = C2.skew.dim();
    AlbertFormData& al = out.albert;
    al.embed = Matrix(p, k1 + k2, n);
    al.dim1 = k1;
    for (size_t a = 0; a < k1; ++a)
        for (size_t i = 0; i < d1; ++i) {
            u32 si = C1.skew.basis.at(a, i);
            if (!si) continue;
            for (size_t j = 0; j < d2; ++j)
                if (C2.unit[j]) al.embed.at(a, i * d2 + j) = static_cast<u8>(F.mul(si, C2.unit[j]));
        }
    for (size_t b = 0; b < k2; ++b)
        for (size_t j = 0; j < d2; ++j) {
            u32 sj = C2.skew.basis.at(b, j);
            if (!sj) continue;
            for (size_t i = 0; i < d1; ++i)
                if (C1.unit[i]) al.embed.at(k1 + b, i * d2 + j) = static_cast<u8>(F.mul(sj, C1.unit[i]));
        }
    // Q = n1 on S1, -n2 on S2, no cross terms
    al.q_diag.assign(k1 + k2, 0);
    al.q_polar = Matrix(p, k1 + k2, k1 + k2);
    for (size_t a = 0; a < k1; ++a) {
        al.q_diag[a] = static_cast<u8>(C1.norm(C1.skew.basis.row_vec(a)));
        for (size_t b = a; b < k1; ++b) {
            u32 pol = C1.norm_pair(C1.skew.basis.row_vec(a), C1.skew.basis.row_vec(b));
            al.q_polar.at(a, b) = static_cast<u8>(pol);
            al.q_polar.at(b, a) = static_cast<u8>(pol);
        }
    }
    for (size_t a = 0; a < k2; ++a) {
        al.q_diag[k1 + a] = static_cast<u8>(F.neg(C2.norm(C2.skew.basis.row_vec(a))));
        for (size_t b = a; b < k2; ++b) {
            u32 pol = F.neg(C2.norm_pair(C2.skew.basis.row_vec(a), C2.skew.basis.row_vec(b)));
            al.q_polar.at(k1 + a, k1 + b) = static_cast<u8>(pol);
            al.q_polar.at(k1 + b, k1 + a) = static_cast<u8>(pol);
        }
    }
    al.sharp = Matrix(p, k1 + k2, k1 + k2);
    for (size_t a = 0; a < k1; ++a) al.sharp.at(a, a) = 1;
    for (size_t b = 0; b < k2; ++b) al.sharp.at(k1 + b, k1 + b) = static_cast<u8>(F.neg(1));

    // the embedded basis must span the skew part of A
    Subspace emb = Subspace::span(p, n, [&] {
        std::vector<Vec> rows;
        for (size_t i = 0; i < al.embed.rows; ++i) rows.push_back(al.embed.row_vec(i));
        return rows;
    }());
    if (emb != out.A.skew) throw std::logic_error("tensor_structurable: embedded S1+S2 is not the skew part");
    return out;
}

/// Verify the Albert-form identities AllQ1..AllQ5. Quadratic slots are
/// checked on the basis plus all pairwise sums (which pins the identity on
/// the whole space); multilinear slots on the basis.
inline std::vector<CheckReport> albert_identities(const TensorStructurable& TS) {
    const StructurableAlgebra& A = TS.A;
    const AlbertFormData& al = TS.albert;
    PrimeField F(A.alg.p);
    size_t m = al.sdim(), n = A.dim();
    std::vector<Vec> cands;  // coordinates in the embedded S basis
    for (size_t i = 0; i < m; ++i) cands.push_back(unit_vec(m, i));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j) cands.push_back(vec_add(F, unit_vec(m, i), unit_vec(m, j)));

    std::vector<Matrix> Lb(m), Lbsharp(m);  // for basis vectors of S
    for (size_t i = 0; i < m; ++i) {
        Lb[i] = A.alg.left_mul(al.to_ambient(unit_vec(m, i)));
        Lbsharp[i] = A.alg.left_mul(al.to_ambient(al.sharp_apply(unit_vec(m, i))));
    }
    auto L_of = [&](const Vec& coords) { return A.alg.left_mul(al.to_ambient(coords)); };

    std::vector<CheckReport> out;
    {
        CheckReport r;
        r.name = "AllQ1";
        r.checked = cands.size();
        for (size_t ci = 0; ci < cands.size(); ++ci) {
            const Vec& a = cands[ci];
            Matrix La = L_of(a), Lsharp = L_of(al.sharp_apply(a));
            Matrix expect = mat_scale(Matrix::identity(A.alg.p, n), F.neg(al.Q(a)));
            if (mat_mul(La, Lsharp) != expect || mat_mul(Lsharp, La) != expect) {
                r.passed = false;
                r.cex = Counterexample{{ci}, "candidate index"};
                break;
            }
        }
        out.push_back(std::move(r));
    }
    {
        CheckReport r;
        r.name = "AllQ2";
        r.checked = cands.size() * m;
        bool done = false;
        for (size_t ci = 0; ci < cands.size() && !done; ++ci)
            for (size_t b = 0; b < m && !done; ++b) {
                const Vec& a = cands[ci];
                Vec av = al.to_ambient(a);
                Vec bsharp = al.to_ambient(al.sharp_apply(unit_vec(m, b)));
                Vec lhs = A.alg.multiply(av, A.alg.multiply(bsharp, av));  // a(b♯a)
                Vec rhs = vec_scale(F, al.to_ambient(unit_vec(m, b)), al.Q(a));
                rhs = vec_sub(F, rhs, vec_scale(F, av, al.Q_pair(a, unit_vec(m, b))));
                if (lhs != rhs) {
                    r.passed = false;
                    r.cex = Counterexample{{ci, b}, ""};
                    done = true;
                }
            }
        out.push_back(std::move(r));
    }
    {
        CheckReport r;
        r.name = "AllQ3";
        r.checked = cands.size() * m;
        bool done = false;
        for (size_t ci = 0; ci < cands.size() && !done; ++ci)
            for (size_t b = 0; b < m && !done; ++b) {
                const Vec& a = cands[ci];
                Matrix La = L_of(a);
                Matrix lhs = mat_mul(mat_mul(La, Lbsharp[b]), La);
                Matrix rhs = mat_sub(mat_scale(Lb[b], al.Q(a)), mat_scale(La, al.Q_pair(a, unit_vec(m, b))));
                if (lhs != rhs) {
                    r.passed = false;
                    r.cex = Counterexample{{ci, b}, ""};
                    done = true;
                }
            }
        out.push_back(std::move(r));
    }
    {
        CheckReport r;
        r.name = "AllQ4";
        r.checked = m * m * m;
        std::vector<Matrix> Mab(m * m), LbLc(m * m);
        for (size_t a = 0; a < m; ++a)
            for (size_t b = 0; b < m; ++b) Mab[a * m + b] = mat_mul(mat_mul(Lb[a], Lbsharp[b]), Lb[a]);
        for (size_t b = 0; b < m; ++b)
            for (size_t c = 0; c < m; ++c) LbLc[b * m + c] = mat_mul(Lb[b], Lbsharp[c]);
        bool done = false;
        for (size_t a = 0; a < m && !done; ++a)
            for (size_t b = 0; b < m && !done; ++b) {
                u32 qa = al.Q(unit_vec(m, a));
                u32 qab = al.Q_pair(unit_vec(m, a), unit_vec(m, b));
                for (size_t c = 0; c < m; ++c) {
                    Matrix lhs = mat_mul(Mab[a * m + b], Lbsharp[c]);
                    Matrix rhs = mat_sub(mat_scale(LbLc[b * m + c], qa), mat_scale(LbLc[a * m + c], qab));
                    if (lhs != rhs) {
                        r.passed = false;
                        r.cex = Counterexample{{a, b, c}, ""};
                        done = true;
                        break;
                    }
                }
            }
        out.push_back(std::move(r));
    }
    {
        CheckReport r;
        r.name = "AllQ5";
        r.checked = cands.size() * cands.size();
        bool done = false;
        for (size_t ci = 0; ci < cands.size() && !done; ++ci)
            for (size_t cj = 0; cj < cands.size() && !done; ++cj) {
                const Vec& a = cands[ci];
                const Vec& b = cands[cj];
                Vec x = A.alg.multiply(al.to_ambient(a), al.to_ambient(al.sharp_apply(b)));  // a b♯
                Vec lhs = A.alg.multiply(x, x);
                lhs = vec_add(F, lhs, vec_scale(F, x, al.Q_pair(a, b)));
                lhs = vec_add(F, lhs, vec_scale(F, A.unit, F.mul(al.Q(a), al.Q(b))));
                if (!is_zero(lhs)) {
                    r.passed = false;
                    r.cex = Counterexample{{ci, cj}, ""};
                    done = true;
                }
            }
        out.push_back(std::move(r));
    }
    return out;
}

/// Deterministic search for a skew element with invertible left
/// multiplication. For tensor algebras: first S-basis vector or pairwise sum
/// with Q ≠ 0 (then L_s is invertible by AllQ1). Generic: basis vectors,
/// pairwise sums, then seeded random skew vectors, testing rank directly.
inline std::optional<Vec> choose_invertible_skew(const InvolutiveAlgebra& A, u64 seed = kDefaultSeed,
                                                 size_t random_bound = 512) {
    PrimeField F(A.alg.p);
    size_t k = A.skew.dim(), n = A.alg.dim;
    auto try_s = [&](const Vec& s) -> bool { return rank(A.alg.left_mul(s)) == n; };
    for (size_t i = 0; i < k; ++i) {
        Vec s = A.skew.basis.row_vec(i);
        if (try_s(s)) return s;
    }
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j) {
            Vec s = vec_add(F, A.skew.basis.row_vec(i), A.skew.basis.row_vec(j));
            if (try_s(s)) return s;
        }
    u64 st = seed;
    for (size_t t = 0; t < random_bound && k > 0; ++t) {
        Vec c(k);
        for (auto& x : c) {
            st = splitmix64(st);
            x = static_cast<u8>(st % A.alg.p);
        }
        Vec s = A.skew.from_coords(c);
        if (!is_zero(s) && try_s(s)) return s;
    }
    return std::nullopt;
}

inline std::optional<Vec> choose_invertible_skew(const TensorStructurable& TS) {
    size_t m = TS.albert.sdim(), n = TS.A.dim();
    PrimeField F(TS.A.alg.p);
    auto found = [&](const Vec& coords) -> std::optional<Vec> {
        if (TS.albert.Q(coords) == 0) return std::nullopt;
        Vec s = TS.albert.to_ambient(coords);
        if (rank(TS.A.alg.left_mul(s)) != n) throw std::logic_error("choose_invertible_skew: Q != 0 but L_s singular");
        return s;
    };
    for (size_t i = 0; i < m; ++i)
        if (auto s = found(unit_vec(m, i))) return s;
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j)
            if (auto s = found(vec_add(F, unit_vec(m, i), unit_vec(m, j)))) return s;
    return std::nullopt;
}

/// M_{a,b} = L_a L_{b♯} - L_b L_{a♯} for a, b in S-coordinates.
inline Matrix m_operator(const StructurableAlgebra& A, const AlbertFormData& al, const Vec& a, const Vec& b) {
    Matrix La = A.alg.left_mul(al.to_ambient(a));
    Matrix Lb = A.alg.left_mul(al.to_ambient(b));
    Matrix Lash = A.alg.left_mul(al.to_ambient(al.sharp_apply(a)));
    Matrix Lbsh = A.alg.left_mul(al.to_ambient(al.sharp_apply(b)));
    return mat_sub(mat_mul(La, Lbsh), mat_mul(Lb, Lash));
}

/// Span of M_{a,b} over pairs from the given S-coordinate vectors.
inline Subspace m_span(const StructurableAlgebra& A, const AlbertFormData& al, const std::vector<Vec>& svecs) {
    size_t n = A.dim();
    SpanBuilder sb(A.alg.p, n * n);
    for (size_t i = 0; i < svecs.size(); ++i)
        for (size_t j = i + 1; j < svecs.size(); ++j) sb.insert(flatten(m_operator(A, al, svecs[i], svecs[j])));
    return Subspace::from_builder(sb);
}

/// eq:Mab_sigma: M_{a,b}^δ(c) = 2(Q(a,c) b - Q(b,c) a) on S.
inline CheckReport check_m_delta(const StructurableAlgebra& A, const AlbertFormData& al) {
    PrimeField F(A.alg.p);
    size_t m = al.sdim();
    CheckReport r;
    r.name = "Mab_delta";
    r.checked = m * m * m;
    for (size_t a = 0; a < m; ++a)
        for (size_t b = 0; b < m; ++b) {
            Matrix Md = t_delta(A, m_operator(A, al, unit_vec(m, a), unit_vec(m, b)));
            for (size_t c = 0; c < m; ++c) {
                Vec lhs = Md.apply(al.to_ambient(unit_vec(m, c)));
                Vec rhs = vec_scale(F, al.to_ambient(unit_vec(m, a)),
                                    F.neg(F.mul(2, al.Q_pair(unit_vec(m, b), unit_vec(m, c)))));
                rhs = vec_add(F, rhs,
                              vec_scale(F, al.to_ambient(unit_vec(m, b)),
                                        F.mul(2, al.Q_pair(unit_vec(m, a), unit_vec(m, c)))));
                if (lhs != rhs) {
                    r.passed = false;
                    r.cex = Counterexample{{a, b, c}, ""};
                    return r;
                }
            }
        }
    return r;
}

/// Clifford image of Φ(a) = L_a L_s on S' = (F t)^⊥: dimensions of the
/// generated unital algebra (full) and of the one generated by pairwise
/// products (even part), plus the Clifford/Lemma 6.8 relations.
struct CliffordImage {
    size_t full_dim = 0;
    size_t even_dim = 0;
    std::vector<CheckReport> reports;
};

inline CliffordImage clifford_image(const TensorStructurable& TS, const Vec& s_ambient, bool compute_full = true,
                                    bool compute_even = true) {
    const StructurableAlgebra& A = TS.A;
    const AlbertFormData& al = TS.albert;
    PrimeField F(A.alg.p);
    size_t n = A.dim(), m = al.sdim();

    auto s_coords_opt = al.from_ambient(s_ambient);
    if (!s_coords_opt) throw std::invalid_argument("clifford_image: s is not in the embedded S");
    Vec s = *s_coords_opt;
    u32 qs = al.Q(s);
    if (qs == 0) throw std::invalid_argument("clifford_image: Q(s) = 0");
    // t = -s♯ / Q(s)
    Vec t = vec_scale(F, al.sharp_apply(s), F.neg(F.inv(qs)));
    Matrix Ls = A.alg.left_mul(al.to_ambient(s));
    Matrix Lt = A.alg.left_mul(al.to_ambient(t));
    CliffordImage out;
    {
        CheckReport r;
        r.name = "LsLt_identity";
        r.checked = 2;
        r.passed = mat_mul(Ls, Lt) == Matrix::identity(A.alg.p, n) && mat_mul(Lt, Ls) == Matrix::identity(A.alg.p, n);
        out.reports.push_back(r);
    }
    // S' = Q-orthogonal complement of t in S
    Matrix ortho(A.alg.p, 1, m);
    for (size_t j = 0; j < m; ++j) ortho.at(0, j) = static_cast<u8>(al.Q_pair(t, unit_vec(m, j)));
    Matrix sprime = kernel_basis(ortho);  // rows = S'-basis in S-coords
    size_t sp = sprime.rows;

    std::vector<Matrix> Phi(sp);
    for (size_t i = 0; i < sp; ++i) Phi[i] = mat_mul(A.alg.left_mul(al.to_ambient(sprime.row_vec(i))), Ls);

    {
        CheckReport r;
        r.name = "clifford_relation";
        r.checked = sp * sp;
        for (size_t i = 0; i < sp && r.passed; ++i)
            for (size_t j = 0; j < sp; ++j) {
                // Φ(a)Φ(b) + Φ(b)Φ(a) = Q~(a,b) id, Q~(a,b) = -Q(a,b)Q(s)
                u32 qt = F.neg(F.mul(al.Q_pair(sprime.row_vec(i), sprime.row_vec(j)), qs));
                Matrix lhs = anticommutator(Phi[i], Phi[j]);
                if (lhs != mat_scale(Matrix::identity(A.alg.p, n), qt)) {
                    r.passed = false;
                    r.cex = Counterexample{{i, j}, ""};
                    break;
                }
            }
        out.reports.push_back(r);
    }
    {
        CheckReport r;
        r.name = "phi_commutator_is_QsM";
        r.checked = sp * sp;
        for (size_t i = 0; i < sp && r.passed; ++i)
            for (size_t j = 0; j < sp; ++j) {
                Matrix lhs = commutator(Phi[i], Phi[j]);
                Matrix rhs = mat_scale(m_operator(A, al, sprime.row_vec(i), sprime.row_vec(j)), qs);
                if (lhs != rhs) {
                    r.passed = false;
                    r.cex = Counterexample{{i, j}, ""};
                    break;
                }
            }
        out.reports.push_back(r);
    }
    if (compute_full) out.full_dim = assoc_subalgebra_generated(Phi, true).dim;
    if (compute_even) {
        std::vector<Matrix> gens;
        for (size_t i = 0; i < sp; ++i)
            for (size_t j = 0; j < sp; ++j)
                if (i != j) gens.push_back(mat_mul(Phi[i], Phi[j]));
        out.even_dim = assoc_subalgebra_generated(gens, true).dim;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Hermitian-form structurable algebras and the Smirnov algebra
// ---------------------------------------------------------------------------

/// Structurable algebra of a hermitian form: A = E ⊕ W with
/// (e1+x1)(e2+x2) = (e1 e2 + h(x2,x1)) + (ē1 ∘ x2 + e2 ∘ x1).
/// `action[a]` is the matrix of w ↦ e_a ∘ w, `h(x,y)` is given on basis
/// pairs as vectors in E.
inline StructurableAlgebra hermitian_form_structurable(const InvolutiveAlgebra& E, size_t wdim,
                                                       const std::vector<Matrix>& action,
                                                       const std::vector<std::vector<Vec>>& h,
                                                       const CheckPolicy& policy = {}) {
    u32 p = E.alg.p;
    PrimeField F(p);
    size_t de = E.alg.dim;
    if (!E.unit) throw std::invalid_argument("hermitian_form_structurable: E must be unital");
    // E associative
    for (size_t i = 0; i < de; ++i)
        for (size_t j = 0; j < de; ++j)
            for (size_t k = 0; k < de; ++k)
                if (!is_zero(E.alg.associator(unit_vec(de, i), unit_vec(de, j), unit_vec(de, k))))
                    throw std::invalid_argument("hermitian_form_structurable: E is not associative");
    // module axioms
    std::vector<Matrix> act_mats = action;
    if (wdim == 0) act_mats.assign(de, Matrix(p, 0, 0));
    if (act_mats.size() != de)
        throw std::invalid_argument("hermitian_form_structurable: need one action matrix per E basis");
    const std::vector<Matrix>& action_ = act_mats;
    auto act_of = [&](const Vec& e) {
        Matrix m(p, wdim, wdim);
        for (size_t a = 0; a < de; ++a)
            if (e[a]) m = mat_add(m, mat_scale(action_[a], e[a]));
        return m;
    };
    if (act_of(*E.unit) != Matrix::identity(p, wdim))
        throw std::invalid_argument("hermitian_form_structurable: unit does not act as identity");
    for (size_t i = 0; i < de; ++i)
        for (size_t j = 0; j < de; ++j) {
            Vec prod(de, 0);
            for (auto [k, c] : E.alg.basis_product(i, j)) prod[k] = c;
            if (mat_mul(action_[i], action_[j]) != act_of(prod))
                throw std::invalid_argument("hermitian_form_structurable: action is not a homomorphism");
        }
    // h hermitian and E-sesquilinear
    for (size_t x = 0; x < wdim; ++x)
        for (size_t y = 0; y < wdim; ++y)
            if (h[y][x] != E.inv.apply(h[x][y]))
                throw std::invalid_argument("hermitian_form_structurable: h(y,x) != conj h(x,y)");
    auto h_of = [&](const Vec& x, const Vec& y) {
        Vec r(de, 0);
        for (size_t i = 0; i < wdim; ++i) {
            if (!x[i]) continue;
            for (size_t j = 0; j < wdim; ++j)
                if (y[j]) vec_add_scaled(F, r, h[i][j], F.mul(x[i], y[j]));
        }
        return r;
    };
    for (size_t a = 0; a < de; ++a)
        for (size_t x = 0; x < wdim; ++x)
            for (size_t y = 0; y < wdim; ++y) {
                Vec lhs = h_of(action_[a].col_vec(x), unit_vec(wdim, y));
                Vec rhs = E.alg.multiply(unit_vec(de, a), h[x][y]);
                if (lhs != rhs) throw std::invalid_argument("hermitian_form_structurable: h(e∘x, y) != e h(x,y)");
            }

    size_t n = de + wdim;
    Algebra A(p, n);
    for (size_t i = 0; i < de; ++i) A.basis_names[i] = "E" + std::to_string(i);
    for (size_t i = 0; i < wdim; ++i) A.basis_names[de + i] = "w" + std::to_string(i);
    for (size_t i = 0; i < de; ++i)
        for (size_t j = 0; j < de; ++j)
            for (auto [k, c] : E.alg.basis_product(i, j)) A.add_entry(i, j, k, c);
    for (size_t i = 0; i < de; ++i) {
        Vec ebar = E.inv.apply(unit_vec(de, i));
        Matrix act_ebar = act_of(ebar);
        for (size_t x = 0; x < wdim; ++x) {
            // (e,0)(0,x) = ē ∘ x
            Vec w = act_ebar.col_vec(x);
            for (size_t r = 0; r < wdim; ++r)
                if (w[r]) A.add_entry(i, de + x, de + r, w[r]);
            // (0,x)(e,0) = e ∘ x
            Vec w2 = action_[i].col_vec(x);
            for (size_t r = 0; r < wdim; ++r)
                if (w2[r]) A.add_entry(de + x, i, de + r, w2[r]);
        }
    }
    for (size_t x = 0; x < wdim; ++x)
        for (size_t y = 0; y < wdim; ++y) {
            // (0,x)(0,y) = h(y,x)
            const Vec& e = h[y][x];
            for (size_t r = 0; r < de; ++r)
                if (e[r]) A.add_entry(de + x, de + y, r, e[r]);
        }
    Matrix inv(p, n, n);
    for (size_t i = 0; i < de; ++i)
        for (size_t r = 0; r < de; ++r) inv.at(r, i) = E.inv.at(r, i);
    for (size_t x = 0; x < wdim; ++x) inv.at(de + x, de + x) = 1;
    Vec unit(n, 0);
    for (size_t i = 0; i < de; ++i) unit[i] = (*E.unit)[i];
    return make_structurable(std::move(A), std::move(inv), std::move(unit), policy);
}

/// The 35-dimensional Smirnov algebra T(C) ⊂ C ⊗ C: kernel of the map
/// S²(C) → F, x⊗x ↦ n(x), with product and involution inherited from C ⊗ C.
inline InvolutiveAlgebra smirnov_algebra(const CompositionAlgebra& C) {
    if (C.alg.dim != 8) throw std::invalid_argument("smirnov_algebra: need the 8-dimensional composition algebra");
    u32 p = C.alg.p;
    PrimeField F(p);
    const size_t d = 8, n2 = 64;

    // tensor product algebra C ⊗ C (no involution verification needed here)
    Algebra TT(p, n2);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j)
            for (size_t k = 0; k < d; ++k)
                for (size_t l = 0; l < d; ++l)
                    for (auto [r1, c1] : C.alg.basis_product(i, k))
                        for (auto [r2, c2] : C.alg.basis_product(j, l))
                            TT.add_entry(i * d + j, k * d + l, r1 * d + r2, F.mul(c1, c2));

    // symmetric tensors: w_ii = e_i⊗e_i, w_ij = e_i⊗e_j + e_j⊗e_i (i<j)
    std::vector<Vec> sym;      // in tensor coords
    std::vector<u32> phi_val;  // the norm map on that basis
    for (size_t i = 0; i < d; ++i)
        for (size_t j = i; j < d; ++j) {
            Vec v(n2, 0);
            if (i == j) {
                v[i * d + i] = 1;
                phi_val.push_back(C.norm_diag[i]);
            } else {
                v[i * d + j] = 1;
                v[j * d + i] = 1;
                phi_val.push_back(C.norm_polar.at(i, j));
            }
            sym.push_back(std::move(v));
        }
    // kernel of phi inside the 36-dim symmetric coordinates
    Matrix phi(p, 1, sym.size());
    for (size_t i = 0; i < sym.size(); ++i) phi.at(0, i) = static_cast<u8>(phi_val[i] % p);
    Matrix ker = kernel_basis(phi);  // 35 x 36
    if (ker.rows != 35) throw std::logic_error("smirnov_algebra: kernel dimension is not 35");

    // embed T(C) basis into tensor coordinates
    Matrix embed(p, 35, n2);
    for (size_t r = 0; r < 35; ++r) {
        Vec v(n2, 0);
        for (size_t c = 0; c < sym.size(); ++c)
            if (ker.at(r, c)) row_axpy(p, v.data(), sym[c].data(), ker.at(r, c), n2);
        std::copy(v.begin(), v.end(), embed.row(r));
    }
    Matrix embed_t = embed.transpose();
    auto coords = [&](const Vec& v) {
        auto c = solve(embed_t, v);
        if (!c) throw std::logic_error("smirnov_algebra: product leaves T(C)");
        // verify (solve() returns some solution; embed has full row rank 35)
        Vec rec(n2, 0);
        for (size_t i = 0; i < 35; ++i)
            if ((*c)[i]) row_axpy(p, rec.data(), embed.row(i), (*c)[i], n2);
        if (rec != v) throw std::logic_error("smirnov_algebra: product leaves T(C)");
        return *c;
    };

    InvolutiveAlgebra out;
    out.alg = Algebra(p, 35);
    for (size_t i = 0; i < 35; ++i)
        for (size_t j = 0; j < 35; ++j) {
            Vec prod = TT.multiply(embed.row_vec(i), embed.row_vec(j));
            out.alg.set_product(i, j, coords(prod));
        }
    // involution: conj ⊗ conj restricted
    out.inv = Matrix(p, 35, 35);
    for (size_t j = 0; j < 35; ++j) {
        Vec v = embed.row_vec(j);
        Vec w(n2, 0);
        for (size_t i = 0; i < d; ++i)
            for (size_t k = 0; k < d; ++k) {
                u32 c = v[i * d + k];
                if (!c) continue;
                // conj(e_i) ⊗ conj(e_k)
                for (size_t r1 = 0; r1 < d; ++r1) {
                    u32 a = C.conj_mat.at(r1, i);
                    if (!a) continue;
                    for (size_t r2 = 0; r2 < d; ++r2) {
                        u32 b = C.conj_mat.at(r2, k);
                        if (b) w[r1 * d + r2] = static_cast<u8>((w[r1 * d + r2] + c * a % p * b) % p);
                    }
                }
            }
        Vec cc = coords(w);
        for (size_t r = 0; r < 35; ++r) out.inv.at(r, j) = cc[r];
    }
    out.unit = std::nullopt;  // 1⊗1 has norm-map value 1, so T(C) is not unital
    compute_skew_herm(out);
    return out;
}

}  // namespace char3

#endif
