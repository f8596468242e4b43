#ifndef CHAR3_SEMISIMPLIFY_HPP
#define CHAR3_SEMISIMPLIFY_HPP

#include "char3/jordan.hpp"
#include "char3/super.hpp"

namespace char3 {

/// A Lie algebra with a nilpotent derivation δ, δ^p = 0.
struct SemisimplifyInput {
    Algebra L;
    Matrix delta;
    u32 p;
};

struct SemisimplifyResult {
    LieSuperalgebra super;
    std::vector<Vec> even_rep;  // the length-1 chain vectors, in order
    std::vector<Vec> odd_rep;   // the canonical-complement basis of L₁̄
};

/// The semisimplification recipe: L^ss = L₀̄ ⊕ L₁̄ with L₀̄ the span of the
/// length-1 chains, L₁̄ the canonical complement of δ(L_{p-1}) in L_{p-1},
/// and the bracket given by the projections of eq:recipe.
inline SemisimplifyResult semisimplify(const SemisimplifyInput& inp, const CheckPolicy& policy = {}) {
    const Algebra& L = inp.L;
    u32 p = inp.p;
    size_t n = L.dim;
    if (L.p != p || inp.delta.p != p) throw std::invalid_argument("semisimplify: modulus mismatch");
    if (!L.is_anticommutative()) throw std::invalid_argument("semisimplify: L is not anticommutative");
    {
        CheckReport jac = check_jacobi(L, policy);
        if (!jac.passed) throw std::invalid_argument("semisimplify: Jacobi fails: " + jac.summary());
    }
    if (!is_derivation(L, inp.delta)) throw std::invalid_argument("semisimplify: delta is not a derivation");

    JordanChainDecomposition jd = nilpotent_jordan_chains(inp.delta, p);  // checks delta^p = 0

    // blocks of the decomposition eq:L1Lp
    std::vector<Vec> even_basis;                  // length-1 chain vectors
    std::vector<Vec> rest;                        // chains of length != 1, p-1
    SpanBuilder pm1_span(p, n);                   // L_{p-1}
    SpanBuilder dpm1_span(p, n);                  // δ(L_{p-1})
    for (const auto& ch : jd.chains) {
        if (ch.size() == 1) {
            even_basis.push_back(ch[0]);
        } else if (ch.size() == p - 1) {
            for (const auto& v : ch) pm1_span.insert(v);
            for (size_t i = 0; i + 1 < ch.size(); ++i) dpm1_span.insert(inp.delta.apply(ch[i]));
        } else {
            for (const auto& v : ch) rest.push_back(v);
        }
    }
    Subspace pm1 = Subspace::from_builder(pm1_span);
    Subspace dpm1 = Subspace::from_builder(dpm1_span);
    Subspace odd_sub = canonical_complement(dpm1, pm1);

    size_t ne = even_basis.size(), no = odd_sub.dim();
    size_t q = ne + no;
    // decomposition matrix: [even | odd | δ(L_{p-1}) | rest]
    Matrix M(p, n, n);
    {
        size_t c = 0;
        for (const auto& v : even_basis) {
            for (size_t r = 0; r < n; ++r) M.at(r, c) = v[r];
            ++c;
        }
        for (size_t i = 0; i < no; ++i) {
            for (size_t r = 0; r < n; ++r) M.at(r, c) = odd_sub.basis.at(i, r);
            ++c;
        }
        for (size_t i = 0; i < dpm1.dim(); ++i) {
            for (size_t r = 0; r < n; ++r) M.at(r, c) = dpm1.basis.at(i, r);
            ++c;
        }
        for (const auto& v : rest) {
            for (size_t r = 0; r < n; ++r) M.at(r, c) = v[r];
            ++c;
        }
        if (c != n) throw std::logic_error("semisimplify: decomposition does not fill the space");
    }
    auto Minv_opt = inverse(M);
    if (!Minv_opt) throw std::logic_error("semisimplify: decomposition basis is singular");
    const Matrix& Minv = *Minv_opt;

    Matrix delta_pow = mat_pow(inp.delta, p - 2);

    auto proj_even = [&](const Vec& w) {
        Vec c = Minv.apply(w);
        Vec out(q, 0);
        for (size_t k = 0; k < ne; ++k) out[k] = c[k];
        return out;
    };
    auto proj_odd = [&](const Vec& w) {
        Vec c = Minv.apply(w);
        Vec out(q, 0);
        for (size_t k = 0; k < no; ++k) out[ne + k] = c[ne + k];
        return out;
    };
    auto basis_vec = [&](size_t i) { return i < ne ? even_basis[i] : odd_sub.basis.row_vec(i - ne); };

    LieSuperalgebra S(p, q);
    for (size_t i = 0; i < ne; ++i) {
        S.parity[i] = 0;
        S.basis_names[i] = "ev" + std::to_string(i);
    }
    for (size_t i = 0; i < no; ++i) {
        S.parity[ne + i] = 1;
        S.basis_names[ne + i] = "od" + std::to_string(i);
    }
    for (size_t i = 0; i < q; ++i)
        for (size_t j = 0; j < q; ++j) {
            bool oi = i >= ne, oj = j >= ne;
            Vec w;
            if (!oi && !oj)
                w = proj_even(L.multiply(basis_vec(i), basis_vec(j)));
            else if (oi && oj)
                w = proj_even(L.multiply(basis_vec(i), delta_pow.apply(basis_vec(j))));
            else
                w = proj_odd(L.multiply(basis_vec(i), basis_vec(j)));
            S.set_entry_vec(i, j, w);
        }
    auto weak = check_weak(S, policy);
    if (!all_passed(weak)) {
        std::string msg = "semisimplify: output is not a weak Lie superalgebra:";
        for (const auto& r : weak)
            if (!r.passed) msg += " " + r.summary();
        throw std::logic_error(msg);
    }
    if (!check_cube_additivity(S, 10000, policy.seed).passed)
        throw std::logic_error("semisimplify: cube map is not additive");
    SemisimplifyResult out;
    out.super = std::move(S);
    out.even_rep = even_basis;
    for (size_t i = 0; i < no; ++i) out.odd_rep.push_back(odd_sub.basis.row_vec(i));
    return out;
}

/// Corollary shortcut: L^ss(T) with even part S(T,T), odd part T,
/// [d,x] = d(x) and [x,y] = S(x,y).
inline LieSuperalgebra direct_from_jternary(const JTernaryPackage& pkg, const CheckPolicy& policy = {}) {
    size_t n = pkg.T.dim, r = pkg.sdim();
    u32 p = pkg.T.p;
    PrimeField F(p);
    LieSuperalgebra S(p, r + n);
    for (size_t d = 0; d < r; ++d) {
        S.parity[d] = 0;
        S.basis_names[d] = "S" + std::to_string(d);
    }
    for (size_t i = 0; i < n; ++i) {
        S.parity[r + i] = 1;
        S.basis_names[r + i] = pkg.T.basis_names[i];
    }
    for (size_t d = 0; d < r; ++d)
        for (size_t e = 0; e < r; ++e) {
            auto c = pkg.S_span.coords(flatten(commutator(pkg.s_basis[d], pkg.s_basis[e])));
            if (!c) throw std::logic_error("direct_from_jternary: [S,S] not in S(T,T)");
            for (size_t k = 0; k < r; ++k)
                if ((*c)[k]) S.add_entry(d, e, k, (*c)[k]);
        }
    for (size_t d = 0; d < r; ++d)
        for (size_t i = 0; i < n; ++i) {
            Vec img = pkg.s_basis[d].col_vec(i);
            for (size_t k = 0; k < n; ++k)
                if (img[k]) {
                    S.add_entry(d, r + i, r + k, img[k]);
                    S.add_entry(r + i, d, r + k, F.neg(img[k]));
                }
        }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            const Vec& sc = pkg.s_coords[i][j];
            for (size_t k = 0; k < r; ++k)
                if (sc[k]) S.add_entry(r + i, r + j, k, sc[k]);
        }
    auto weak = check_weak(S, policy);
    if (!all_passed(weak)) throw std::logic_error("direct_from_jternary: weak axioms failed");
    if (!check_cube_additivity(S, 10000, policy.seed).passed)
        throw std::logic_error("direct_from_jternary: cube map is not additive");
    return S;
}

/// Cor 4.2 equivalence: semisimplify(L(T), ad_{F⊗id}) has bit-exact
/// structure constants with direct_from_jternary(T) under the canonical
/// identifications (p⊗x ↔ x, S(T,T) identical).
inline bool recipe_equivalence(const JTernaryPackage& pkg, const CheckPolicy& policy = {}) {
    LTAlgebra lt = build_LT(pkg, policy);
    const LTBlocks& B = lt.blocks;
    size_t N = lt.L.dim();
    SemisimplifyInput inp{lt.L.alg, lie_detail::ad_matrix(lt.L.alg, lt.L.F), pkg.T.p};
    SemisimplifyResult ss = semisimplify(inp, policy);
    LieSuperalgebra direct = direct_from_jternary(pkg, policy);
    if (ss.super.dim != direct.dim || ss.super.parity != direct.parity) return false;
    // the canonical choices must give exactly the S-block unit vectors (even)
    // and the p⊗T-block unit vectors (odd), realizing p⊗x ↔ x
    if (ss.even_rep.size() != pkg.sdim() || ss.odd_rep.size() != pkg.T.dim) return false;
    for (size_t k = 0; k < ss.even_rep.size(); ++k)
        if (ss.even_rep[k] != unit_vec(N, B.s0() + k)) return false;
    for (size_t i = 0; i < ss.odd_rep.size(); ++i)
        if (ss.odd_rep[i] != unit_vec(N, B.p0() + i)) return false;
    for (size_t i = 0; i < ss.super.dim; ++i)
        for (size_t j = 0; j < ss.super.dim; ++j) {
            Vec a(ss.super.dim, 0), b(ss.super.dim, 0);
            for (auto [k, c] : ss.super.basis_bracket(i, j)) a[k] = c;
            for (auto [k, c] : direct.basis_bracket(i, j)) b[k] = c;
            if (a != b) return false;
        }
    return true;
}

}  // namespace char3

#endif
