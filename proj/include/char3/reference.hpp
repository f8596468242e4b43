#ifndef CHAR3_REFERENCE_HPP
#define CHAR3_REFERENCE_HPP

#include "char3/semisimplify.hpp"

namespace char3 {

/// Center of a Lie superalgebra as a subspace of its coordinate space.
inline Subspace super_center(const LieSuperalgebra& L) {
    size_t n = L.dim;
    Matrix m(L.p, n * n, n);
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < n; ++i)
            for (auto [k, c] : L.basis_bracket(i, j)) m.at(j * n + k, i) = c;
    Matrix kb = kernel_basis(m);
    SpanBuilder sb(L.p, n);
    for (size_t r = 0; r < kb.rows; ++r) sb.insert(kb.row_vec(r));
    return Subspace::from_builder(sb);
}

namespace ref_detail {

/// Lie superalgebra from an independent list of (matrix, parity) basis
/// elements of gl(V) closed under the superbracket.
inline LieSuperalgebra super_from_matrix_basis(u32 p, size_t vdim, const std::vector<Matrix>& ops,
                                               const std::vector<u8>& parity,
                                               const std::vector<std::string>& names) {
    size_t k = ops.size();
    Matrix B(p, vdim * vdim, k);
    for (size_t c = 0; c < k; ++c) {
        Vec f = flatten(ops[c]);
        for (size_t r = 0; r < f.size(); ++r) B.at(r, c) = f[r];
    }
    if (rank(B) != k) throw std::invalid_argument("super_from_matrix_basis: operators are dependent");
    LieSuperalgebra L(p, k);
    L.parity = parity;
    L.basis_names = names;
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) {
            Matrix br = (parity[i] && parity[j]) ? anticommutator(ops[i], ops[j]) : commutator(ops[i], ops[j]);
            auto c = solve(B, flatten(br));
            if (!c) throw std::logic_error("super_from_matrix_basis: bracket leaves the span");
            L.set_entry_vec(i, j, *c);
        }
    return L;
}

/// osp(X|Y, b) with b = I_m on X and sign·(standard skew) on Y, spanned by
/// the operators Λ_{u,v} = u b(v,·) - (-1)^{|u||v|} v b(u,·).
inline LieSuperalgebra osp_superalgebra(u32 p, size_t m, size_t r2, int sign_o) {
    if (r2 % 2 != 0 || r2 == 0) throw std::invalid_argument("osp: odd-part dimension must be even and positive");
    PrimeField F(p);
    size_t n = m + r2, r = r2 / 2;
    // b as a Gram matrix
    Matrix b(p, n, n);
    for (size_t i = 0; i < m; ++i) b.at(i, i) = 1;
    u32 s = sign_o == 1 ? 1 : F.neg(1);
    for (size_t a = 0; a < r; ++a) {
        b.at(m + a, m + r + a) = static_cast<u8>(s);
        b.at(m + r + a, m + a) = static_cast<u8>(F.neg(s));
    }
    auto par = [&](size_t u) { return static_cast<u8>(u >= m ? 1 : 0); };
    auto lambda = [&](size_t u, size_t v) {
        // Λ_{u,v} = e_u b(e_v, ·) - (-1)^{|u||v|} e_v b(e_u, ·)
        Matrix op(p, n, n);
        for (size_t c = 0; c < n; ++c) {
            u32 bv = b.at(v, c), bu = b.at(u, c);
            if (bv) op.at(u, c) = static_cast<u8>(F.add(op.at(u, c), bv));
            if (bu) {
                u32 coeff = (par(u) && par(v)) ? bu : F.neg(bu);
                op.at(v, c) = static_cast<u8>(F.add(op.at(v, c), coeff));
            }
        }
        return op;
    };
    std::vector<Matrix> ops;
    std::vector<u8> parity;
    std::vector<std::string> names;
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j) {
            ops.push_back(lambda(i, j));
            parity.push_back(0);
            names.push_back("L(x" + std::to_string(i) + ",x" + std::to_string(j) + ")");
        }
    for (size_t a = 0; a < r2; ++a)
        for (size_t c = a; c < r2; ++c) {
            ops.push_back(lambda(m + a, m + c));
            parity.push_back(0);
            names.push_back("L(y" + std::to_string(a) + ",y" + std::to_string(c) + ")");
        }
    for (size_t i = 0; i < m; ++i)
        for (size_t a = 0; a < r2; ++a) {
            ops.push_back(lambda(i, m + a));
            parity.push_back(1);
            names.push_back("L(x" + std::to_string(i) + ",y" + std::to_string(a) + ")");
        }
    return super_from_matrix_basis(p, n, ops, parity, names);
}

}  // namespace ref_detail

enum class RefKind { gl, sl, psl, osp };

/// gl(m|n), sl(m|n), psl(m|n) and osp(m|n) (n even) over GF(p).
inline LieSuperalgebra build_reference(RefKind kind, size_t m, size_t n, u32 p) {
    PrimeField F(p);
    if (kind == RefKind::osp) return ref_detail::osp_superalgebra(p, m, n, +1);
    size_t v = m + n;
    auto par = [&](size_t u) { return static_cast<u8>(u >= m ? 1 : 0); };
    auto unit_mat = [&](size_t u, size_t w) {
        Matrix e(p, v, v);
        e.at(u, w) = 1;
        return e;
    };
    std::vector<Matrix> ops;
    std::vector<u8> parity;
    std::vector<std::string> names;
    auto push = [&](size_t u, size_t w) {
        ops.push_back(unit_mat(u, w));
        parity.push_back(par(u) ^ par(w));
        names.push_back("E" + std::to_string(u) + "_" + std::to_string(w));
    };
    if (kind == RefKind::gl) {
        for (size_t u = 0; u < v; ++u)
            for (size_t w = 0; w < v; ++w)
                if (!(par(u) ^ par(w))) push(u, w);
        for (size_t u = 0; u < m; ++u)
            for (size_t w = m; w < v; ++w) push(u, w);
        for (size_t u = m; u < v; ++u)
            for (size_t w = 0; w < m; ++w) push(u, w);
        return ref_detail::super_from_matrix_basis(p, v, ops, parity, names);
    }
    // sl: off-diagonal even + supertrace-zero diagonal, then the odd part
    for (size_t u = 0; u < v; ++u)
        for (size_t w = 0; w < v; ++w)
            if (u != w && !(par(u) ^ par(w))) push(u, w);
    {
        Matrix str(p, 1, v);
        for (size_t u = 0; u < v; ++u) str.at(0, u) = static_cast<u8>(par(u) ? F.neg(1) : 1);
        Matrix kb = kernel_basis(str);
        for (size_t rr = 0; rr < kb.rows; ++rr) {
            Matrix d(p, v, v);
            for (size_t u = 0; u < v; ++u) d.at(u, u) = kb.at(rr, u);
            ops.push_back(d);
            parity.push_back(0);
            names.push_back("D" + std::to_string(rr));
        }
    }
    for (size_t u = 0; u < m; ++u)
        for (size_t w = m; w < v; ++w) push(u, w);
    for (size_t u = m; u < v; ++u)
        for (size_t w = 0; w < m; ++w) push(u, w);
    LieSuperalgebra sl = ref_detail::super_from_matrix_basis(p, v, ops, parity, names);
    if (kind == RefKind::sl) return sl;
    return quotient(sl, super_center(sl));
}

/// Bracket-preserving bijection check for superalgebras: M columns are the
/// images of the source basis.
inline CheckReport check_super_map(const LieSuperalgebra& src, const LieSuperalgebra& dst, const Matrix& M,
                                   const std::string& name) {
    CheckReport r;
    r.name = name;
    r.checked = src.dim * src.dim;
    if (src.dim != dst.dim || !inverse(M)) {
        r.passed = false;
        r.cex = Counterexample{{}, "map is not bijective"};
        return r;
    }
    // parity preservation
    for (size_t j = 0; j < src.dim; ++j)
        for (size_t i = 0; i < dst.dim; ++i)
            if (M.at(i, j) && dst.parity[i] != src.parity[j]) {
                r.passed = false;
                r.cex = Counterexample{{j}, "parity not preserved"};
                return r;
            }
    for (size_t i = 0; i < src.dim && r.passed; ++i)
        for (size_t j = 0; j < src.dim; ++j) {
            Vec prod(src.dim, 0);
            for (auto [k, c] : src.basis_bracket(i, j)) prod[k] = c;
            if (M.apply(prod) != dst.bracket_vec(M.col_vec(i), M.col_vec(j))) {
                r.passed = false;
                r.cex = Counterexample{{i, j}, ""};
                break;
            }
        }
    return r;
}

/// Build the even part of an isomorphism from its odd part: given a
/// parity-preserving candidate bijection on the odd blocks, each source even
/// basis element is matched to the unique destination even element with the
/// same action on the odd part, then the whole map is verified.
struct SuperIso {
    Matrix map;  // dst.dim x src.dim
    std::vector<CheckReport> reports;
};

inline SuperIso match_by_odd_action(const LieSuperalgebra& src, const LieSuperalgebra& dst, const Matrix& odd_map) {
    PrimeField F(src.p);
    auto so = src.odd_indices(), se = src.even_indices();
    auto dofs = dst.odd_indices(), de = dst.even_indices();
    if (so.size() != dofs.size() || se.size() != de.size())
        throw std::invalid_argument("match_by_odd_action: superdimension mismatch");
    size_t no = so.size(), ne = se.size();
    auto odd_inv = inverse(odd_map);
    if (!odd_inv) throw std::invalid_argument("match_by_odd_action: odd map is singular");

    // action matrices of dst even basis on dst odd, stacked as columns
    Matrix D(src.p, no * no, ne);
    for (size_t w = 0; w < ne; ++w)
        for (size_t a = 0; a < no; ++a)
            for (auto [k, c] : dst.basis_bracket(de[w], dofs[a])) {
                // locate k in the odd block
                for (size_t b = 0; b < no; ++b)
                    if (dofs[b] == k) {
                        D.at(b * no + a, w) = c;
                        break;
                    }
            }
    SuperIso out;
    out.map = Matrix(src.p, dst.dim, src.dim);
    for (size_t a = 0; a < no; ++a)
        for (size_t b = 0; b < no; ++b) out.map.at(dofs[b], so[a]) = odd_map.at(b, a);
    CheckReport solvrep;
    solvrep.name = "even_part_solved";
    solvrep.checked = ne;
    for (size_t k = 0; k < ne; ++k) {
        // action of src even basis element on src odd, transported by odd_map
        Matrix act(src.p, no, no);
        for (size_t a = 0; a < no; ++a)
            for (auto [kk, c] : src.basis_bracket(se[k], so[a])) {
                for (size_t b = 0; b < no; ++b)
                    if (so[b] == kk) {
                        act.at(b, a) = c;
                        break;
                    }
            }
        Matrix transported = mat_mul(mat_mul(odd_map, act), *odd_inv);
        auto c = solve(D, flatten(transported));
        if (!c) {
            solvrep.passed = false;
            solvrep.cex = Counterexample{{k}, "no matching even element"};
            break;
        }
        for (size_t w = 0; w < ne; ++w) out.map.at(de[w], se[k]) = (*c)[w];
    }
    out.reports.push_back(solvrep);
    if (solvrep.passed) out.reports.push_back(check_super_map(src, dst, out.map, "bracket_isomorphism"));
    return out;
}

// ---------------------------------------------------------------------------
// The two explicit isomorphisms from the proof of the prototypical theorem
// ---------------------------------------------------------------------------

struct ProtoIsoResult {
    TripleSystem T;
    LieSuperalgebra lss;
    LieSuperalgebra reference;
    SuperIso iso;
    bool ok = false;
};

/// First kind: A = End(X) with the orthogonal involution, T = X ⊗ Y with a
/// symmetric form on X and a skew form on Y. L^ss(T) ≅ osp(X|Y, b) with
/// b = b_X ⊕ (-b_Y).
inline ProtoIsoResult proto_osp_isomorphism(size_t nx, size_t ny, u32 p, const CheckPolicy& policy = {}) {
    if (ny % 2) throw std::invalid_argument("proto_osp_isomorphism: dim Y must be even");
    PrimeField F(p);
    size_t de = nx * nx, nt = nx * ny, r = ny / 2;
    // E = Mat_nx with the transpose involution
    Algebra E(p, de);
    auto eidx = [&](size_t a, size_t b) { return a * nx + b; };
    for (size_t a = 0; a < nx; ++a)
        for (size_t b = 0; b < nx; ++b)
            for (size_t c = 0; c < nx; ++c)
                for (size_t d = 0; d < nx; ++d)
                    if (b == c) E.add_entry(eidx(a, b), eidx(c, d), eidx(a, d), 1);
    Matrix inv(p, de, de);
    for (size_t a = 0; a < nx; ++a)
        for (size_t b = 0; b < nx; ++b) inv.at(eidx(b, a), eidx(a, b)) = 1;
    Vec unit(de, 0);
    for (size_t a = 0; a < nx; ++a) unit[eidx(a, a)] = 1;
    InvolutiveAlgebra Ei{E, inv, unit, {}, {}};
    compute_skew_herm(Ei);
    // skew form on Y: b_Y(y_a, y_c) via the standard block (0, I; -I, 0)
    Matrix bY(p, ny, ny);
    for (size_t a = 0; a < r; ++a) {
        bY.at(a, r + a) = 1;
        bY.at(r + a, a) = static_cast<u8>(F.neg(1));
    }
    // action of E on T = X ⊗ Y (on the X factor); T index = i*ny + a
    std::vector<Matrix> action(de, Matrix(p, nt, nt));
    for (size_t a = 0; a < nx; ++a)
        for (size_t b = 0; b < nx; ++b)
            for (size_t y = 0; y < ny; ++y) action[eidx(a, b)].at(a * ny + y, b * ny + y) = 1;
    // h(x1⊗y1, x2⊗y2) = b_Y(y1,y2) x1 b_X(x2,·) = b_Y(y1,y2) E_{x1,x2}
    std::vector<std::vector<Vec>> h(nt, std::vector<Vec>(nt, Vec(de, 0)));
    for (size_t i = 0; i < nx; ++i)
        for (size_t a = 0; a < ny; ++a)
            for (size_t j = 0; j < nx; ++j)
                for (size_t c = 0; c < ny; ++c) {
                    u32 v = bY.at(a, c);
                    if (v) h[i * ny + a][j * ny + c][eidx(i, j)] = static_cast<u8>(v);
                }
    TripleSystem T = prototypical(Ei, nt, action, h, policy);
    JTernaryPackage pkg = jordanize(T, policy);
    ProtoIsoResult out;
    out.T = T;
    out.lss = direct_from_jternary(pkg, policy);
    out.reference = ref_detail::osp_superalgebra(p, nx, ny, -1);  // b|_Y = -b_Y
    // odd identification: x_i ⊗ y_a ↦ Λ_{x_i, y_a}, both ordered (i,a)
    Matrix odd_map = Matrix::identity(p, nt);
    out.iso = match_by_odd_action(out.lss, out.reference, odd_map);
    out.ok = all_passed(out.iso.reports);
    return out;
}

/// Second kind: A = End(X) ⊕ End(X)^op with the exchange involution,
/// T = (X⊗Y*) ⊕ (Y⊗X*). L^ss(T) ≅ psl(X|Y).
inline ProtoIsoResult proto_psl_isomorphism(size_t nx, size_t ny, u32 p, const CheckPolicy& policy = {}) {
    PrimeField F(p);
    size_t db = nx * nx, de = 2 * db;
    size_t dm = nx * ny, dn = ny * nx, nt = dm + dn;
    Algebra E(p, de);
    auto bidx = [&](size_t a, size_t b) { return a * nx + b; };  // E_{ab} in B
    for (size_t a = 0; a < nx; ++a)
        for (size_t b = 0; b < nx; ++b)
            for (size_t c = 0; c < nx; ++c)
                for (size_t d = 0; d < nx; ++d)
                    if (b == c) {
                        E.add_entry(bidx(a, b), bidx(c, d), bidx(a, d), 1);                     // B side
                        E.add_entry(db + bidx(c, d), db + bidx(a, b), db + bidx(a, d), 1);      // op side
                    }
    Matrix inv(p, de, de);
    for (size_t i = 0; i < db; ++i) {
        inv.at(db + i, i) = 1;
        inv.at(i, db + i) = 1;
    }
    Vec unit(de, 0);
    for (size_t a = 0; a < nx; ++a) {
        unit[bidx(a, a)] = 1;
        unit[db + bidx(a, a)] = 1;
    }
    InvolutiveAlgebra Ei{E, inv, unit, {}, {}};
    compute_skew_herm(Ei);
    // T = M ⊕ N, M = Hom(Y,X) (index i*ny+a), N = Hom(X,Y) (index dm + a*nx+i)
    std::vector<Matrix> action(de, Matrix(p, nt, nt));
    for (size_t a = 0; a < nx; ++a)
        for (size_t b = 0; b < nx; ++b) {
            // (E_ab, 0) acts on M by left multiplication
            for (size_t y = 0; y < ny; ++y) action[bidx(a, b)].at(a * ny + y, b * ny + y) = 1;
            // (0, E_ab^op) acts on N by right multiplication by E_ab
            for (size_t y = 0; y < ny; ++y) action[db + bidx(a, b)].at(dm + y * nx + b, dm + y * nx + a) = 1;
        }
    // h(m, n) = (m n, 0); h(n, m) = (0, -(m n)^op)
    std::vector<std::vector<Vec>> h(nt, std::vector<Vec>(nt, Vec(de, 0)));
    for (size_t i = 0; i < nx; ++i)
        for (size_t a = 0; a < ny; ++a)
            for (size_t c = 0; c < ny; ++c)
                for (size_t j = 0; j < nx; ++j) {
                    // m = E^{XY}_{i,a} (x_i ⊗ y_a^*), n = E^{YX}_{c,j}
                    // m n = δ_{ac} E^{XX}_{ij}
                    if (a == c) {
                        h[i * ny + a][dm + c * nx + j][bidx(i, j)] = 1;
                        h[dm + c * nx + j][i * ny + a][db + bidx(i, j)] = static_cast<u8>(F.neg(1));
                    }
                }
    TripleSystem T = prototypical(Ei, nt, action, h, policy);
    JTernaryPackage pkg = jordanize(T, policy);
    ProtoIsoResult out;
    out.T = T;
    out.lss = direct_from_jternary(pkg, policy);
    out.reference = build_reference(RefKind::psl, nx, ny, p);
    Matrix odd_map = Matrix::identity(p, nt);
    out.iso = match_by_odd_action(out.lss, out.reference, odd_map);
    out.ok = all_passed(out.iso.reports);
    return out;
}

}  // namespace char3

#endif
