#include <catch2/catch_amalgamated.hpp>

#include "char3/triple.hpp"

using namespace char3;

namespace {

// Second smallest honest prototypical instance: Mat2 with the symplectic
// involution, T = column space, h(x,y) = x y^t w with w = [[0,1],[-1,0]].
TripleSystem mat2_symplectic_prototypical() {
    u32 p = 3;
    PrimeField F(p);
    Algebra E(p, 4);
    auto idx = [](size_t a, size_t b) { return a * 2 + b; };
    for (size_t a = 0; a < 2; ++a)
        for (size_t b = 0; b < 2; ++b)
            for (size_t c = 0; c < 2; ++c)
                for (size_t d = 0; d < 2; ++d)
                    if (b == c) E.add_entry(idx(a, b), idx(c, d), idx(a, d), 1);
    // symplectic involution x̄ = tr(x) 1 - x
    Matrix inv(p, 4, 4);
    Vec one{1, 0, 0, 1};
    for (size_t j = 0; j < 4; ++j) {
        u32 tr = (j == 0 || j == 3) ? 1u : 0u;
        for (size_t i = 0; i < 4; ++i) {
            u32 v = F.mul(tr, one[i]);
            if (i == j) v = F.sub(v, 1);
            inv.at(i, j) = static_cast<u8>(v);
        }
    }
    InvolutiveAlgebra Ei{E, inv, one, {}, {}};
    compute_skew_herm(Ei);
    // natural action on F^2
    std::vector<Matrix> action(4, Matrix(p, 2, 2));
    action[0].at(0, 0) = 1;  // e11
    action[1].at(0, 1) = 1;  // e12
    action[2].at(1, 0) = 1;  // e21
    action[3].at(1, 1) = 1;  // e22
    // h(x, y) = x (w y)^t with w = [[0,1],[-1,0]]: h(e_i, e_j) = e_i ⊗ (w e_j)^t
    std::vector<std::vector<Vec>> h(2, std::vector<Vec>(2, Vec(4, 0)));
    // w e_0 = -e_1, w e_1 = e_0
    // h(e0,e0) = e0 (w e0)^t = -e0 e1^t = -e12
    h[0][0] = Vec{0, 2, 0, 0};
    // h(e0,e1) = e0 (w e1)^t = e0 e0^t = e11
    h[0][1] = Vec{1, 0, 0, 0};
    // h(e1,e0) = -e1 e1^t = -e22
    h[1][0] = Vec{0, 0, 0, 2};
    // h(e1,e1) = e1 e0^t = e21
    h[1][1] = Vec{0, 0, 1, 0};
    return prototypical(Ei, 2, action, h);
}

TripleSystem pathological_all_x() {
    TripleSystem T(3, 2);
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j)
            for (size_t k = 0; k < 2; ++k) T.add_entry(i, j, k, 0, 1);  // every product = x
    return T;
}

}  // namespace

TEST_CASE("weak counterexample") {
    TripleSystem T = weak_counterexample();
    auto hein = check_hein(T);
    for (const auto& r : hein) {
        REQUIRE(r.passed);
        REQUIRE(r.exhaustive);
    }
    SECTION("S(x,x): x -> 2y, y -> 0") {
        Matrix s = T.s_op(unit_vec(2, 0), unit_vec(2, 0));
        REQUIRE(s.col_vec(0) == Vec{0, 2});
        REQUIRE(is_zero(s.col_vec(1)));
        // S(x,x)x = 2y = -y at p = 3
        REQUIRE(s.apply(unit_vec(2, 0)) == vec_scale(PrimeField(3), unit_vec(2, 1), 2));
    }
    SECTION("K(T,T) = 0 and J = F id") {
        for (size_t i = 0; i < 2; ++i)
            for (size_t j = 0; j < 2; ++j) REQUIRE(T.k_op(unit_vec(2, i), unit_vec(2, j)).is_zero());
        JTernaryPackage pkg = jordanize(T);
        REQUIRE(pkg.jdim() == 1);
        REQUIRE(pkg.sdim() == 1);
    }
}

TEST_CASE("zero triple system passes everything") {
    TripleSystem T(3, 3);
    for (const auto& r : check_hein(T)) REQUIRE(r.passed);
    for (int eps : {1, -1})
        for (int delta : {1, -1}) {
            for (const auto& r : check_fk(T, eps, delta)) REQUIRE(r.passed);
            REQUIRE(check_special(T, eps, delta).passed);
        }
}

TEST_CASE("pathological xyz = x fails hein1 at the first tuple") {
    TripleSystem T = pathological_all_x();
    auto hein = check_hein(T);
    REQUIRE(!hein[0].passed);
    REQUIRE(hein[0].cex.has_value());
    REQUIRE(hein[0].cex->tuple == std::vector<u64>{0, 0, 0, 0, 0});
}

TEST_CASE("prototypical: Mat2 symplectic with 2-dim module") {
    TripleSystem T = mat2_symplectic_prototypical();
    for (const auto& r : check_hein(T)) {
        CAPTURE(r.summary());
        REQUIRE(r.passed);
    }
    JTernaryPackage pkg = jordanize(T);
    for (const auto& r : check_allison(pkg)) {
        CAPTURE(r.summary());
        REQUIRE(r.passed);
    }
    // S(T,T) is the osp(1|2) even part: sp_2, dim 3
    REQUIRE(pkg.sdim() == 3);
}

TEST_CASE("h = 0 gives the zero prototypical system") {
    Algebra E(3, 1);
    E.add_entry(0, 0, 0, 1);
    InvolutiveAlgebra Ei{E, Matrix::identity(3, 1), Vec{1}, {}, {}};
    compute_skew_herm(Ei);
    std::vector<Matrix> action{Matrix::identity(3, 2)};
    std::vector<std::vector<Vec>> h(2, std::vector<Vec>(2, Vec{0}));
    TripleSystem T = prototypical(Ei, 2, action, h);
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j)
            for (size_t k = 0; k < 2; ++k) REQUIRE(T.at(i, j, k).empty());
}

TEST_CASE("Prop 2.7: hein <=> fk(1,1) + special(1,1)") {
    auto verdict_hein = [](const TripleSystem& T) { return all_passed(check_hein(T)); };
    auto verdict_fk = [](const TripleSystem& T) {
        return all_passed(check_fk(T, 1, 1)) && check_special(T, 1, 1).passed;
    };
    std::vector<TripleSystem> systems;
    systems.push_back(weak_counterexample());
    systems.push_back(TripleSystem(3, 2));  // zero product
    systems.push_back(mat2_symplectic_prototypical());
    systems.push_back(pathological_all_x());  // fails both
    // the structurable triple {a,b,c} = V_{a,b}(c) is (-1,1), not (1,1)
    TensorStructurable TS = tensor_structurable(split_composition(8, 3), split_composition(1, 3));
    VTable vt = v_table(TS.A);
    TripleSystem V(3, 8);
    for (size_t i = 0; i < 8; ++i)
        for (size_t j = 0; j < 8; ++j)
            for (size_t k = 0; k < 8; ++k) {
                Vec val(8, 0);
                vt.axpy(val, 3, i, j, k, 1);
                V.set_entry_vec(i, j, k, val);
            }
    systems.push_back(V);
    for (size_t i = 0; i < systems.size(); ++i) {
        CAPTURE(i);
        REQUIRE(verdict_hein(systems[i]) == verdict_fk(systems[i]));
    }
    // and the V-triple is a (-1,1) Freudenthal-Kantor system
    for (const auto& r : check_fk(V, -1, 1)) {
        CAPTURE(r.summary());
        REQUIRE(r.passed);
    }
    REQUIRE(!verdict_hein(V));
}

TEST_CASE("lemma 2.4 operator identities on a small J-ternary system") {
    TripleSystem T = mat2_symplectic_prototypical();
    size_t n = T.dim;
    PrimeField F(3);
    // S(u,v) is a derivation of the triple product; T(u,v) the signed version
    for (size_t u = 0; u < n; ++u)
        for (size_t v = 0; v < n; ++v) {
            Matrix S = T.s_op(unit_vec(n, u), unit_vec(n, v));
            Matrix Tm = T.t_op(unit_vec(n, u), unit_vec(n, v));
            for (size_t x = 0; x < n; ++x)
                for (size_t y = 0; y < n; ++y)
                    for (size_t z = 0; z < n; ++z) {
                        Vec xyz(n, 0);
                        T.acc(xyz, x, y, z, 1);
                        {
                            Vec lhs = S.apply(xyz);
                            Vec rhs = T.triple(S.col_vec(x), unit_vec(n, y), unit_vec(n, z));
                            rhs = vec_add(F, rhs, T.triple(unit_vec(n, x), S.col_vec(y), unit_vec(n, z)));
                            rhs = vec_add(F, rhs, T.triple(unit_vec(n, x), unit_vec(n, y), S.col_vec(z)));
                            REQUIRE(lhs == rhs);
                        }
                        {
                            Vec lhs = Tm.apply(xyz);
                            Vec rhs = T.triple(Tm.col_vec(x), unit_vec(n, y), unit_vec(n, z));
                            rhs = vec_sub(F, rhs, T.triple(unit_vec(n, x), Tm.col_vec(y), unit_vec(n, z)));
                            rhs = vec_add(F, rhs, T.triple(unit_vec(n, x), unit_vec(n, y), Tm.col_vec(z)));
                            REQUIRE(lhs == rhs);
                        }
                    }
        }
}

TEST_CASE("subeq:STs bracket identities (eps = 1)") {
    TripleSystem T = mat2_symplectic_prototypical();
    size_t n = T.dim;
    auto L = [&](size_t x, size_t y) { return T.l_op(unit_vec(n, x), unit_vec(n, y)); };
    auto S = [&](const Vec& x, const Vec& y) { return T.s_op(x, y); };
    auto Top = [&](const Vec& x, const Vec& y) { return T.t_op(x, y); };
    for (size_t u = 0; u < n; ++u)
        for (size_t v = 0; v < n; ++v)
            for (size_t x = 0; x < n; ++x)
                for (size_t y = 0; y < n; ++y) {
                    Vec eu = unit_vec(n, u), ev = unit_vec(n, v), ex = unit_vec(n, x), ey = unit_vec(n, y);
                    Matrix Suv = T.s_op(eu, ev), Tuv = T.t_op(eu, ev), Lxy = L(x, y);
                    // [S(u,v), L(x,y)] = L(S(u,v)x, y) + L(x, S(u,v)y)
                    REQUIRE(commutator(Suv, Lxy) ==
                            mat_add(T.l_op(Suv.col_vec(x), ey), T.l_op(ex, Suv.col_vec(y))));
                    // [T(u,v), L(x,y)] = L(T(u,v)x, y) - L(x, T(u,v)y)
                    REQUIRE(commutator(Tuv, Lxy) ==
                            mat_sub(T.l_op(Tuv.col_vec(x), ey), T.l_op(ex, Tuv.col_vec(y))));
                    // [S(u,v), T(x,y)] = T(S(u,v)x, y) + T(x, S(u,v)y)
                    REQUIRE(commutator(Suv, Top(ex, ey)) ==
                            mat_add(Top(Suv.col_vec(x), ey), Top(ex, Suv.col_vec(y))));
                    // [T(u,v), S(x,y)] = -T(T(u,v)x, y) + T(x, T(u,v)y)
                    REQUIRE(commutator(Tuv, S(ex, ey)) ==
                            mat_sub(Top(ex, Tuv.col_vec(y)), Top(Tuv.col_vec(x), ey)));
                    // [T(u,v), T(x,y)] = -S(T(u,v)x, y) + S(x, T(u,v)y)
                    REQUIRE(commutator(Tuv, Top(ex, ey)) ==
                            mat_sub(S(ex, Tuv.col_vec(y)), S(Tuv.col_vec(x), ey)));
                }
}

TEST_CASE("K antisymmetry and S symmetry") {
    TripleSystem T = mat2_symplectic_prototypical();
    size_t n = T.dim;
    for (size_t i = 0; i < n; ++i) {
        REQUIRE(T.k_op(unit_vec(n, i), unit_vec(n, i)).is_zero());
        for (size_t j = 0; j < n; ++j) {
            REQUIRE(T.s_op(unit_vec(n, i), unit_vec(n, j)) == T.s_op(unit_vec(n, j), unit_vec(n, i)));
            REQUIRE(T.k_op(unit_vec(n, i), unit_vec(n, j)) == mat_neg(T.k_op(unit_vec(n, j), unit_vec(n, i))));
        }
    }
}

TEST_CASE("from_structurable (8,1) with full cross-validation") {
    TensorStructurable TS = tensor_structurable(split_composition(8, 3), split_composition(1, 3));
    auto s = choose_invertible_skew(TS);
    REQUIRE(s.has_value());
    FromStructurable FS = from_structurable(TS.A, *s);
    for (const auto& r : FS.reports) {
        CAPTURE(r.summary());
        REQUIRE(r.passed);
    }
    JTernaryPackage pkg = jordanize(FS.T);
    REQUIRE(pkg.jdim() == TS.A.skew.dim());  // dim J = dim S
    REQUIRE(pkg.sdim() == 15);               // so(S', Q), dim S' = 6
    // the triple system is J-ternary, hence special (1,1) Freudenthal-Kantor
    REQUIRE(all_passed(check_fk(FS.T, 1, 1)));
    REQUIRE(check_special(FS.T, 1, 1).passed);
}

TEST_CASE("from_structurable rejects bad inputs") {
    TensorStructurable TS = tensor_structurable(split_composition(8, 3), split_composition(1, 3));
    SECTION("non-skew s") {
        REQUIRE_THROWS_AS(from_structurable(TS.A, TS.A.unit), std::invalid_argument);
    }
    SECTION("singular L_s") {
        // u1 ⊗ 1 is skew with n(u1) = 0, so L_s is singular
        Vec s(8, 0);
        s[2] = 1;
        REQUIRE(TS.A.skew.contains(s));
        REQUIRE_THROWS_AS(from_structurable(TS.A, s), std::invalid_argument);
    }
}

TEST_CASE("hermitian-form structurable gives a prototypical system on the isotope") {
    // E = F x F with the exchange involution, W = F^2, s = (1,-1)
    u32 p = 3;
    PrimeField F(p);
    CompositionAlgebra K2 = split_composition(2, p);
    InvolutiveAlgebra Ei = as_involutive(K2);
    std::vector<Matrix> action(2, Matrix(p, 2, 2));
    action[0].at(0, 0) = 1;  // (1,0) acts on the first coordinate
    action[1].at(1, 1) = 1;  // (0,1) acts on the second
    std::vector<std::vector<Vec>> h(2, std::vector<Vec>(2, Vec(2, 0)));
    h[0][0] = Vec{0, 0};
    h[0][1] = Vec{1, 0};  // h1(x,y) = x1 y2
    h[1][0] = Vec{0, 1};  // h2(x,y) = x2 y1
    h[1][1] = Vec{0, 0};
    StructurableAlgebra A = hermitian_form_structurable(Ei, 2, action, h);
    REQUIRE(A.skew.dim() == 1);
    Vec s = A.skew.basis.row_vec(0);  // (1,-1) in E, normalized
    // normalize to s = (1,-1,0,0)
    if (s[0] != 1) s = vec_scale(F, s, F.inv(s[0]));
    FromStructurable FS = from_structurable(A, s);

    // prototypical system on the isotope E^(s): a*b = asb, tau(a) = -abar,
    // module action a • x = a(sx) on A, and the form h~.
    size_t n = 4;
    Algebra Es(p, 2);
    for (size_t a = 0; a < 2; ++a)
        for (size_t b = 0; b < 2; ++b) {
            Vec prod = Ei.alg.multiply(Ei.alg.multiply(unit_vec(2, a), Vec{1, 2}), unit_vec(2, b));
            Es.set_product(a, b, prod);
        }
    Matrix tau(p, 2, 2);
    for (size_t j = 0; j < 2; ++j) {
        Vec c = vec_scale(F, Ei.inv.apply(unit_vec(2, j)), F.neg(1));
        for (size_t i = 0; i < 2; ++i) tau.at(i, j) = c[i];
    }
    InvolutiveAlgebra EsI{Es, tau, Vec{1, 2}, {}, {}};  // unit of the isotope is s^{-1} = s
    compute_skew_herm(EsI);
    // isotope module action a*x = (as)∘x, realized as right multiplication
    // by the embedded element a·s (E is commutative here)
    std::vector<Matrix> act2(2, Matrix(p, n, n));
    for (size_t a = 0; a < 2; ++a) {
        Vec as = Ei.alg.multiply(unit_vec(2, a), Vec{1, 2});
        Vec as_emb(4, 0);
        as_emb[0] = as[0];
        as_emb[1] = as[1];
        act2[a] = A.alg.right_mul(as_emb);
    }
    std::vector<std::vector<Vec>> ht(n, std::vector<Vec>(n, Vec(2, 0)));
    for (size_t x = 0; x < 2; ++x)
        for (size_t y = 0; y < 2; ++y) {
            // E x E: h~(a,b) = -a bbar
            Vec v = vec_scale(F, Ei.alg.multiply(unit_vec(2, x), Ei.inv.apply(unit_vec(2, y))), F.neg(1));
            ht[x][y] = v;
            // W x W: h~ = h
            ht[2 + x][2 + y] = h[x][y];
        }
    TripleSystem P = prototypical(EsI, n, act2, ht);
    // structure-constant equality
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k) {
                Vec a(n, 0), b(n, 0);
                FS.T.acc(a, i, j, k, 1);
                P.acc(b, i, j, k, 1);
                REQUIRE(a == b);
            }
}
