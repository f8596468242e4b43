#include <catch2/catch_amalgamated.hpp>

#include "char3/lie.hpp"

using namespace char3;

namespace {

TensorStructurable tensor81() {
    return tensor_structurable(split_composition(8, 3), split_composition(1, 3));
}

}  // namespace

TEST_CASE("build_LT on the weak counterexample: dim 8, graded, sl2-checked") {
    TripleSystem T = weak_counterexample();
    JTernaryPackage pkg = jordanize(T);
    LTAlgebra lt = build_LT(pkg);
    REQUIRE(lt.L.dim() == 8);  // 3*1 + 2*2 + 1
    for (const auto& r : lt.L.reports) {
        CAPTURE(r.summary());
        REQUIRE(r.passed);
    }
    Sl2Data sd = sl2_utilities(lt.L);
    for (const auto& r : sd.reports) {
        CAPTURE(r.summary());
        REQUIRE(r.passed);
    }
    REQUIRE(sd.centralizer.dim() == 1);  // S(T,T)
    REQUIRE(sd.natural_part.dim() == 4);
    REQUIRE(sd.adjoint_part.dim() == 3);
}

TEST_CASE("build_LT degenerate T = 0 gives sl2") {
    TripleSystem T(3, 0);
    JTernaryPackage pkg;  // only the p and dim fields matter for the degenerate path
    pkg.T = T;
    LTAlgebra lt = build_LT(pkg);
    REQUIRE(lt.L.dim() == 3);
    Sl2Data sd = sl2_utilities(lt.L);
    for (const auto& r : sd.reports) REQUIRE(r.passed);
    REQUIRE(sd.centralizer.dim() == 0);
}

TEST_CASE("KT(F) is the 2-dimensional LTS of sl2") {
    Algebra A(3, 1);
    A.add_entry(0, 0, 0, 1);
    StructurableAlgebra S = make_structurable(A, Matrix::identity(3, 1), Vec{1});
    LieTripleSystem lts = kt_triple_system(S);
    REQUIRE(lts.T.dim == 2);
    // [a+, b-, c+] = {a,b,c} = abc on scalars
    Vec v(2, 0);
    lts.T.acc(v, 0, 1, 0, 1);
    REQUIRE(v == Vec{1, 0});
    StandardEmbedding emb = standard_embedding(lts);
    REQUIRE(emb.L.dim() == 3);
    // basis (W0 = diag(1,-1), e+, e-): [e+, e-] = W0, [W0, e+] = e+, [W0, e-] = -e-
    REQUIRE(emb.L.alg.multiply(unit_vec(3, 1), unit_vec(3, 2)) == Vec{1, 0, 0});
    REQUIRE(emb.L.alg.multiply(unit_vec(3, 0), unit_vec(3, 1)) == Vec{0, 1, 0});
    REQUIRE(emb.L.alg.multiply(unit_vec(3, 0), unit_vec(3, 2)) == Vec{0, 0, 2});
    REQUIRE(center(emb.L.alg).dim() == 0);
    REQUIRE(derived_subalgebra(emb.L.alg).dim() == 3);
}

TEST_CASE("zero LTS standard embedding is abelian on T") {
    LieTripleSystem lts;
    lts.T = TripleSystem(3, 2);
    StandardEmbedding emb = standard_embedding(lts);
    REQUIRE(emb.ldim == 0);
    REQUIRE(emb.L.dim() == 2);
    REQUIRE(derived_subalgebra(emb.L.alg).dim() == 0);
}

TEST_CASE("Kantor algebra of (8,1): dim 52, cross-validations") {
    TensorStructurable TS = tensor81();
    KantorAlgebra K = build_kantor(TS.A, KantorVariant::v1);
    REQUIRE(K.L.dim() == 52);  // 22 + 2*8 + 2*7
    REQUIRE(K.inner.span.dim() == 22);
    for (const auto& r : K.L.reports) {
        CAPTURE(r.summary());
        REQUIRE(r.passed);
        REQUIRE(r.exhaustive);
    }

    SECTION("phi: standard embedding of KT(A) matches v1 bit-exactly") {
        LieTripleSystem lts = kt_triple_system(TS.A);
        StandardEmbedding emb = standard_embedding(lts);
        REQUIRE(emb.L.dim() == 52);
        Matrix phi = kantor_phi_matrix(emb, K, TS.A);
        CheckReport r = check_bracket_map(emb.L.alg, K.L.alg, phi, "phi");
        CAPTURE(r.summary());
        REQUIRE(r.passed);
    }
    SECTION("v2 is isomorphic to v1 via the Remark map") {
        KantorAlgebra K2 = build_kantor(TS.A, KantorVariant::v2);
        Matrix M = kantor_v2_to_v1_matrix(K2.blocks, 3);
        CheckReport r = check_bracket_map(K2.L.alg, K.L.alg, M, "v2_to_v1");
        CAPTURE(r.summary());
        REQUIRE(r.passed);
    }
    SECTION("sl2 utilities with E = (0,t), F = (0,s)~") {
        auto s = choose_invertible_skew(TS);
        REQUIRE(s.has_value());
        PrimeField F(3);
        auto sc = TS.albert.from_ambient(*s);
        u32 q = TS.albert.Q(*sc);
        Vec t = TS.albert.to_ambient(vec_scale(F, TS.albert.sharp_apply(*sc), F.neg(F.inv(q))));
        attach_kantor_sl2(K, TS.A, *s, t);
        Sl2Data sd = sl2_utilities(K.L);
        for (const auto& r : sd.reports) {
            CAPTURE(r.summary());
            REQUIRE(r.passed);
        }
        REQUIRE(sd.centralizer.dim() == 15);  // S(A,A) for dim C2 = 1
        REQUIRE(sd.adjoint_part.dim() == 21);
        REQUIRE(sd.natural_part.dim() == 16);
        // Prop 5-graded: <X,Y,Z> = ½[[X,[F,Y]],Z] on L1 matches the
        // from_structurable tensor up to the paper's factor 2
        FromStructurable FS = from_structurable(TS.A, *s, {}, false);
        const KantorBlocks& B = K.blocks;
        for (size_t x = 0; x < 8; ++x)
            for (size_t y = 0; y < 8; ++y)
                for (size_t z = 0; z < 8; ++z) {
                    Vec X = unit_vec(52, B.xp0() + x), Y = unit_vec(52, B.xp0() + y), Z = unit_vec(52, B.xp0() + z);
                    Vec inner = K.L.alg.multiply(X, K.L.alg.multiply(K.L.F, Y));
                    Vec half_prod = vec_scale(F, K.L.alg.multiply(inner, Z), F.half());
                    Vec expect(8, 0);
                    FS.T.acc(expect, x, y, z, F.half());
                    Vec expect52(52, 0);
                    for (size_t l = 0; l < 8; ++l) expect52[B.xp0() + l] = expect[l];
                    REQUIRE(half_prod == expect52);
                }
    }
}

TEST_CASE("Kantor dimension formula for (4,2) tensor case") {
    // dim K = dim instrl + 2 dim A + 2 dim S, exercised away from the Cayley case
    TensorStructurable TS = tensor_structurable(split_composition(4, 3), split_composition(2, 3));
    KantorAlgebra K = build_kantor(TS.A, KantorVariant::v1);
    REQUIRE(K.L.dim() == K.inner.span.dim() + 2 * 8 + 2 * 4);
    for (const auto& r : K.L.reports) REQUIRE(r.passed);
}

TEST_CASE("L(T) of the (8,1) J-ternary algebra and the 5-graded triple product") {
    TensorStructurable TS = tensor81();
    auto s = choose_invertible_skew(TS);
    FromStructurable FS = from_structurable(TS.A, *s, {}, false);
    JTernaryPackage pkg = jordanize(FS.T);
    REQUIRE(pkg.jdim() == 7);
    REQUIRE(pkg.sdim() == 15);
    LTAlgebra lt = build_LT(pkg);
    REQUIRE(lt.L.dim() == 3 * 7 + 2 * 8 + 15);
    for (const auto& r : lt.L.reports) {
        CAPTURE(r.summary());
        REQUIRE(r.passed);
    }
    Sl2Data sd = sl2_utilities(lt.L);
    for (const auto& r : sd.reports) {
        CAPTURE(r.summary());
        REQUIRE(r.passed);
    }
    // [[p⊗x, [F, p⊗y]], p⊗z] = p ⊗ 2<x,y,z>
    PrimeField F(3);
    const LTBlocks& B = lt.blocks;
    u64 seed = 11;
    for (int trial = 0; trial < 64; ++trial) {
        seed = splitmix64(seed);
        size_t x = seed % 8, y = splitmix64(seed) % 8, z = splitmix64(seed + 1) % 8;
        Vec X = unit_vec(lt.L.dim(), B.p0() + x), Y = unit_vec(lt.L.dim(), B.p0() + y),
            Z = unit_vec(lt.L.dim(), B.p0() + z);
        Vec inner = lt.L.alg.multiply(X, lt.L.alg.multiply(lt.L.F, Y));
        Vec prod = lt.L.alg.multiply(inner, Z);
        Vec expect(8, 0);
        FS.T.acc(expect, x, y, z, 2);
        Vec expectN(lt.L.dim(), 0);
        for (size_t l = 0; l < 8; ++l) expectN[B.p0() + l] = expect[l];
        REQUIRE(prod == expectN);
    }
}

TEST_CASE("ad of F⊗id on L(T) is a derivation with cube zero") {
    TripleSystem T = weak_counterexample();
    JTernaryPackage pkg = jordanize(T);
    LTAlgebra lt = build_LT(pkg);
    Matrix adF(3, 8, 8);
    for (size_t j = 0; j < 8; ++j) {
        Vec col = lt.L.alg.multiply(lt.L.F, unit_vec(8, j));
        for (size_t i = 0; i < 8; ++i) adF.at(i, j) = col[i];
    }
    REQUIRE(is_derivation(lt.L.alg, adF));
    REQUIRE(mat_pow(adF, 3).is_zero());
    REQUIRE(!mat_pow(adF, 2).is_zero());
}
