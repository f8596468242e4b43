// Acceptance suite: one pass/fail line per criterion. Exit code is the
// number of failed criteria.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>

#include "char3/pipeline.hpp"

using namespace char3;

namespace {

int g_failures = 0;

void criterion(int num, const std::string& name, const std::function<bool(std::string&)>& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %2d. %-58s (%.1f s)\n", ok ? "PASS" : "FAIL", num, name.c_str(), secs);
    if (!ok) {
        std::printf("        %s\n", detail.c_str());
        ++g_failures;
    }
    std::fflush(stdout);
}

bool expect(std::string& detail, bool cond, const std::string& msg) {
    if (!cond && detail.empty()) detail = msg;
    return cond;
}

bool expect_reports(std::string& detail, const std::vector<CheckReport>& rs, const std::string& ctx) {
    bool ok = true;
    for (const auto& r : rs)
        if (!r.passed) {
            ok = false;
            if (detail.empty()) detail = ctx + ": " + r.summary();
        }
    return ok;
}

struct TensorCase {
    size_t d2;
    TensorStructurable TS;
    KantorAlgebra K;
};

}  // namespace

int main() {
    const u32 p = 3;
    CheckPolicy policy;  // defaults: auto budget, seed 0x5EED, 1e6 samples
    std::printf("acceptance suite over GF(%u), seed 0x%llX, %zu threads\n\n", p,
                static_cast<unsigned long long>(policy.seed), thread_count());

    // Shared constructions: the four tensor cases C1 = Cayley, C2 of dim d2.
    CompositionAlgebra cayley = split_composition(8, p);
    std::vector<TensorCase> cases;
    for (size_t d2 : {1, 2, 4, 8}) {
        TensorStructurable TS = tensor_structurable(cayley, split_composition(d2, p), policy);
        KantorAlgebra K = build_kantor(TS.A, KantorVariant::v1, policy);
        cases.push_back(TensorCase{d2, std::move(TS), std::move(K)});
    }

    criterion(1, "inner-structure dimensions (instrl and L_S L_S)", [&](std::string& detail) {
        const size_t instrl_expect[] = {22, 29, 49, 92};
        const size_t lsls_expect[] = {22, 29, 46, 92};
        bool ok = true;
        for (size_t i = 0; i < 4; ++i) {
            const auto& tc = cases[i];
            ok &= expect(detail, tc.K.inner.span.dim() == instrl_expect[i],
                         "instrl dim for d2=" + std::to_string(tc.d2) + " is " +
                             std::to_string(tc.K.inner.span.dim()) + ", expected " +
                             std::to_string(instrl_expect[i]));
            size_t n = tc.TS.A.dim(), k = tc.TS.A.skew.dim();
            SpanBuilder sb(p, n * n);
            std::vector<Matrix> Ls(k);
            for (size_t a = 0; a < k; ++a) Ls[a] = tc.TS.A.alg.left_mul(tc.TS.A.skew.basis.row_vec(a));
            for (size_t a = 0; a < k; ++a)
                for (size_t b = 0; b < k; ++b) sb.insert(flatten(mat_mul(Ls[a], Ls[b])));
            ok &= expect(detail, sb.dim() == lsls_expect[i],
                         "L_S L_S dim for d2=" + std::to_string(tc.d2) + " is " + std::to_string(sb.dim()) +
                             ", expected " + std::to_string(lsls_expect[i]));
        }
        return ok;
    });

    criterion(2, "Kantor dimensions 52/77/133/248 with Jacobi verified", [&](std::string& detail) {
        const size_t expect_dim[] = {52, 77, 133, 248};
        bool ok = true;
        for (size_t i = 0; i < 4; ++i) {
            const auto& tc = cases[i];
            ok &= expect(detail, tc.K.L.dim() == expect_dim[i],
                         "dim K for d2=" + std::to_string(tc.d2) + " is " + std::to_string(tc.K.L.dim()));
            CheckReport jac = check_jacobi(tc.K.L.alg, policy);
            ok &= expect(detail, jac.passed, "Jacobi failed: " + jac.summary());
            if (tc.d2 <= 2)
                ok &= expect(detail, jac.exhaustive,
                             "Jacobi for dim " + std::to_string(tc.K.L.dim()) + " should be exhaustive");
            else
                ok &= expect(detail, !jac.exhaustive && jac.checked >= 1000000,
                             "Jacobi for dim " + std::to_string(tc.K.L.dim()) + " should sample >= 1e6 triples");
            ok &= expect(detail, check_anticommutative(tc.K.L.alg).passed, "anticommutativity failed");
        }
        return ok;
    });

    criterion(3, "Kantor cross-validation (phi and v1 vs v2), d2 in {1,2}", [&](std::string& detail) {
        bool ok = true;
        for (size_t i = 0; i < 2; ++i) {
            const auto& tc = cases[i];
            LieTripleSystem lts = kt_triple_system(tc.TS.A, policy);
            StandardEmbedding emb = standard_embedding(lts, policy);
            Matrix phi = kantor_phi_matrix(emb, tc.K, tc.TS.A);
            CheckReport r1 = check_bracket_map(emb.L.alg, tc.K.L.alg, phi, "phi");
            ok &= expect(detail, r1.passed, "phi failed for d2=" + std::to_string(tc.d2) + ": " + r1.summary());
            KantorAlgebra K2 = build_kantor(tc.TS.A, KantorVariant::v2, policy);
            Matrix M = kantor_v2_to_v1_matrix(K2.blocks, p);
            CheckReport r2 = check_bracket_map(K2.L.alg, tc.K.L.alg, M, "v2_to_v1");
            ok &= expect(detail, r2.passed, "v2->v1 failed for d2=" + std::to_string(tc.d2) + ": " + r2.summary());
        }
        return ok;
    });

    criterion(4, "Albert-form identities AllQ1..AllQ5, all four tensor cases", [&](std::string& detail) {
        bool ok = true;
        for (const auto& tc : cases) {
            ok &= expect_reports(detail, albert_identities(tc.TS), "d2=" + std::to_string(tc.d2));
            CheckReport md = check_m_delta(tc.TS.A, tc.TS.albert);
            ok &= expect(detail, md.passed, "Mab_delta failed for d2=" + std::to_string(tc.d2));
        }
        return ok;
    });

    criterion(5, "Clifford image dimensions 64 / 64 / 256 / 4096", [&](std::string& detail) {
        bool ok = true;
        for (const auto& tc : cases) {
            auto s = choose_invertible_skew(tc.TS);
            ok &= expect(detail, s.has_value(), "no invertible skew element");
            if (!s) return false;
            bool want_full = tc.d2 == 1;
            CliffordImage ci = clifford_image(tc.TS, *s, want_full, !want_full);
            ok &= expect_reports(detail, ci.reports, "d2=" + std::to_string(tc.d2));
            size_t got = want_full ? ci.full_dim : ci.even_dim;
            size_t expect_dim = tc.d2 == 1 ? 64 : (tc.d2 == 2 ? 64 : (tc.d2 == 4 ? 256 : 4096));
            ok &= expect(detail, got == expect_dim,
                         "generated algebra dim for d2=" + std::to_string(tc.d2) + " is " + std::to_string(got) +
                             ", expected " + std::to_string(expect_dim));
        }
        return ok;
    });

    criterion(6, "magic square: 15 cells, references and Cayley checks", [&](std::string& detail) {
        auto cells = magic_square(p, policy);
        const std::map<std::pair<size_t, size_t>, std::pair<size_t, size_t>> superdims = {
            {{1, 2}, {0, 2}},   {{1, 4}, {4, 4}},   {{1, 8}, {15, 8}},  {{2, 2}, {0, 4}},  {{2, 4}, {6, 8}},
            {{2, 8}, {21, 16}}, {{4, 4}, {16, 16}}, {{4, 8}, {39, 32}}, {{8, 8}, {78, 64}}};
        bool ok = true;
        size_t nonempty = 0;
        for (const auto& c : cells) {
            if (c.empty) {
                ok &= expect(detail, c.d1 == 1 && c.d2 == 1, "unexpected empty cell");
                continue;
            }
            ++nonempty;
            auto key = std::minmax(c.d1, c.d2);
            auto it = superdims.find({key.first, key.second});
            ok &= expect(detail, it != superdims.end(), "unexpected cell");
            if (it != superdims.end())
                ok &= expect(detail, c.fp.even == it->second.first && c.fp.odd == it->second.second,
                             "cell (" + std::to_string(c.d1) + "," + std::to_string(c.d2) + ") superdim (" +
                                 std::to_string(c.fp.even) + "|" + std::to_string(c.fp.odd) + ")");
            ok &= expect(detail, c.ok,
                         "cell (" + std::to_string(c.d1) + "," + std::to_string(c.d2) + "): " + c.detail);
        }
        ok &= expect(detail, nonempty == 15, "expected 15 nonempty cells");
        return ok;
    });

    criterion(7, "explicit isomorphisms with osp and psl (Thm 5.1)", [&](std::string& detail) {
        bool ok = true;
        for (auto [nx, ny] : std::vector<std::pair<size_t, size_t>>{{1, 2}, {3, 2}, {2, 4}}) {
            ProtoIsoResult r = proto_osp_isomorphism(nx, ny, p, policy);
            ok &= expect(detail, r.ok, "osp case (" + std::to_string(nx) + "," + std::to_string(ny) + ")");
        }
        for (auto [nx, ny] : std::vector<std::pair<size_t, size_t>>{{2, 1}, {2, 2}, {4, 1}}) {
            ProtoIsoResult r = proto_psl_isomorphism(nx, ny, p, policy);
            ok &= expect(detail, r.ok, "psl case (" + std::to_string(nx) + "," + std::to_string(ny) + ")");
        }
        return ok;
    });

    criterion(8, "weak-but-not-Lie witness and its Lie quotient", [&](std::string& detail) {
        TripleSystem T = weak_counterexample(p);
        JTernaryPackage pkg = jordanize(T, policy);
        LTAlgebra lt = build_LT(pkg, policy);
        SemisimplifyResult r = semisimplify({lt.L.alg, lie_detail::ad_matrix(lt.L.alg, lt.L.F), p}, policy);
        bool ok = expect(detail, r.super.even_dim() == 1 && r.super.odd_dim() == 2, "superdim is not (1|2)");
        Matrix c = cube_map(r.super);
        ok &= expect(detail, c.col_vec(0) == Vec{0, 2} && is_zero(c.col_vec(1)), "cube map is not x -> -y");
        ok &= expect(detail, !is_lie(r.super), "should not be a Lie superalgebra");
        LieSuperalgebra Q = quotient(r.super, cube_ideal(r.super));
        ok &= expect(detail, is_lie(Q) && Q.even_dim() == 1 && Q.odd_dim() == 1, "quotient is not Lie of (1|1)");
        ok &= expect(detail, check_cube_additivity(r.super, 10000, policy.seed).passed, "cube additivity");
        return ok;
    });

    criterion(9, "recipe equivalence on four inputs (Cor 4.2)", [&](std::string& detail) {
        bool ok = true;
        ok &= expect(detail, recipe_equivalence(jordanize(weak_counterexample(p), policy), policy),
                     "weak counterexample");
        ProtoIsoResult osp = proto_osp_isomorphism(3, 2, p, policy);
        ok &= expect(detail, recipe_equivalence(jordanize(osp.T, policy), policy), "prototypical first kind (3,2)");
        ProtoIsoResult psl = proto_psl_isomorphism(2, 1, p, policy);
        ok &= expect(detail, recipe_equivalence(jordanize(psl.T, policy), policy), "prototypical second kind (2,1)");
        auto s = choose_invertible_skew(cases[0].TS);
        FromStructurable FS = from_structurable(cases[0].TS.A, *s, policy, true);
        ok &= expect(detail, recipe_equivalence(jordanize(FS.T, policy), policy), "from_structurable (8,1)");
        return ok;
    });

    criterion(10, "Smirnov algebra: all 2187 skew elements have singular L_s", [&](std::string& detail) {
        InvolutiveAlgebra T = smirnov_algebra(cayley);
        bool ok = expect(detail, T.alg.dim == 35, "dim T(C) != 35");
        ok &= expect(detail, T.skew.dim() == 7, "skew dim != 7");
        std::vector<Matrix> Lb(7);
        for (size_t i = 0; i < 7; ++i) Lb[i] = T.alg.left_mul(T.skew.basis.row_vec(i));
        size_t checked = 0;
        for (u32 code = 0; code < 2187 && ok; ++code) {
            Matrix L(p, 35, 35);
            u32 t = code;
            for (size_t i = 0; i < 7; ++i) {
                u32 c = t % 3;
                t /= 3;
                if (c) L = mat_add(L, mat_scale(Lb[i], c));
            }
            ++checked;
            if (code == 0) continue;  // the zero element
            ok &= expect(detail, rank(L) < 35, "invertible L_s found at code " + std::to_string(code));
        }
        ok &= expect(detail, checked == 2187, "enumeration incomplete");
        ok &= expect(detail, !choose_invertible_skew(T, policy.seed, 64).has_value(),
                     "bounded search unexpectedly found an invertible skew element");
        return ok;
    });

    criterion(11, "hein <=> special (1,1) Freudenthal-Kantor, 7 systems", [&](std::string& detail) {
        struct Sys {
            std::string name;
            TripleSystem T;
        };
        std::vector<Sys> systems;
        systems.push_back({"weak-counterexample", weak_counterexample(p)});
        systems.push_back({"zero", TripleSystem(p, 2)});
        systems.push_back({"proto-osp(1,2)", proto_osp_isomorphism(1, 2, p, policy).T});
        systems.push_back({"proto-psl(2,1)", proto_psl_isomorphism(2, 1, p, policy).T});
        {
            auto s = choose_invertible_skew(cases[0].TS);
            systems.push_back({"jternary tensor(8,1)", from_structurable(cases[0].TS.A, *s, policy, false).T});
        }
        {
            TripleSystem bad(p, 2);
            for (size_t i = 0; i < 2; ++i)
                for (size_t j = 0; j < 2; ++j)
                    for (size_t k = 0; k < 2; ++k) bad.add_entry(i, j, k, 0, 1);
            systems.push_back({"pathological xyz=x", bad});
        }
        {
            // the (-1,1) Kantor triple of a structurable algebra fails Hein
            VTable vt = v_table(cases[0].TS.A);
            TripleSystem V(p, 8);
            for (size_t i = 0; i < 8; ++i)
                for (size_t j = 0; j < 8; ++j)
                    for (size_t k = 0; k < 8; ++k) {
                        Vec val(8, 0);
                        vt.axpy(val, p, i, j, k, 1);
                        V.set_entry_vec(i, j, k, val);
                    }
            systems.push_back({"structurable V-triple", V});
        }
        bool ok = true;
        size_t failing = 0;
        for (const auto& s : systems) {
            bool hein = all_passed(check_hein(s.T, policy));
            bool fk = all_passed(check_fk(s.T, 1, 1, policy)) && check_special(s.T, 1, 1, policy).passed;
            ok &= expect(detail, hein == fk, "verdicts disagree on " + s.name);
            if (!hein) ++failing;
        }
        ok &= expect(detail, systems.size() >= 6, "need at least 6 systems");
        ok &= expect(detail, failing >= 1, "need at least one failing system");
        return ok;
    });

    criterion(12, "Lemma 2.4 operator suites and the 5-graded lemma items", [&](std::string& detail) {
        bool ok = true;
        // subeq:STs operator identities (eps = 1) on constructed J-ternary systems
        auto sts_ok = [&](const TripleSystem& T, const std::string& name) {
            size_t n = T.dim;
            auto rep = run_tuple_check("sts:" + name, {n, n, n, n}, 10.0 * n * n, policy,
                                       [&](const std::vector<u64>& t) {
                                           Vec eu = unit_vec(n, t[0]), ev = unit_vec(n, t[1]);
                                           Vec ex = unit_vec(n, t[2]), ey = unit_vec(n, t[3]);
                                           Matrix Suv = T.s_op(eu, ev), Tuv = T.t_op(eu, ev);
                                           Matrix Lxy = T.l_op(ex, ey);
                                           if (commutator(Suv, Lxy) !=
                                               mat_add(T.l_op(Suv.apply(ex), ey), T.l_op(ex, Suv.apply(ey))))
                                               return false;
                                           if (commutator(Tuv, Lxy) !=
                                               mat_sub(T.l_op(Tuv.apply(ex), ey), T.l_op(ex, Tuv.apply(ey))))
                                               return false;
                                           if (commutator(Suv, T.t_op(ex, ey)) !=
                                               mat_add(T.t_op(Suv.apply(ex), ey), T.t_op(ex, Suv.apply(ey))))
                                               return false;
                                           if (commutator(Tuv, T.s_op(ex, ey)) !=
                                               mat_sub(T.t_op(ex, Tuv.apply(ey)), T.t_op(Tuv.apply(ex), ey)))
                                               return false;
                                           if (commutator(Tuv, T.t_op(ex, ey)) !=
                                               mat_sub(T.s_op(ex, Tuv.apply(ey)), T.s_op(Tuv.apply(ex), ey)))
                                               return false;
                                           return true;
                                       });
            return expect(detail, rep.passed, "subeq:STs failed on " + name + ": " + rep.summary());
        };
        ok &= sts_ok(weak_counterexample(p), "weak-counterexample");
        ProtoIsoResult osp12 = proto_osp_isomorphism(1, 2, p, policy);
        ok &= sts_ok(osp12.T, "proto-osp(1,2)");
        ProtoIsoResult psl21 = proto_psl_isomorphism(2, 1, p, policy);
        ok &= sts_ok(psl21.T, "proto-psl(2,1)");
        auto s81 = choose_invertible_skew(cases[0].TS);
        FromStructurable FS = from_structurable(cases[0].TS.A, *s81, policy, false);
        ok &= sts_ok(FS.T, "jternary tensor(8,1)");

        // Lemma le:5graded items on constructed 5-graded algebras
        auto sl2_ok = [&](GradedLieAlgebra& G, const std::string& name) {
            Sl2Data sd = sl2_utilities(G);
            return expect_reports(detail, sd.reports, "5-graded lemma on " + name);
        };
        {
            JTernaryPackage pkg = jordanize(weak_counterexample(p), policy);
            LTAlgebra lt = build_LT(pkg, policy);
            ok &= sl2_ok(lt.L, "L(T) weak");
        }
        {
            JTernaryPackage pkg = jordanize(FS.T, policy);
            LTAlgebra lt = build_LT(pkg, policy);
            ok &= sl2_ok(lt.L, "L(T) tensor(8,1)");
        }
        for (auto& tc : cases) {
            auto s = choose_invertible_skew(tc.TS);
            auto sc = tc.TS.albert.from_ambient(*s);
            PrimeField F(p);
            u32 q = tc.TS.albert.Q(*sc);
            Vec t = tc.TS.albert.to_ambient(vec_scale(F, tc.TS.albert.sharp_apply(*sc), F.neg(F.inv(q))));
            attach_kantor_sl2(tc.K, tc.TS.A, *s, t);
            ok &= sl2_ok(tc.K.L, "K(A,-) d2=" + std::to_string(tc.d2));
        }
        return ok;
    });

    std::printf("\n%d of 12 criteria passed\n", 12 - g_failures);
    return g_failures;
}
