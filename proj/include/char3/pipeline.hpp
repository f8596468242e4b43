#ifndef CHAR3_PIPELINE_HPP
#define CHAR3_PIPELINE_HPP

#include "char3/identity.hpp"
#include "char3/json_io.hpp"

namespace char3 {

// ---------------------------------------------------------------------------
// The magic square of Lie superalgebras
// ---------------------------------------------------------------------------

struct MagicCell {
    size_t d1 = 0, d2 = 0;
    bool empty = false;
    std::string label;   // the paper's name for the cell
    std::string match;   // "reference" | "named-by-paper" | "empty"
    Fingerprint fp;
    bool ok = false;
    std::string detail;
};

namespace pipeline_detail {

struct CellExpect {
    std::string label;
    size_t even, odd;
    // reference spec when a gl/sl/psl/osp comparison target exists
    bool has_ref = false;
    RefKind kind = RefKind::psl;
    size_t m = 0, n = 0;
    bool named = false;  // one of the Cayley cells accepted by fingerprint evidence
};

inline CellExpect cell_expect(size_t d1, size_t d2) {
    size_t a = std::min(d1, d2), b = std::max(d1, d2);
    if (a == 1 && b == 2) return {"psl(1|1)", 0, 2, true, RefKind::psl, 1, 1, false};
    if (a == 1 && b == 4) return {"osp(2|2)", 4, 4, true, RefKind::osp, 2, 2, false};
    if (a == 1 && b == 8) return {"psl(4|1)", 15, 8, true, RefKind::psl, 4, 1, false};
    if (a == 2 && b == 2) return {"psl(1|1)+psl(1|1)", 0, 4, false, RefKind::psl, 0, 0, false};
    if (a == 2 && b == 4) return {"psl(2|2)", 6, 8, true, RefKind::psl, 2, 2, false};
    if (a == 2 && b == 8) return {"g(3,3)", 21, 16, false, RefKind::psl, 0, 0, true};
    if (a == 4 && b == 4) return {"osp(4|4)", 16, 16, true, RefKind::osp, 4, 4, false};
    if (a == 4 && b == 8) return {"el(5;3)", 39, 32, false, RefKind::psl, 0, 0, true};
    if (a == 8 && b == 8) return {"g(6,6)", 78, 64, false, RefKind::psl, 0, 0, true};
    throw std::invalid_argument("cell_expect: invalid cell");
}

}  // namespace pipeline_detail

/// Run the J-ternary + semisimplification pipeline for one (d1,d2) cell.
inline MagicCell magic_cell(size_t d1, size_t d2, u32 p, const CheckPolicy& policy = {}) {
    MagicCell cell;
    cell.d1 = d1;
    cell.d2 = d2;
    if (d1 == 1 && d2 == 1) {
        cell.empty = true;
        cell.label = "(empty)";
        cell.match = "empty";
        cell.ok = true;
        cell.detail = "S = 0: no J-ternary algebra";
        return cell;
    }
    auto exp = pipeline_detail::cell_expect(d1, d2);
    cell.label = exp.label;
    TensorStructurable TS = tensor_structurable(split_composition(d1, p), split_composition(d2, p), policy);
    auto s = choose_invertible_skew(TS);
    if (!s) {
        cell.detail = "no invertible skew element found";
        return cell;
    }
    FromStructurable FS = from_structurable(TS.A, *s, policy, false);
    JTernaryPackage pkg = jordanize(FS.T, policy);
    LieSuperalgebra lss = direct_from_jternary(pkg, policy);
    cell.fp = fingerprint(lss, policy.seed);

    if (cell.fp.even != exp.even || cell.fp.odd != exp.odd) {
        cell.detail = "superdimension mismatch: got (" + std::to_string(cell.fp.even) + "|" +
                      std::to_string(cell.fp.odd) + "), expected (" + std::to_string(exp.even) + "|" +
                      std::to_string(exp.odd) + ")";
        return cell;
    }
    if (exp.has_ref) {
        cell.match = "reference";
        LieSuperalgebra ref = build_reference(exp.kind, exp.m, exp.n, p);
        Fingerprint rf = fingerprint(ref, policy.seed);
        if (!cell.fp.core_match(rf)) {
            cell.detail = "fingerprint does not match the reference construction";
            return cell;
        }
    } else if (exp.named) {
        cell.match = "named-by-paper";
        if (cell.fp.center_even + cell.fp.center_odd != 0) {
            cell.detail = "nontrivial center";
            return cell;
        }
        if (cell.fp.derived_even != cell.fp.even || cell.fp.derived_odd != cell.fp.odd) {
            cell.detail = "derived subalgebra is not the whole algebra";
            return cell;
        }
        if (!cell.fp.odd_irreducible_heuristic) {
            cell.detail = "odd part failed the irreducibility heuristic";
            return cell;
        }
    } else {
        cell.match = "superdim";
    }
    cell.ok = true;
    return cell;
}

inline std::vector<MagicCell> magic_square(u32 p, const CheckPolicy& policy = {}) {
    if (p != 3) throw std::invalid_argument("magic_square: the table is specific to p = 3");
    std::vector<MagicCell> cells;
    for (size_t d1 : {1, 2, 4, 8})
        for (size_t d2 : {1, 2, 4, 8}) cells.push_back(magic_cell(d1, d2, p, policy));
    // symmetric cells must agree on superdimensions
    auto find = [&](size_t d1, size_t d2) -> MagicCell& {
        for (auto& c : cells)
            if (c.d1 == d1 && c.d2 == d2) return c;
        throw std::logic_error("magic_square: missing cell");
    };
    for (size_t d1 : {1, 2, 4, 8})
        for (size_t d2 : {1, 2, 4, 8}) {
            MagicCell& a = find(d1, d2);
            MagicCell& b = find(d2, d1);
            if (!a.empty && (a.fp.even != b.fp.even || a.fp.odd != b.fp.odd)) {
                a.ok = false;
                a.detail = "symmetric cells disagree";
            }
        }
    return cells;
}

inline json magic_square_to_json(const std::vector<MagicCell>& cells) {
    json arr = json::array();
    for (const auto& c : cells) {
        json j;
        j["d1"] = c.d1;
        j["d2"] = c.d2;
        j["label"] = c.label;
        j["match"] = c.match;
        j["ok"] = c.ok;
        if (c.empty) {
            j["empty"] = true;
        } else {
            j["fingerprint"] = fingerprint_to_json(c.fp);
        }
        if (!c.detail.empty()) j["detail"] = c.detail;
        arr.push_back(std::move(j));
    }
    return arr;
}

// ---------------------------------------------------------------------------
// Named constructions for the CLI
// ---------------------------------------------------------------------------

struct Artifact {
    enum class Kind { Composition, Structurable, Involutive, Triple, Graded, Super };
    Kind kind;
    std::optional<CompositionAlgebra> comp;
    std::optional<TensorStructurable> tensor;
    std::optional<StructurableAlgebra> str;
    std::optional<InvolutiveAlgebra> involutive;
    std::optional<TripleSystem> triple;
    std::optional<GradedLieAlgebra> graded;
    std::optional<LieSuperalgebra> super;
};

namespace pipeline_detail {

inline std::vector<std::string> tokenize_spec(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ' ' || c == '(' || c == ')' || c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

inline size_t parse_count(const std::vector<std::string>& toks, size_t idx, const std::string& what) {
    if (idx >= toks.size()) throw std::invalid_argument("construction spec: missing " + what);
    try {
        return static_cast<size_t>(std::stoul(toks[idx]));
    } catch (...) {
        throw std::invalid_argument("construction spec: bad " + what + " '" + toks[idx] + "'");
    }
}

}  // namespace pipeline_detail

/// Resolve a named recipe: composition(d), tensor(d1,d2), smirnov,
/// weak-counterexample, proto-osp(m,n), proto-psl(m,n), jternary <spec>,
/// kt <spec>, kantor <spec> [v2], lt <triple-spec>, lss <triple-spec>,
/// reference {gl|sl|psl|osp}(m,n).
inline Artifact construct_by_spec(const std::string& spec, u32 p = 3, const CheckPolicy& policy = {}) {
    using pipeline_detail::parse_count;
    auto toks = pipeline_detail::tokenize_spec(spec);
    if (toks.empty()) throw std::invalid_argument("construction spec: empty");
    const std::string& head = toks[0];
    Artifact a;
    auto tensor_at = [&](size_t idx) {
        size_t d1 = parse_count(toks, idx + 1, "dimension");
        size_t d2 = parse_count(toks, idx + 2, "dimension");
        return tensor_structurable(split_composition(d1, p), split_composition(d2, p), policy);
    };
    auto triple_of = [&](size_t idx) -> TripleSystem {
        if (idx >= toks.size()) throw std::invalid_argument("construction spec: missing inner spec");
        const std::string& h = toks[idx];
        if (h == "weak-counterexample") return weak_counterexample(p);
        if (h == "proto-osp")
            return proto_osp_isomorphism(parse_count(toks, idx + 1, "dim X"), parse_count(toks, idx + 2, "dim Y"), p,
                                         policy)
                .T;
        if (h == "proto-psl")
            return proto_psl_isomorphism(parse_count(toks, idx + 1, "dim X"), parse_count(toks, idx + 2, "dim Y"), p,
                                         policy)
                .T;
        if (h == "jternary" && idx + 1 < toks.size() && toks[idx + 1] == "tensor") {
            TensorStructurable TS = tensor_at(idx + 1);
            auto s = choose_invertible_skew(TS);
            if (!s) throw std::invalid_argument("construction spec: no invertible skew element");
            return from_structurable(TS.A, *s, policy, false).T;
        }
        throw std::invalid_argument("construction spec: unknown triple system '" + h + "'");
    };
    if (head == "composition") {
        a.kind = Artifact::Kind::Composition;
        a.comp = split_composition(parse_count(toks, 1, "dimension"), p);
        return a;
    }
    if (head == "tensor") {
        a.kind = Artifact::Kind::Structurable;
        a.tensor = tensor_at(0);
        a.str = a.tensor->A;
        return a;
    }
    if (head == "smirnov") {
        a.kind = Artifact::Kind::Involutive;
        a.involutive = smirnov_algebra(split_composition(8, p));
        return a;
    }
    if (head == "weak-counterexample" || head == "proto-osp" || head == "proto-psl" || head == "jternary") {
        a.kind = Artifact::Kind::Triple;
        a.triple = triple_of(0);
        return a;
    }
    if (head == "kt") {
        if (toks.size() < 2 || toks[1] != "tensor") throw std::invalid_argument("construction spec: kt needs tensor(...)");
        TensorStructurable TS = tensor_at(1);
        a.kind = Artifact::Kind::Triple;
        a.triple = kt_triple_system(TS.A, policy).T;
        return a;
    }
    if (head == "kantor") {
        if (toks.size() < 2 || toks[1] != "tensor")
            throw std::invalid_argument("construction spec: kantor needs tensor(...)");
        TensorStructurable TS = tensor_at(1);
        KantorVariant v = KantorVariant::v1;
        if (!toks.empty() && toks.back() == "v2") v = KantorVariant::v2;
        a.kind = Artifact::Kind::Graded;
        a.graded = build_kantor(TS.A, v, policy).L;
        return a;
    }
    if (head == "lt") {
        a.kind = Artifact::Kind::Graded;
        a.graded = build_LT(jordanize(triple_of(1), policy), policy).L;
        return a;
    }
    if (head == "lss") {
        a.kind = Artifact::Kind::Super;
        a.super = direct_from_jternary(jordanize(triple_of(1), policy), policy);
        return a;
    }
    if (head == "reference") {
        if (toks.size() < 4) throw std::invalid_argument("construction spec: reference needs kind(m,n)");
        RefKind k;
        if (toks[1] == "gl")
            k = RefKind::gl;
        else if (toks[1] == "sl")
            k = RefKind::sl;
        else if (toks[1] == "psl")
            k = RefKind::psl;
        else if (toks[1] == "osp")
            k = RefKind::osp;
        else
            throw std::invalid_argument("construction spec: unknown reference kind '" + toks[1] + "'");
        a.kind = Artifact::Kind::Super;
        a.super = build_reference(k, parse_count(toks, 2, "m"), parse_count(toks, 3, "n"), p);
        return a;
    }
    throw std::invalid_argument("construction spec: unknown recipe '" + head + "'");
}

inline json artifact_to_json(const Artifact& a) {
    switch (a.kind) {
        case Artifact::Kind::Composition: {
            json j = algebra_to_json(a.comp->alg);
            j["inv"] = matrix_to_json(a.comp->conj_mat);
            j["unit"] = a.comp->unit;
            return j;
        }
        case Artifact::Kind::Structurable: return structurable_to_json(*a.str);
        case Artifact::Kind::Involutive: return involutive_to_json(*a.involutive);
        case Artifact::Kind::Triple: return triple_to_json(*a.triple);
        case Artifact::Kind::Graded: return graded_to_json(*a.graded);
        case Artifact::Kind::Super: return super_to_json(*a.super);
    }
    throw std::logic_error("artifact_to_json: bad kind");
}

inline Artifact artifact_from_json(const json& j) {
    Artifact a;
    if (j.contains("triple")) {
        a.kind = Artifact::Kind::Triple;
        a.triple = triple_from_json(j);
        return a;
    }
    if (j.contains("parity")) {
        a.kind = Artifact::Kind::Super;
        a.super = super_from_json(j);
        return a;
    }
    if (j.contains("grading")) {
        a.kind = Artifact::Kind::Graded;
        a.graded = graded_from_json(j);
        return a;
    }
    if (j.contains("inv")) {
        Algebra alg = algebra_from_json(j);
        Matrix inv = matrix_from_json(j.at("inv"), alg.p);
        if (j.contains("unit")) {
            a.kind = Artifact::Kind::Structurable;
            a.str = make_structurable(alg, inv, j.at("unit").get<Vec>());
            return a;
        }
        a.kind = Artifact::Kind::Involutive;
        InvolutiveAlgebra ia{alg, inv, std::nullopt, {}, {}};
        compute_skew_herm(ia);
        a.involutive = ia;
        return a;
    }
    a.kind = Artifact::Kind::Graded;
    a.graded = graded_from_json(j);
    return a;
}

// ---------------------------------------------------------------------------
// Named check suites
// ---------------------------------------------------------------------------

/// Suites: hein, fk (special (1,1)), allison, structurable, lts, jacobi,
/// super, super-cube.
inline std::vector<CheckReport> run_suite(const Artifact& a, const std::string& suite, const CheckPolicy& policy) {
    if (suite == "hein") {
        if (!a.triple) throw std::invalid_argument("suite hein: needs a triple system");
        return check_hein(*a.triple, policy);
    }
    if (suite == "fk") {
        if (!a.triple) throw std::invalid_argument("suite fk: needs a triple system");
        auto r = check_fk(*a.triple, 1, 1, policy);
        r.push_back(check_special(*a.triple, 1, 1, policy));
        return r;
    }
    if (suite == "allison") {
        if (!a.triple) throw std::invalid_argument("suite allison: needs a triple system");
        JTernaryPackage pkg = jordanize(*a.triple, policy);
        auto r = pkg.reports;
        auto al = check_allison(pkg, policy);
        r.insert(r.end(), al.begin(), al.end());
        return r;
    }
    if (suite == "structurable") {
        const StructurableAlgebra* A = a.str ? &*a.str : nullptr;
        if (!A) throw std::invalid_argument("suite structurable: needs a unital algebra with involution");
        StructurableAlgebra copy = *A;
        copy.reports.clear();
        VTable vt = v_table(copy);
        std::vector<CheckReport> r;
        r.push_back(detail::check_str1(copy, vt, policy));
        r.push_back(detail::check_str2(copy, policy));
        return r;
    }
    if (suite == "lts") {
        if (!a.triple) throw std::invalid_argument("suite lts: needs a triple system");
        const TripleSystem& T = *a.triple;
        size_t N = T.dim;
        std::vector<CheckReport> out;
        out.push_back(run_tuple_check("lts1", {N, N, N}, 4.0 * N, policy, [&](const std::vector<u64>& t) {
            Vec v(N, 0);
            T.acc(v, t[0], t[1], t[2], 1);
            T.acc(v, t[1], t[0], t[2], 1);
            return is_zero(v);
        }));
        out.push_back(run_tuple_check("lts2", {N, N, N}, 6.0 * N, policy, [&](const std::vector<u64>& t) {
            Vec v(N, 0);
            T.acc(v, t[0], t[1], t[2], 1);
            T.acc(v, t[1], t[2], t[0], 1);
            T.acc(v, t[2], t[0], t[1], 1);
            return is_zero(v);
        }));
        out.push_back(run_tuple_check("lts3", {N, N, N, N, N}, 8.0 * N, policy, [&](const std::vector<u64>& t) {
            Vec lhs(N, 0), rhs(N, 0);
            tri_detail::acc_right_of(T, lhs, t[0], t[1], tri_detail::basis_triple(T, t[2], t[3], t[4]), 1);
            tri_detail::acc_left_of(T, rhs, tri_detail::basis_triple(T, t[0], t[1], t[2]), t[3], t[4], 1);
            tri_detail::acc_mid_of(T, rhs, t[2], tri_detail::basis_triple(T, t[0], t[1], t[3]), t[4], 1);
            tri_detail::acc_right_of(T, rhs, t[2], t[3], tri_detail::basis_triple(T, t[0], t[1], t[4]), 1);
            return lhs == rhs;
        }));
        return out;
    }
    if (suite == "jacobi") {
        const Algebra* L = nullptr;
        if (a.graded)
            L = &a.graded->alg;
        else if (a.str)
            L = &a.str->alg;
        if (!L) throw std::invalid_argument("suite jacobi: needs an algebra");
        return {check_anticommutative(*L), check_jacobi(*L, policy)};
    }
    if (suite == "super" || suite == "super-cube") {
        // a triple system is first sent through the L^ss pipeline
        std::optional<LieSuperalgebra> built;
        const LieSuperalgebra* S = nullptr;
        if (a.super) {
            S = &*a.super;
        } else if (a.triple) {
            built = direct_from_jternary(jordanize(*a.triple, policy), policy);
            S = &*built;
        } else {
            throw std::invalid_argument("suite " + suite + ": needs a superalgebra or a triple system");
        }
        if (suite == "super") {
            auto r = check_weak(*S, policy);
            r.push_back(check_cube_additivity(*S, 10000, policy.seed));
            return r;
        }
        const LieSuperalgebra& sup = *S;
        auto r = check_weak(sup, policy);
        CheckReport c;
        c.name = "cube_condition";
        if (sup.p == 3) {
            Matrix m = cube_map(sup);
            c.checked = m.cols;
            if (!m.is_zero()) {
                c.passed = false;
                for (size_t col = 0; col < m.cols; ++col)
                    if (!is_zero(m.col_vec(col))) {
                        c.cex = Counterexample{{col}, "odd basis witness [[x,x],x] != 0"};
                        break;
                    }
            }
        }
        r.push_back(std::move(c));
        return r;
    }
    throw std::invalid_argument("unknown check suite '" + suite + "'");
}

}  // namespace char3

#endif
