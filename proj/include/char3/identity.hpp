#ifndef CHAR3_IDENTITY_HPP
#define CHAR3_IDENTITY_HPP

#include <map>
#include <memory>

#include "char3/super.hpp"

namespace char3 {

/// Multilinear-identity DSL: one relation per source, operators applied to
/// variables or nested calls, integer coefficients with `*`, `+`/`-`, and
/// the literal `inv2` standing for (p+1)/2. `#` starts a comment.
///
///   T(x,y,T(u,v,z)) - T(T(x,y,u),v,z) - T(u,T(y,x,v),z) - T(u,v,T(x,y,z)) = 0

struct SyntaxError : std::runtime_error {
    size_t line, column;
    SyntaxError(const std::string& msg, size_t l, size_t c)
        : std::runtime_error(msg + " at line " + std::to_string(l) + ", column " + std::to_string(c)),
          line(l),
          column(c) {}
};

struct IdentityAst {
    struct Node;
    using NodePtr = std::shared_ptr<Node>;

    struct Term {
        i64 coeff = 1;
        int inv2_pow = 0;  // number of inv2 factors
        NodePtr prim;
    };
    struct Expr {
        std::vector<Term> terms;
    };
    struct Node {
        bool is_var = true;
        std::string name;
        std::vector<Expr> args;  // for calls
    };

    Expr lhs, rhs;

    static bool node_equal(const NodePtr& a, const NodePtr& b);
    static bool expr_equal(const Expr& a, const Expr& b) {
        if (a.terms.size() != b.terms.size()) return false;
        for (size_t i = 0; i < a.terms.size(); ++i) {
            if (a.terms[i].coeff != b.terms[i].coeff || a.terms[i].inv2_pow != b.terms[i].inv2_pow ||
                !node_equal(a.terms[i].prim, b.terms[i].prim))
                return false;
        }
        return true;
    }
    bool operator==(const IdentityAst& o) const { return expr_equal(lhs, o.lhs) && expr_equal(rhs, o.rhs); }
};

inline bool IdentityAst::node_equal(const NodePtr& a, const NodePtr& b) {
    if (!a || !b) return !a && !b;
    if (a->is_var != b->is_var || a->name != b->name || a->args.size() != b->args.size()) return false;
    for (size_t i = 0; i < a->args.size(); ++i)
        if (!expr_equal(a->args[i], b->args[i])) return false;
    return true;
}

namespace dsl_detail {

struct Lexer {
    const std::string& src;
    size_t pos = 0, line = 1, col = 1;

    explicit Lexer(const std::string& s) : src(s) {}

    void advance() {
        if (pos < src.size()) {
            if (src[pos] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++pos;
        }
    }
    void skip_ws() {
        while (pos < src.size()) {
            char c = src[pos];
            if (c == '#') {
                while (pos < src.size() && src[pos] != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else {
                break;
            }
        }
    }
    bool eof() {
        skip_ws();
        return pos >= src.size();
    }
    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }
    [[noreturn]] void fail(const std::string& msg) { throw SyntaxError(msg, line, col); }
};

inline IdentityAst::Expr parse_expr(Lexer& lx);

inline IdentityAst::NodePtr parse_primary_node(Lexer& lx) {
    auto node = std::make_shared<IdentityAst::Node>();
    std::string name;
    char c = lx.peek();
    if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_')) lx.fail("expected identifier");
    while (lx.pos < lx.src.size()) {
        char ch = lx.src[lx.pos];
        if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_') {
            name += ch;
            lx.advance();
        } else {
            break;
        }
    }
    node->name = name;
    if (lx.peek() == '(') {
        node->is_var = false;
        lx.advance();
        while (true) {
            node->args.push_back(parse_expr(lx));
            char d = lx.peek();
            if (d == ',') {
                lx.advance();
                continue;
            }
            if (d == ')') {
                lx.advance();
                break;
            }
            lx.fail("expected ',' or ')'");
        }
    }
    return node;
}

/// term := coefficient-factors '*' ... '*' primary; a primary may also be a
/// parenthesized expression, which distributes the coefficient.
inline void parse_term_into(Lexer& lx, IdentityAst::Expr& out, i64 sign) {
    i64 coeff = sign;
    int inv2 = 0;
    while (true) {
        char c = lx.peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            i64 v = 0;
            while (lx.pos < lx.src.size() && std::isdigit(static_cast<unsigned char>(lx.src[lx.pos]))) {
                v = v * 10 + (lx.src[lx.pos] - '0');
                lx.advance();
            }
            coeff *= v;
        } else if (c == '(') {
            lx.advance();
            IdentityAst::Expr inner = parse_expr(lx);
            if (lx.peek() != ')') lx.fail("expected ')'");
            lx.advance();
            for (auto& t : inner.terms) {
                IdentityAst::Term nt = t;
                nt.coeff *= coeff;
                nt.inv2_pow += inv2;
                out.terms.push_back(std::move(nt));
            }
            return;
        } else {
            // identifier: inv2 literal or a variable/call primary
            auto node = parse_primary_node(lx);
            if (node->is_var && node->name == "inv2") {
                ++inv2;
            } else {
                IdentityAst::Term t;
                t.coeff = coeff;
                t.inv2_pow = inv2;
                t.prim = node;
                out.terms.push_back(std::move(t));
                return;
            }
        }
        char d = lx.peek();
        if (d == '*') {
            lx.advance();
            continue;
        }
        // allow juxtaposition like "2 K(x,y,z)" only through '*'; a bare
        // coefficient term (e.g. "0") ends here
        if (coeff == 0 || std::isdigit(static_cast<unsigned char>(c))) {
            IdentityAst::Term t;
            t.coeff = coeff;
            t.inv2_pow = inv2;
            t.prim = nullptr;  // pure scalar term; only 0 is meaningful
            if (coeff != 0) lx.fail("a nonzero scalar term needs an operator or variable");
            out.terms.push_back(std::move(t));
            return;
        }
        lx.fail("expected '*'");
    }
}

inline IdentityAst::Expr parse_expr(Lexer& lx) {
    IdentityAst::Expr e;
    i64 sign = 1;
    char c = lx.peek();
    if (c == '-') {
        sign = -1;
        lx.advance();
    } else if (c == '+') {
        lx.advance();
    }
    parse_term_into(lx, e, sign);
    while (true) {
        char d = lx.peek();
        if (d == '+' || d == '-') {
            lx.advance();
            parse_term_into(lx, e, d == '-' ? -1 : 1);
        } else {
            break;
        }
    }
    return e;
}

inline void print_expr(std::ostream& os, const IdentityAst::Expr& e);

inline void print_node(std::ostream& os, const IdentityAst::NodePtr& n) {
    if (!n) {
        os << "0";
        return;
    }
    os << n->name;
    if (!n->is_var) {
        os << "(";
        for (size_t i = 0; i < n->args.size(); ++i) {
            if (i) os << ",";
            print_expr(os, n->args[i]);
        }
        os << ")";
    }
}

inline void print_expr(std::ostream& os, const IdentityAst::Expr& e) {
    for (size_t i = 0; i < e.terms.size(); ++i) {
        const auto& t = e.terms[i];
        i64 c = t.coeff;
        if (i == 0) {
            if (c < 0) os << "- ";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        i64 a = c < 0 ? -c : c;
        if (!t.prim) {
            os << a;
            continue;
        }
        if (a != 1) os << a << "*";
        for (int k = 0; k < t.inv2_pow; ++k) os << "inv2*";
        print_node(os, t.prim);
    }
    if (e.terms.empty()) os << "0";
}

}  // namespace dsl_detail

inline IdentityAst parse_identity(const std::string& src) {
    dsl_detail::Lexer lx(src);
    IdentityAst ast;
    ast.lhs = dsl_detail::parse_expr(lx);
    if (lx.peek() != '=') lx.fail("expected '='");
    lx.advance();
    ast.rhs = dsl_detail::parse_expr(lx);
    if (!lx.eof()) lx.fail("unexpected trailing input");
    return ast;
}

inline std::string pretty_print(const IdentityAst& ast) {
    std::ostringstream os;
    dsl_detail::print_expr(os, ast.lhs);
    os << " = ";
    dsl_detail::print_expr(os, ast.rhs);
    return os.str();
}

// ---------------------------------------------------------------------------
// Binding and checking
// ---------------------------------------------------------------------------

struct BoundOp {
    std::vector<int> arg_spaces;
    int out_space;
    std::function<Vec(const std::vector<Vec>&)> fn;
};

/// A variable sort: enumeration basis inside an ambient coordinate space.
struct VarSpace {
    size_t ambient = 0;
    std::vector<Vec> basis;
};

struct Binding {
    u32 p = 3;
    std::map<std::string, BoundOp> ops;
    std::vector<VarSpace> spaces;
    std::map<std::string, int> var_sort;  // optional pre-assigned sorts

    static VarSpace full_space(size_t n) {
        VarSpace s;
        s.ambient = n;
        for (size_t i = 0; i < n; ++i) s.basis.push_back(unit_vec(n, i));
        return s;
    }
};

namespace dsl_detail {

struct Analysis {
    std::vector<std::string> vars;          // in first-appearance order
    std::map<std::string, int> var_space;   // resolved sorts
    int relation_space = -1;
};

inline int infer_expr(const IdentityAst::Expr& e, const Binding& b, Analysis& an, int expected);

inline int infer_node(const IdentityAst::NodePtr& n, const Binding& b, Analysis& an, int expected) {
    if (!n) return expected;  // scalar 0 term fits anywhere
    if (n->is_var) {
        auto it = an.var_space.find(n->name);
        if (it == an.var_space.end()) {
            if (expected < 0) throw std::invalid_argument("identity binding: cannot infer the sort of '" + n->name + "'");
            an.var_space[n->name] = expected;
            an.vars.push_back(n->name);
            return expected;
        }
        // a pre-assigned sort may be a restriction (e.g. the odd part) of the
        // space an operator expects; ambient dimensions must agree
        if (expected >= 0 && it->second != expected &&
            b.spaces[it->second].ambient != b.spaces[expected].ambient)
            throw std::invalid_argument("identity binding: variable '" + n->name + "' used with two different sorts");
        return it->second;
    }
    auto op = b.ops.find(n->name);
    if (op == b.ops.end()) throw std::invalid_argument("identity binding: unknown operator '" + n->name + "'");
    if (op->second.arg_spaces.size() != n->args.size())
        throw std::invalid_argument("identity binding: operator '" + n->name + "' applied to " +
                                    std::to_string(n->args.size()) + " arguments, expected " +
                                    std::to_string(op->second.arg_spaces.size()));
    if (expected >= 0 && op->second.out_space != expected)
        throw std::invalid_argument("identity binding: operator '" + n->name + "' has the wrong codomain here");
    for (size_t i = 0; i < n->args.size(); ++i) infer_expr(n->args[i], b, an, op->second.arg_spaces[i]);
    return op->second.out_space;
}

inline int infer_expr(const IdentityAst::Expr& e, const Binding& b, Analysis& an, int expected) {
    int space = expected;
    for (const auto& t : e.terms) space = infer_node(t.prim, b, an, space);
    // second pass now that the space may be known
    for (const auto& t : e.terms) infer_node(t.prim, b, an, space);
    return space;
}

inline Vec eval_expr(const IdentityAst::Expr& e, const Binding& b, const Analysis& an,
                     const std::map<std::string, Vec>& env, int space);

inline Vec eval_node(const IdentityAst::NodePtr& n, const Binding& b, const Analysis& an,
                     const std::map<std::string, Vec>& env) {
    if (n->is_var) return env.at(n->name);
    const BoundOp& op = b.ops.at(n->name);
    std::vector<Vec> args;
    args.reserve(n->args.size());
    for (size_t i = 0; i < n->args.size(); ++i) args.push_back(eval_expr(n->args[i], b, an, env, op.arg_spaces[i]));
    return op.fn(args);
}

inline Vec eval_expr(const IdentityAst::Expr& e, const Binding& b, const Analysis& an,
                     const std::map<std::string, Vec>& env, int space) {
    PrimeField F(b.p);
    Vec acc(b.spaces[space].ambient, 0);
    for (const auto& t : e.terms) {
        if (!t.prim) continue;  // scalar 0
        u32 c = F.reduce(t.coeff);
        for (int k = 0; k < t.inv2_pow; ++k) c = F.mul(c, F.half());
        if (!c) continue;
        Vec v = eval_node(t.prim, b, an, env);
        vec_add_scaled(F, acc, v, c);
    }
    return acc;
}

}  // namespace dsl_detail

/// Analyze sorts, then check the relation on all basis tuples (exhaustive)
/// or on seeded random vectors.
inline CheckReport check_identity(const IdentityAst& ast, const Binding& b, const CheckPolicy& policy = {},
                                  const std::string& name = "identity") {
    dsl_detail::Analysis an;
    for (const auto& [v, s] : b.var_sort) {
        an.var_space[v] = s;
        an.vars.push_back(v);
    }
    int ls = dsl_detail::infer_expr(ast.lhs, b, an, -1);
    int rs = dsl_detail::infer_expr(ast.rhs, b, an, ls);
    if (ls < 0) ls = rs;
    if (ls < 0) throw std::invalid_argument("identity binding: cannot infer the relation codomain");
    dsl_detail::infer_expr(ast.lhs, b, an, ls);
    // drop pre-assigned sorts that never occur
    std::vector<std::string> vars;
    for (const auto& v : an.vars) {
        bool used = false;
        std::function<void(const IdentityAst::Expr&)> scan = [&](const IdentityAst::Expr& e) {
            for (const auto& t : e.terms) {
                std::function<void(const IdentityAst::NodePtr&)> scan_node = [&](const IdentityAst::NodePtr& n) {
                    if (!n) return;
                    if (n->is_var) {
                        if (n->name == v) used = true;
                        return;
                    }
                    for (const auto& a : n->args) scan(a);
                };
                scan_node(t.prim);
            }
        };
        scan(ast.lhs);
        scan(ast.rhs);
        if (used) vars.push_back(v);
    }

    std::vector<u64> dims;
    for (const auto& v : vars) dims.push_back(b.spaces[an.var_space.at(v)].basis.size());
    double weight = 4.0 * b.spaces[ls].ambient * (1 + vars.size());
    const int relspace = ls;
    return run_tuple_check(name, dims, weight, policy, [&, relspace](const std::vector<u64>& t) {
        std::map<std::string, Vec> env;
        for (size_t i = 0; i < vars.size(); ++i) env[vars[i]] = b.spaces[an.var_space.at(vars[i])].basis[t[i]];
        Vec lhs = dsl_detail::eval_expr(ast.lhs, b, an, env, relspace);
        Vec rhs = dsl_detail::eval_expr(ast.rhs, b, an, env, relspace);
        return lhs == rhs;
    });
}

/// Random-vector variant: samples each variable as a random combination of
/// its sort basis (used by the meta-test and the CLI random mode).
inline CheckReport check_identity_random_vectors(const IdentityAst& ast, const Binding& b, u64 samples,
                                                 u64 seed = kDefaultSeed, const std::string& name = "identity") {
    dsl_detail::Analysis an;
    for (const auto& [v, s] : b.var_sort) {
        an.var_space[v] = s;
        an.vars.push_back(v);
    }
    int ls = dsl_detail::infer_expr(ast.lhs, b, an, -1);
    int rs = dsl_detail::infer_expr(ast.rhs, b, an, ls);
    if (ls < 0) ls = rs;
    PrimeField F(b.p);
    CheckReport rep;
    rep.name = name;
    rep.exhaustive = false;
    rep.checked = samples;
    auto fail = parallel_first_fail(samples, [&](u64 i) {
        u64 s = splitmix64(seed ^ (i * 1315423911ULL + 3));
        std::map<std::string, Vec> env;
        for (const auto& [v, spc] : an.var_space) {
            const VarSpace& vs = b.spaces[spc];
            Vec x(vs.ambient, 0);
            for (const auto& bv : vs.basis) {
                s = splitmix64(s);
                vec_add_scaled(F, x, bv, static_cast<u32>(s % b.p));
            }
            env[v] = std::move(x);
        }
        Vec lhs = dsl_detail::eval_expr(ast.lhs, b, an, env, ls);
        Vec rhs = dsl_detail::eval_expr(ast.rhs, b, an, env, ls);
        return lhs == rhs;
    });
    if (fail) {
        rep.passed = false;
        rep.cex = Counterexample{{*fail}, "(random-vector sample)"};
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Standard bindings
// ---------------------------------------------------------------------------

/// T(x,y,z) and K(x,y,z) = x z y - y z x over a triple system.
inline Binding bind_triple_system(const TripleSystem& T) {
    Binding b;
    b.p = T.p;
    b.spaces.push_back(Binding::full_space(T.dim));
    b.ops["T"] = BoundOp{{0, 0, 0}, 0, [&T](const std::vector<Vec>& a) { return T.triple(a[0], a[1], a[2]); }};
    b.ops["K"] = BoundOp{{0, 0, 0}, 0, [&T](const std::vector<Vec>& a) {
                             PrimeField F(T.p);
                             return vec_sub(F, T.triple(a[0], a[2], a[1]), T.triple(a[1], a[2], a[0]));
                         }};
    return b;
}

/// m(x,y) and conj(x) over an algebra with involution.
inline Binding bind_involutive_algebra(const InvolutiveAlgebra& A) {
    Binding b;
    b.p = A.alg.p;
    b.spaces.push_back(Binding::full_space(A.alg.dim));
    b.ops["m"] = BoundOp{{0, 0}, 0, [&A](const std::vector<Vec>& a) { return A.alg.multiply(a[0], a[1]); }};
    b.ops["conj"] = BoundOp{{0}, 0, [&A](const std::vector<Vec>& a) { return A.inv.apply(a[0]); }};
    return b;
}

/// V(a,b,c) over a structurable algebra.
inline Binding bind_structurable(const StructurableAlgebra& A) {
    Binding b;
    b.p = A.alg.p;
    b.spaces.push_back(Binding::full_space(A.dim()));
    b.ops["V"] = BoundOp{{0, 0, 0}, 0,
                         [&A](const std::vector<Vec>& a) { return v_operator_apply(A, a[0], a[1], a[2]); }};
    b.ops["m"] = BoundOp{{0, 0}, 0, [&A](const std::vector<Vec>& a) { return A.alg.multiply(a[0], a[1]); }};
    b.ops["conj"] = BoundOp{{0}, 0, [&A](const std::vector<Vec>& a) { return A.conj(a[0]); }};
    return b;
}

/// b(x,y) over a Lie superalgebra; sorts 1 = even, 2 = odd are available for
/// per-variable assignment (space 0 is the whole algebra).
inline Binding bind_superalgebra(const LieSuperalgebra& L) {
    Binding b;
    b.p = L.p;
    b.spaces.push_back(Binding::full_space(L.dim));
    VarSpace even, odd;
    even.ambient = odd.ambient = L.dim;
    for (size_t i = 0; i < L.dim; ++i) (L.parity[i] ? odd : even).basis.push_back(unit_vec(L.dim, i));
    b.spaces.push_back(even);
    b.spaces.push_back(odd);
    b.ops["b"] = BoundOp{{0, 0}, 0, [&L](const std::vector<Vec>& a) { return L.bracket_vec(a[0], a[1]); }};
    return b;
}

/// jm(a,b), act(a,x), pr(x,y), T(x,y,z) over a J-ternary package; sort 0 is
/// T, sort 1 is J (coordinates in the canonical J-basis).
inline Binding bind_package(const JTernaryPackage& pkg) {
    Binding b;
    b.p = pkg.T.p;
    b.spaces.push_back(Binding::full_space(pkg.T.dim));
    b.spaces.push_back(Binding::full_space(pkg.jdim()));
    size_t m = pkg.jdim();
    b.ops["T"] = BoundOp{{0, 0, 0}, 0,
                         [&pkg](const std::vector<Vec>& a) { return pkg.T.triple(a[0], a[1], a[2]); }};
    b.ops["jm"] = BoundOp{{1, 1}, 1, [&pkg, m](const std::vector<Vec>& a) {
                              PrimeField F(pkg.T.p);
                              Vec r(m, 0);
                              for (size_t i = 0; i < m; ++i) {
                                  if (!a[0][i]) continue;
                                  for (size_t j = 0; j < m; ++j)
                                      if (a[1][j]) vec_add_scaled(F, r, pkg.jmul[i * m + j], F.mul(a[0][i], a[1][j]));
                              }
                              return r;
                          }};
    b.ops["act"] = BoundOp{{1, 0}, 0, [&pkg, m](const std::vector<Vec>& a) {
                               PrimeField F(pkg.T.p);
                               Vec r(pkg.T.dim, 0);
                               for (size_t i = 0; i < m; ++i)
                                   if (a[0][i]) vec_add_scaled(F, r, pkg.j_basis[i].apply(a[1]), a[0][i]);
                               return r;
                           }};
    b.ops["pr"] = BoundOp{{0, 0}, 1, [&pkg, m](const std::vector<Vec>& a) {
                              PrimeField F(pkg.T.p);
                              Vec r(m, 0);
                              for (size_t i = 0; i < pkg.T.dim; ++i) {
                                  if (!a[0][i]) continue;
                                  for (size_t j = 0; j < pkg.T.dim; ++j)
                                      if (a[1][j]) vec_add_scaled(F, r, pkg.pairing[i][j], F.mul(a[0][i], a[1][j]));
                              }
                              return r;
                          }};
    return b;
}

}  // namespace char3

#endif
