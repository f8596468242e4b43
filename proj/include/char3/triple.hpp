#ifndef CHAR3_TRIPLE_HPP
#define CHAR3_TRIPLE_HPP

#include "char3/structurable.hpp"

namespace char3 {

/// Triple system given by a sparse 4-index tensor: e_i e_j e_k = Σ c e_l.
struct TripleSystem {
    u32 p = 3;
    size_t dim = 0;
    std::vector<std::string> basis_names;
    std::vector<std::vector<std::pair<u32, u8>>> tensor;  // index (i*dim + j)*dim + k

    TripleSystem() = default;
    TripleSystem(u32 p_, size_t dim_) : p(p_), dim(dim_), tensor(dim_ * dim_ * dim_) {
        basis_names.resize(dim);
        for (size_t i = 0; i < dim; ++i) basis_names[i] = "x" + std::to_string(i);
    }

    const std::vector<std::pair<u32, u8>>& at(size_t i, size_t j, size_t k) const {
        return tensor[(i * dim + j) * dim + k];
    }

    void add_entry(size_t i, size_t j, size_t k, size_t l, u32 c) {
        c %= p;
        if (!c) return;
        auto& lst = tensor[(i * dim + j) * dim + k];
        for (auto it = lst.begin(); it != lst.end(); ++it) {
            if (it->first == l) {
                u32 nc = (it->second + c) % p;
                if (nc == 0)
                    lst.erase(it);
                else
                    it->second = static_cast<u8>(nc);
                return;
            }
        }
        lst.emplace_back(static_cast<u32>(l), static_cast<u8>(c));
    }

    void set_entry_vec(size_t i, size_t j, size_t k, const Vec& v) {
        auto& lst = tensor[(i * dim + j) * dim + k];
        lst.clear();
        for (size_t l = 0; l < dim; ++l)
            if (v[l]) lst.emplace_back(static_cast<u32>(l), v[l]);
    }

    /// r += c · (e_i e_j e_k)
    void acc(Vec& r, size_t i, size_t j, size_t k, u32 c) const {
        for (auto [l, v] : at(i, j, k)) r[l] = static_cast<u8>((r[l] + c * v) % p);
    }

    Vec triple(const Vec& x, const Vec& y, const Vec& z) const {
        PrimeField F(p);
        Vec r(dim, 0);
        for (size_t i = 0; i < dim; ++i) {
            if (!x[i]) continue;
            for (size_t j = 0; j < dim; ++j) {
                if (!y[j]) continue;
                u32 cij = F.mul(x[i], y[j]);
                for (size_t k = 0; k < dim; ++k)
                    if (z[k]) acc(r, i, j, k, F.mul(cij, z[k]));
            }
        }
        return r;
    }

    Matrix l_op(const Vec& x, const Vec& y) const {
        PrimeField F(p);
        Matrix m(p, dim, dim);
        for (size_t k = 0; k < dim; ++k) {
            Vec col(dim, 0);
            for (size_t i = 0; i < dim; ++i) {
                if (!x[i]) continue;
                for (size_t j = 0; j < dim; ++j)
                    if (y[j]) acc(col, i, j, k, F.mul(x[i], y[j]));
            }
            for (size_t r = 0; r < dim; ++r) m.at(r, k) = col[r];
        }
        return m;
    }

    /// K(x,y)z = xzy - yzx
    Matrix k_op(const Vec& x, const Vec& y) const {
        PrimeField F(p);
        Matrix m(p, dim, dim);
        for (size_t k = 0; k < dim; ++k) {
            Vec col(dim, 0);
            for (size_t i = 0; i < dim; ++i)
                for (size_t j = 0; j < dim; ++j) {
                    u32 cij = F.mul(x[i], y[j]);
                    if (!cij) continue;
                    acc(col, i, k, j, cij);
                    acc(col, j, k, i, F.neg(cij));
                }
            for (size_t r = 0; r < dim; ++r) m.at(r, k) = col[r];
        }
        return m;
    }

    /// S(x,y) = L(x,y) + L(y,x)
    Matrix s_op(const Vec& x, const Vec& y) const {
        PrimeField F(p);
        return mat_add(l_op(x, y), l_op(y, x));
    }

    /// T(x,y) = L(y,x) - L(x,y)  (the ε = 1 case)
    Matrix t_op(const Vec& x, const Vec& y) const { return mat_sub(l_op(y, x), l_op(x, y)); }
};

namespace tri_detail {

// hot accumulation helpers on basis indices
inline void acc_left_of(const TripleSystem& T, Vec& r, const Vec& w, size_t j, size_t k, u32 sign) {
    // r += sign * Σ_l w_l (e_l e_j e_k)
    for (size_t l = 0; l < T.dim; ++l)
        if (w[l]) T.acc(r, l, j, k, sign == 1 ? w[l] : (T.p - w[l]) % T.p);
}
inline void acc_mid_of(const TripleSystem& T, Vec& r, size_t i, const Vec& w, size_t k, u32 sign) {
    for (size_t l = 0; l < T.dim; ++l)
        if (w[l]) T.acc(r, i, l, k, sign == 1 ? w[l] : (T.p - w[l]) % T.p);
}
inline void acc_right_of(const TripleSystem& T, Vec& r, size_t i, size_t j, const Vec& w, u32 sign) {
    for (size_t l = 0; l < T.dim; ++l)
        if (w[l]) T.acc(r, i, j, l, sign == 1 ? w[l] : (T.p - w[l]) % T.p);
}
inline Vec basis_triple(const TripleSystem& T, size_t i, size_t j, size_t k) {
    Vec r(T.dim, 0);
    T.acc(r, i, j, k, 1);
    return r;
}
// K(e_i, e_j) e_k as a vector, with δ
inline Vec k_basis(const TripleSystem& T, size_t i, size_t j, size_t k, u32 delta_f) {
    Vec r(T.dim, 0);
    T.acc(r, i, k, j, 1);
    T.acc(r, j, k, i, (T.p - delta_f) % T.p);
    return r;
}

}  // namespace tri_detail

/// eq:FK1 with given ε: [L(u,v),L(x,y)] = L(L(u,v)x, y) + ε L(x, L(v,u)y),
/// checked pointwise on basis 5-tuples (u,v,x,y,z).
inline CheckReport check_fk1(const TripleSystem& T, int eps, const CheckPolicy& policy,
                             const std::string& name = "fk1") {
    size_t n = T.dim;
    u32 p = T.p;
    u32 eps_f = eps == 1 ? 1 : p - 1;
    return run_tuple_check(name, {n, n, n, n, n}, 8.0 * n, policy, [&, eps_f](const std::vector<u64>& t) {
        size_t u = t[0], v = t[1], x = t[2], y = t[3], z = t[4];
        Vec lhs(n, 0), rhs(n, 0);
        // u v (x y z) - x y (u v z)
        tri_detail::acc_right_of(T, lhs, u, v, tri_detail::basis_triple(T, x, y, z), 1);
        tri_detail::acc_right_of(T, lhs, x, y, tri_detail::basis_triple(T, u, v, z), 0);
        // (u v x) y z + eps * x (v u y) z
        tri_detail::acc_left_of(T, rhs, tri_detail::basis_triple(T, u, v, x), y, z, 1);
        Vec w = tri_detail::basis_triple(T, v, u, y);
        PrimeField F(p);
        for (size_t l = 0; l < n; ++l)
            if (w[l]) T.acc(rhs, x, l, z, F.mul(eps_f, w[l]));
        return lhs == rhs;
    });
}

/// eq:FK2: K(K(u,v)x, y) = L(y,x) K(u,v) - ε K(u,v) L(x,y), pointwise at z.
inline CheckReport check_fk2(const TripleSystem& T, int eps, int delta, const CheckPolicy& policy,
                             const std::string& name = "fk2") {
    size_t n = T.dim;
    u32 p = T.p;
    u32 eps_f = eps == 1 ? 1 : p - 1;
    u32 delta_f = delta == 1 ? 1 : p - 1;
    return run_tuple_check(name, {n, n, n, n, n}, 12.0 * n, policy, [&, eps_f, delta_f](const std::vector<u64>& t) {
        size_t u = t[0], v = t[1], x = t[2], y = t[3], z = t[4];
        PrimeField F(p);
        Vec lhs(n, 0), rhs(n, 0);
        // K(w, y) z with w = K(u,v)x:  w z y - delta * (y z w)
        Vec w = tri_detail::k_basis(T, u, v, x, delta_f);
        tri_detail::acc_left_of(T, lhs, w, z, y, 1);
        for (size_t l = 0; l < n; ++l)
            if (w[l]) T.acc(lhs, y, z, l, F.mul(F.neg(delta_f), w[l]));
        // L(y,x) K(u,v) z
        Vec q = tri_detail::k_basis(T, u, v, z, delta_f);
        tri_detail::acc_right_of(T, rhs, y, x, q, 1);
        // - eps K(u,v) L(x,y) z
        Vec r2 = tri_detail::basis_triple(T, x, y, z);
        for (size_t l = 0; l < n; ++l) {
            if (!r2[l]) continue;
            u32 c = F.mul(F.neg(eps_f), r2[l]);
            T.acc(rhs, u, l, v, c);
            T.acc(rhs, v, l, u, F.mul(c, F.neg(delta_f)));
        }
        return lhs == rhs;
    });
}

inline std::vector<CheckReport> check_fk(const TripleSystem& T, int eps, int delta, const CheckPolicy& policy = {}) {
    return {check_fk1(T, eps, policy), check_fk2(T, eps, delta, policy)};
}

/// eq:special: K(x,y) = εδ L(y,x) - ε L(x,y), on basis triples.
inline CheckReport check_special(const TripleSystem& T, int eps, int delta, const CheckPolicy& policy = {}) {
    size_t n = T.dim;
    u32 p = T.p;
    u32 eps_f = eps == 1 ? 1 : p - 1;
    u32 delta_f = delta == 1 ? 1 : p - 1;
    return run_tuple_check("special", {n, n, n}, 6.0 * n, policy, [&, eps_f, delta_f](const std::vector<u64>& t) {
        size_t x = t[0], y = t[1], z = t[2];
        PrimeField F(p);
        Vec lhs = tri_detail::k_basis(T, x, y, z, delta_f);
        Vec rhs(n, 0);
        T.acc(rhs, y, x, z, F.mul(eps_f, delta_f));
        T.acc(rhs, x, y, z, F.neg(eps_f));
        return lhs == rhs;
    });
}

/// Hein's axioms eq:JTHein1 (= FK1 with ε = 1) and eq:JTHein2.
inline std::vector<CheckReport> check_hein(const TripleSystem& T, const CheckPolicy& policy = {}) {
    std::vector<CheckReport> out;
    out.push_back(check_fk1(T, 1, policy, "hein1"));
    size_t n = T.dim;
    out.push_back(run_tuple_check("hein2", {n, n, n}, 4.0 * n, policy, [&](const std::vector<u64>& t) {
        size_t x = t[0], y = t[1], z = t[2];
        Vec lhs(n, 0), rhs(n, 0);
        T.acc(lhs, x, y, z, 1);
        T.acc(lhs, z, y, x, T.p - 1);
        T.acc(rhs, z, x, y, 1);
        T.acc(rhs, x, z, y, T.p - 1);
        return lhs == rhs;
    }));
    return out;
}

/// J-ternary package: the Jordan algebra J = F·id + K(T,T) realized inside
/// End(T), the action, and the pairing <x|y> = -K(x,y) in J-coordinates.
struct JTernaryPackage {
    TripleSystem T;
    Subspace J;                         // flattened operator span
    std::vector<Matrix> j_basis;
    Vec id_coords;                      // coordinates of id in J
    std::vector<Vec> jmul;              // jmul[a*m+b] = coords of J_a ∘ J_b
    std::vector<std::vector<Vec>> pairing;  // pairing[i][j] = <e_i|e_j> coords
    Subspace S_span;                    // S(T,T) operator span
    std::vector<Matrix> s_basis;
    std::vector<std::vector<Vec>> s_coords;  // S(e_i,e_j) in S_span coordinates
    std::vector<CheckReport> reports;

    size_t jdim() const { return j_basis.size(); }
    size_t sdim() const { return s_basis.size(); }
};

/// eq:KKs, pointwise at the extra variable w.
inline CheckReport check_kks(const TripleSystem& T, const CheckPolicy& policy) {
    size_t n = T.dim;
    u32 p = T.p;
    return run_tuple_check("kks", {n, n, n, n, n}, 12.0 * n, policy, [&](const std::vector<u64>& t) {
        size_t u = t[0], v = t[1], x = t[2], z = t[3], w = t[4];
        PrimeField F(p);
        auto k_apply = [&](size_t a, size_t b, const Vec& in) {
            Vec r(n, 0);
            for (size_t l = 0; l < n; ++l) {
                if (!in[l]) continue;
                T.acc(r, a, l, b, in[l]);
                T.acc(r, b, l, a, F.neg(in[l]));
            }
            return r;
        };
        Vec lhs = k_apply(u, v, tri_detail::k_basis(T, x, z, w, 1));
        Vec l2 = k_apply(x, z, tri_detail::k_basis(T, u, v, w, 1));
        for (size_t r = 0; r < n; ++r) lhs[r] = static_cast<u8>(F.add(lhs[r], l2[r]));
        Vec rhs(n, 0);
        Vec a = tri_detail::k_basis(T, u, v, x, 1);  // K(u,v)x
        for (size_t l = 0; l < n; ++l) {
            if (!a[l]) continue;
            T.acc(rhs, l, w, z, a[l]);
            T.acc(rhs, z, w, l, F.neg(a[l]));
        }
        Vec b = tri_detail::k_basis(T, u, v, z, 1);  // K(u,v)z
        for (size_t l = 0; l < n; ++l) {
            if (!b[l]) continue;
            T.acc(rhs, x, w, l, b[l]);
            T.acc(rhs, l, w, x, F.neg(b[l]));
        }
        return lhs == rhs;
    });
}

inline JTernaryPackage jordanize(const TripleSystem& T, const CheckPolicy& policy = {}) {
    size_t n = T.dim;
    u32 p = T.p;
    PrimeField F(p);
    JTernaryPackage pkg;
    pkg.T = T;
    auto hein = check_hein(T, policy);
    for (const auto& r : hein)
        if (!r.passed) throw std::invalid_argument("jordanize: not a J-ternary algebra: " + r.summary());
    pkg.reports = hein;
    pkg.reports.push_back(check_kks(T, policy));
    if (!pkg.reports.back().passed) throw std::logic_error("jordanize: eq:KKs failed: " + pkg.reports.back().summary());

    // J = span{ id, K(e_i, e_j) } inside End(T)
    SpanBuilder jb(p, n * n);
    jb.insert(flatten(Matrix::identity(p, n)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) jb.insert(flatten(T.k_op(unit_vec(n, i), unit_vec(n, j))));
    pkg.J = Subspace::from_builder(jb);
    for (size_t i = 0; i < pkg.J.dim(); ++i) pkg.j_basis.push_back(unflatten(p, n, n, pkg.J.basis.row_vec(i)));
    auto idc = pkg.J.coords(flatten(Matrix::identity(p, n)));
    if (!idc) throw std::logic_error("jordanize: id not in its own span");
    pkg.id_coords = *idc;

    size_t m = pkg.jdim();
    pkg.jmul.assign(m * m, Vec());
    for (size_t a = 0; a < m; ++a)
        for (size_t b = a; b < m; ++b) {
            Matrix prod = mat_scale(anticommutator(pkg.j_basis[a], pkg.j_basis[b]), F.half());
            auto c = pkg.J.coords(flatten(prod));
            if (!c) throw std::logic_error("jordanize: J is not closed under the symmetrized product");
            pkg.jmul[a * m + b] = *c;
            pkg.jmul[b * m + a] = *c;
        }

    pkg.pairing.assign(n, std::vector<Vec>(n));
    for (size_t i = 0; i < n; ++i) {
        pkg.pairing[i][i] = Vec(m, 0);
        for (size_t j = i + 1; j < n; ++j) {
            Matrix k = T.k_op(unit_vec(n, i), unit_vec(n, j));
            auto c = pkg.J.coords(flatten(mat_neg(k)));
            if (!c) throw std::logic_error("jordanize: K(x,y) not in J");
            pkg.pairing[i][j] = *c;
            pkg.pairing[j][i] = vec_scale(F, *c, F.neg(1));
        }
    }

    // S(T,T) span and coordinates
    SpanBuilder sbS(p, n * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) sbS.insert(flatten(T.s_op(unit_vec(n, i), unit_vec(n, j))));
    pkg.S_span = Subspace::from_builder(sbS);
    for (size_t i = 0; i < pkg.S_span.dim(); ++i)
        pkg.s_basis.push_back(unflatten(p, n, n, pkg.S_span.basis.row_vec(i)));
    pkg.s_coords.assign(n, std::vector<Vec>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) {
            auto c = pkg.S_span.coords(flatten(T.s_op(unit_vec(n, i), unit_vec(n, j))));
            if (!c) throw std::logic_error("jordanize: S(x,y) not in its span");
            pkg.s_coords[i][j] = *c;
            pkg.s_coords[j][i] = *c;
        }
    return pkg;
}

/// The six Allison axioms for the package (a over J-basis, x,y,z,w,v over
/// the T-basis).
inline std::vector<CheckReport> check_allison(const JTernaryPackage& pkg, const CheckPolicy& policy = {}) {
    const TripleSystem& T = pkg.T;
    size_t n = T.dim, m = pkg.jdim();
    u32 p = T.p;
    PrimeField F(p);
    std::vector<CheckReport> out;

    auto act = [&](const Vec& jc, const Vec& x) {  // J-element (coords) acting on x
        Vec r(n, 0);
        for (size_t a = 0; a < m; ++a)
            if (jc[a]) {
                Vec im = pkg.j_basis[a].apply(x);
                vec_add_scaled(F, r, im, jc[a]);
            }
        return r;
    };
    auto pair_vec = [&](const Vec& x, const Vec& y) {  // <x|y> for vectors
        Vec r(m, 0);
        for (size_t i = 0; i < n; ++i) {
            if (!x[i]) continue;
            for (size_t j = 0; j < n; ++j)
                if (y[j]) vec_add_scaled(F, r, pkg.pairing[i][j], F.mul(x[i], y[j]));
        }
        return r;
    };
    auto jprod = [&](const Vec& a, const Vec& b) {  // Jordan product on coords
        Vec r(m, 0);
        for (size_t i = 0; i < m; ++i) {
            if (!a[i]) continue;
            for (size_t j = 0; j < m; ++j)
                if (b[j]) vec_add_scaled(F, r, pkg.jmul[i * m + j], F.mul(a[i], b[j]));
        }
        return r;
    };

    out.push_back(run_tuple_check("allison1", {m, n, n}, 8.0 * (n + m), policy, [&](const std::vector<u64>& t) {
        Vec a = unit_vec(m, t[0]);
        Vec x = unit_vec(n, t[1]), y = unit_vec(n, t[2]);
        Vec lhs = jprod(a, pkg.pairing[t[1]][t[2]]);
        Vec rhs = pair_vec(act(a, x), y);
        vec_add_scaled(F, rhs, pair_vec(x, act(a, y)), 1);
        return lhs == vec_scale(F, rhs, F.half());
    }));
    out.push_back(run_tuple_check("allison2", {m, n, n, n}, 10.0 * n, policy, [&](const std::vector<u64>& t) {
        Vec a = unit_vec(m, t[0]);
        size_t x = t[1], y = t[2], z = t[3];
        Vec lhs = act(a, tri_detail::basis_triple(T, x, y, z));
        Vec ax = pkg.j_basis[t[0]].col_vec(x), ay = pkg.j_basis[t[0]].col_vec(y), az = pkg.j_basis[t[0]].col_vec(z);
        Vec rhs(n, 0);
        tri_detail::acc_left_of(T, rhs, ax, y, z, 1);
        tri_detail::acc_mid_of(T, rhs, x, ay, z, 0);
        tri_detail::acc_right_of(T, rhs, x, y, az, 1);
        return lhs == rhs;
    }));
    out.push_back(run_tuple_check("allison3", {n, n, n}, 8.0 * n, policy, [&](const std::vector<u64>& t) {
        size_t x = t[0], y = t[1], z = t[2];
        Vec lhs(n, 0);
        T.acc(lhs, x, y, z, 1);
        Vec rhs(n, 0);
        T.acc(rhs, z, y, x, 1);
        Vec corr = act(pkg.pairing[x][z], unit_vec(n, y));
        return lhs == vec_sub(F, rhs, corr);
    }));
    out.push_back(run_tuple_check("allison4", {n, n, n}, 8.0 * n, policy, [&](const std::vector<u64>& t) {
        size_t x = t[0], y = t[1], z = t[2];
        Vec lhs(n, 0);
        T.acc(lhs, x, y, z, 1);
        Vec rhs(n, 0);
        T.acc(rhs, y, x, z, 1);
        Vec corr = act(pkg.pairing[x][y], unit_vec(n, z));
        return lhs == vec_add(F, rhs, corr);
    }));
    out.push_back(run_tuple_check("allison5", {n, n, n, n}, 10.0 * (n + m), policy, [&](const std::vector<u64>& t) {
        size_t x = t[0], y = t[1], z = t[2], w = t[3];
        Vec lhs = pair_vec(tri_detail::basis_triple(T, x, y, z), unit_vec(n, w));
        vec_add_scaled(F, lhs, pair_vec(unit_vec(n, z), tri_detail::basis_triple(T, x, y, w)), 1);
        Vec rhs = pair_vec(unit_vec(n, x), act(pkg.pairing[z][w], unit_vec(n, y)));
        return lhs == rhs;
    }));
    out.push_back(check_fk1(T, 1, policy, "allison6"));
    return out;
}

/// Prototypical J-ternary algebra of a skew-hermitian form over an
/// associative algebra with involution: <x,y,z> = h(x,y)z + h(z,x)y + h(z,y)x.
/// action[a] is the module action of e_a, h[x][y] a vector in E.
inline TripleSystem prototypical(const InvolutiveAlgebra& E, size_t tdim, const std::vector<Matrix>& action,
                                 const std::vector<std::vector<Vec>>& h, const CheckPolicy& policy = {}) {
    size_t de = E.alg.dim;
    u32 p = E.alg.p;
    PrimeField F(p);
    if (!E.unit) throw std::invalid_argument("prototypical: E must be unital");
    for (size_t i = 0; i < de; ++i)
        for (size_t j = 0; j < de; ++j)
            for (size_t k = 0; k < de; ++k)
                if (!is_zero(E.alg.associator(unit_vec(de, i), unit_vec(de, j), unit_vec(de, k))))
                    throw std::invalid_argument("prototypical: E is not associative");
    auto act_of = [&](const Vec& e) {
        Matrix mm(p, tdim, tdim);
        for (size_t a = 0; a < de; ++a)
            if (e[a]) mm = mat_add(mm, mat_scale(action[a], e[a]));
        return mm;
    };
    if (act_of(*E.unit) != Matrix::identity(p, tdim)) throw std::invalid_argument("prototypical: 1 must act as id");
    for (size_t i = 0; i < de; ++i)
        for (size_t j = 0; j < de; ++j) {
            Vec prod(de, 0);
            for (auto [k, c] : E.alg.basis_product(i, j)) prod[k] = c;
            if (mat_mul(action[i], action[j]) != act_of(prod))
                throw std::invalid_argument("prototypical: module action is not a homomorphism");
        }
    for (size_t x = 0; x < tdim; ++x)
        for (size_t y = 0; y < tdim; ++y)
            if (h[y][x] != vec_scale(F, E.inv.apply(h[x][y]), F.neg(1)))
                throw std::invalid_argument("prototypical: h is not skew-hermitian");
    for (size_t a = 0; a < de; ++a)
        for (size_t x = 0; x < tdim; ++x)
            for (size_t y = 0; y < tdim; ++y) {
                Vec xx = action[a].col_vec(x);
                Vec lhs(de, 0);
                for (size_t l = 0; l < tdim; ++l)
                    if (xx[l]) vec_add_scaled(F, lhs, h[l][y], xx[l]);
                if (lhs != E.alg.multiply(unit_vec(de, a), h[x][y]))
                    throw std::invalid_argument("prototypical: h(ax,y) != a h(x,y)");
            }

    TripleSystem T(p, tdim);
    for (size_t x = 0; x < tdim; ++x)
        for (size_t y = 0; y < tdim; ++y) {
            Matrix hxy = act_of(h[x][y]);
            for (size_t z = 0; z < tdim; ++z) {
                Vec val = hxy.col_vec(z);                                  // h(x,y) z
                vec_add_scaled(F, val, act_of(h[z][x]).col_vec(y), 1);     // + h(z,x) y
                vec_add_scaled(F, val, act_of(h[z][y]).col_vec(x), 1);     // + h(z,y) x
                T.set_entry_vec(x, y, z, val);
            }
        }
    auto hein = check_hein(T, policy);
    for (const auto& r : hein)
        if (!r.passed) throw std::logic_error("prototypical: Hein axioms failed: " + r.summary());
    return T;
}

/// The 2-dimensional weak-but-not-Lie witness: basis {x, y}, xxx = y and
/// every product involving y vanishes.
inline TripleSystem weak_counterexample(u32 p = 3) {
    TripleSystem T(p, 2);
    T.basis_names = {"x", "y"};
    T.add_entry(0, 0, 0, 1, 1);
    return T;
}

/// J-ternary algebra of a structurable algebra with invertible L_s:
/// <x,y,z> = V_{x,sy}(z), plus the cross-validation of the transported
/// Jordan structure against the jordanize output.
struct FromStructurable {
    TripleSystem T;
    Vec s, t;  // st = 1, both skew
    std::vector<CheckReport> reports;
};

inline FromStructurable from_structurable(const StructurableAlgebra& A, const Vec& s, const CheckPolicy& policy = {},
                                          bool cross_validate = true) {
    size_t n = A.dim();
    u32 p = A.alg.p;
    PrimeField F(p);
    if (!A.skew.contains(s)) throw std::invalid_argument("from_structurable: s is not skew");
    Matrix Ls = A.alg.left_mul(s);
    auto t = solve(Ls, A.unit);
    if (!t || !inverse(Ls)) throw std::invalid_argument("from_structurable: L_s is singular");
    FromStructurable out;
    out.s = s;
    out.t = *t;
    if (!A.skew.contains(out.t)) throw std::logic_error("from_structurable: t = L_s^{-1}(1) is not skew");
    Matrix Lt = A.alg.left_mul(out.t);
    if (mat_mul(Ls, Lt) != Matrix::identity(p, n) || mat_mul(Lt, Ls) != Matrix::identity(p, n))
        throw std::logic_error("from_structurable: L_s L_t != id");

    VTable vt = v_table(A);
    out.T = TripleSystem(p, n);
    out.T.basis_names = A.alg.basis_names;
    for (size_t j = 0; j < n; ++j) {
        Vec sy = A.alg.multiply(s, unit_vec(n, j));
        for (size_t i = 0; i < n; ++i)
            for (size_t k = 0; k < n; ++k) {
                Vec val(n, 0);
                for (size_t l = 0; l < n; ++l)
                    if (sy[l]) vt.axpy(val, p, i, l, k, sy[l]);
                out.T.set_entry_vec(i, j, k, val);
            }
    }
    auto hein = check_hein(out.T, policy);
    out.reports = hein;
    for (const auto& r : hein)
        if (!r.passed) throw std::logic_error("from_structurable: Hein axioms failed: " + r.summary());

    if (cross_validate) {
        JTernaryPackage pkg = jordanize(out.T, policy);
        size_t k = A.skew.dim();
        // β : S -> J, a ↦ L_a L_s must be a bijection matching the package
        CheckReport r;
        r.name = "jordan_transport";
        r.checked = 0;
        Matrix beta(p, k, pkg.jdim());
        bool ok = (pkg.jdim() == k);
        if (ok) {
            for (size_t a = 0; a < k && ok; ++a) {
                Matrix op = mat_mul(A.alg.left_mul(A.skew.basis.row_vec(a)), Ls);
                auto c = pkg.J.coords(flatten(op));
                if (!c) {
                    ok = false;
                    break;
                }
                for (size_t b = 0; b < k; ++b) beta.at(a, b) = (*c)[b];
            }
            ok = ok && inverse(beta).has_value();
        }
        auto beta_of = [&](const Vec& a_ambient) -> std::optional<Vec> {
            auto sc = A.skew.coords(a_ambient);
            if (!sc) return std::nullopt;
            Vec r2(pkg.jdim(), 0);
            for (size_t a = 0; a < k; ++a)
                if ((*sc)[a]) vec_add_scaled(F, r2, beta.row_vec(a), (*sc)[a]);
            return r2;
        };
        // Jordan product: a·b = ½(a(sb) + b(sa)) transports to the package product
        for (size_t a = 0; a < k && ok; ++a)
            for (size_t b = 0; b < k && ok; ++b) {
                Vec av = A.skew.basis.row_vec(a), bv = A.skew.basis.row_vec(b);
                Vec ab = A.alg.multiply(av, A.alg.multiply(s, bv));
                Vec ba = A.alg.multiply(bv, A.alg.multiply(s, av));
                Vec prod = vec_scale(F, vec_add(F, ab, ba), F.half());
                auto lhs = beta_of(prod);
                if (!lhs) {
                    ok = false;
                    break;
                }
                Vec rhs(pkg.jdim(), 0);
                for (size_t i2 = 0; i2 < pkg.jdim(); ++i2)
                    if (beta.at(a, i2))
                        for (size_t j2 = 0; j2 < pkg.jdim(); ++j2)
                            if (beta.at(b, j2))
                                vec_add_scaled(F, rhs, pkg.jmul[i2 * pkg.jdim() + j2],
                                               F.mul(beta.at(a, i2), beta.at(b, j2)));
                ok = (*lhs == rhs);
                ++r.checked;
            }
        // pairing: <x|y> = y x̄ - x ȳ transports to the package pairing
        for (size_t x = 0; x < n && ok; ++x)
            for (size_t y = 0; y < n && ok; ++y) {
                Vec ex = unit_vec(n, x), ey = unit_vec(n, y);
                Vec val = vec_sub(F, A.alg.multiply(ey, A.conj(ex)), A.alg.multiply(ex, A.conj(ey)));
                auto lhs = beta_of(val);
                ok = lhs && (*lhs == pkg.pairing[x][y]);
                ++r.checked;
            }
        // action: (L_a L_s)(x) = a(sx)
        for (size_t a = 0; a < k && ok; ++a) {
            Vec av = A.skew.basis.row_vec(a);
            Matrix op = mat_mul(A.alg.left_mul(av), Ls);
            for (size_t x = 0; x < n; ++x) {
                Vec rhs = A.alg.multiply(av, A.alg.multiply(s, unit_vec(n, x)));
                if (op.col_vec(x) != rhs) {
                    ok = false;
                    break;
                }
                ++r.checked;
            }
        }
        r.passed = ok;
        out.reports.push_back(r);

        // S(A,A) = {T in instrl : T^δ(t) = 0}
        CheckReport r2;
        r2.name = "S_equals_instrl_kernel";
        Instrl in = instrl(A, vt, false);
        size_t idim = in.span.dim();
        Matrix ker_map(p, n, idim);
        for (size_t c2 = 0; c2 < idim; ++c2) {
            Vec img = t_delta(A, in.basis[c2]).apply(out.t);
            for (size_t r3 = 0; r3 < n; ++r3) ker_map.at(r3, c2) = img[r3];
        }
        Matrix kb = kernel_basis(ker_map);
        SpanBuilder sb(p, n * n);
        for (size_t r3 = 0; r3 < kb.rows; ++r3) {
            Matrix op(p, n, n);
            for (size_t c2 = 0; c2 < idim; ++c2)
                if (kb.at(r3, c2)) op = mat_add(op, mat_scale(in.basis[c2], kb.at(r3, c2)));
            sb.insert(flatten(op));
        }
        SpanBuilder stt(p, n * n);
        for (size_t i2 = 0; i2 < n; ++i2)
            for (size_t j2 = i2; j2 < n; ++j2) stt.insert(flatten(out.T.s_op(unit_vec(n, i2), unit_vec(n, j2))));
        r2.passed = (Subspace::from_builder(sb) == Subspace::from_builder(stt));
        r2.checked = kb.rows;
        out.reports.push_back(r2);
        for (const auto& rr : out.reports)
            if (!rr.passed) throw std::logic_error("from_structurable: cross-validation failed: " + rr.summary());
    }
    return out;
}

}  // namespace char3

#endif
