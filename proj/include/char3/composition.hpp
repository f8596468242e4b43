#ifndef CHAR3_COMPOSITION_HPP
#define CHAR3_COMPOSITION_HPP

#include "char3/algebra.hpp"

namespace char3 {

/// Algebra with an involutive anti-automorphism; skew/herm are the -1/+1
/// eigenspaces of the involution.
struct InvolutiveAlgebra {
    Algebra alg;
    Matrix inv;  // matrix of x -> x̄
    std::optional<Vec> unit;
    Subspace skew, herm;

    Vec conj(const Vec& x) const { return inv.apply(x); }
};

inline void compute_skew_herm(InvolutiveAlgebra& A) {
    size_t n = A.alg.dim;
    Matrix plus = mat_add(A.inv, Matrix::identity(A.alg.p, n));   // ker -> skew
    Matrix minus = mat_sub(A.inv, Matrix::identity(A.alg.p, n));  // ker -> herm
    Matrix ks = kernel_basis(plus), kh = kernel_basis(minus);
    SpanBuilder sb(A.alg.p, n), hb(A.alg.p, n);
    for (size_t i = 0; i < ks.rows; ++i) sb.insert(ks.row_vec(i));
    for (size_t i = 0; i < kh.rows; ++i) hb.insert(kh.row_vec(i));
    A.skew = Subspace::from_builder(sb);
    A.herm = Subspace::from_builder(hb);
}

/// Split unital composition algebra of dimension 1, 2, 4 or 8 over GF(p)
/// with its canonical involution and norm.
struct CompositionAlgebra {
    Algebra alg;
    Matrix conj_mat;
    Vec unit;
    Matrix norm_polar;       // Gram matrix of n(x,y) = n(x+y) - n(x) - n(y)
    std::vector<u8> norm_diag;  // n(e_i)
    Subspace skew;

    Vec conj(const Vec& x) const { return conj_mat.apply(x); }

    u32 norm(const Vec& x) const {
        u64 acc = 0;
        for (size_t i = 0; i < alg.dim; ++i) {
            if (!x[i]) continue;
            acc += static_cast<u64>(x[i]) * x[i] % alg.p * norm_diag[i];
            for (size_t j = i + 1; j < alg.dim; ++j)
                if (x[j]) acc += static_cast<u64>(x[i]) * x[j] % alg.p * norm_polar.at(i, j);
        }
        return static_cast<u32>(acc % alg.p);
    }

    u32 norm_pair(const Vec& x, const Vec& y) const {
        PrimeField F(alg.p);
        return F.sub(norm(vec_add(F, x, y)), F.add(norm(x), norm(y)));
    }

    u32 trace(const Vec& x) const {
        // x + x̄ = t(x)·1: read the coefficient along the unit.
        PrimeField F(alg.p);
        Vec s = vec_add(F, x, conj(x));
        // the unit has a nonzero coordinate at its leading index
        size_t lead = 0;
        while (lead < unit.size() && unit[lead] == 0) ++lead;
        u32 t = F.mul(s[lead], F.inv(unit[lead]));
        return t;
    }
};

namespace detail {

inline void derive_norm_from_conj(CompositionAlgebra& C) {
    // x x̄ = n(x)·1 on basis and pairwise sums determines diag + polar.
    PrimeField F(C.alg.p);
    size_t n = C.alg.dim;
    size_t lead = 0;
    while (lead < n && C.unit[lead] == 0) ++lead;
    auto scalar_of = [&](const Vec& v) {
        Vec expect = vec_scale(F, C.unit, F.mul(v[lead], F.inv(C.unit[lead])));
        if (expect != v) throw std::logic_error("composition: x·x̄ is not a multiple of 1");
        return F.mul(v[lead], F.inv(C.unit[lead]));
    };
    C.norm_diag.assign(n, 0);
    C.norm_polar = Matrix(C.alg.p, n, n);
    for (size_t i = 0; i < n; ++i) {
        Vec ei = unit_vec(n, i);
        C.norm_diag[i] = static_cast<u8>(scalar_of(C.alg.multiply(ei, C.conj(ei))));
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            Vec s = vec_add(F, unit_vec(n, i), unit_vec(n, j));
            u32 ns = scalar_of(C.alg.multiply(s, C.conj(s)));
            u32 pol = F.sub(ns, F.add(C.norm_diag[i], C.norm_diag[j]));
            C.norm_polar.at(i, j) = static_cast<u8>(pol);
            C.norm_polar.at(j, i) = static_cast<u8>(pol);
        }
    for (size_t i = 0; i < n; ++i) C.norm_polar.at(i, i) = static_cast<u8>(F.mul(2, C.norm_diag[i]));
}

inline void finish(CompositionAlgebra& C) {
    C.alg.unit = C.unit;
    derive_norm_from_conj(C);
    Matrix plus = mat_add(C.conj_mat, Matrix::identity(C.alg.p, C.alg.dim));
    Matrix ks = kernel_basis(plus);
    SpanBuilder sb(C.alg.p, C.alg.dim);
    for (size_t i = 0; i < ks.rows; ++i) sb.insert(ks.row_vec(i));
    C.skew = Subspace::from_builder(sb);
}

}  // namespace detail

/// d = 1: the ground field. d = 2: GF(p) × GF(p) with the exchange
/// involution. d = 4: 2×2 matrices (basis e11, e12, e21, e22) with the
/// symplectic involution x̄ = tr(x)·1 − x. d = 8: the Zorn vector-matrix
/// algebra with basis (e1, e2, u1, u2, u3, v1, v2, v3).
inline CompositionAlgebra split_composition(size_t d, u32 p) {
    PrimeField F(p);
    CompositionAlgebra C;
    switch (d) {
        case 1: {
            C.alg = Algebra(p, 1);
            C.alg.add_entry(0, 0, 0, 1);
            C.alg.basis_names = {"1"};
            C.unit = {1};
            C.conj_mat = Matrix::identity(p, 1);
            break;
        }
        case 2: {
            C.alg = Algebra(p, 2);
            C.alg.add_entry(0, 0, 0, 1);
            C.alg.add_entry(1, 1, 1, 1);
            C.alg.basis_names = {"a", "b"};
            C.unit = {1, 1};
            C.conj_mat = Matrix(p, 2, 2);
            C.conj_mat.at(0, 1) = 1;
            C.conj_mat.at(1, 0) = 1;
            break;
        }
        case 4: {
            C.alg = Algebra(p, 4);
            // basis e11, e12, e21, e22; e_{ab} e_{cd} = δ_{bc} e_{ad}
            auto idx = [](size_t a, size_t b) { return a * 2 + b; };
            for (size_t a = 0; a < 2; ++a)
                for (size_t b = 0; b < 2; ++b)
                    for (size_t c = 0; c < 2; ++c)
                        for (size_t dd = 0; dd < 2; ++dd)
                            if (b == c) C.alg.add_entry(idx(a, b), idx(c, dd), idx(a, dd), 1);
            C.alg.basis_names = {"e11", "e12", "e21", "e22"};
            C.unit = {1, 0, 0, 1};
            // x̄ = tr(x)·1 − x
            C.conj_mat = Matrix(p, 4, 4);
            Vec one = C.unit;
            for (size_t j = 0; j < 4; ++j) {
                u32 tr = (j == 0 || j == 3) ? 1u : 0u;
                for (size_t i = 0; i < 4; ++i) {
                    u32 v = F.mul(tr, one[i]);
                    if (i == j) v = F.sub(v, 1);
                    C.conj_mat.at(i, j) = static_cast<u8>(v);
                }
            }
            break;
        }
        case 8: {
            C.alg = Algebra(p, 8);
            C.alg.basis_names = {"e1", "e2", "u1", "u2", "u3", "v1", "v2", "v3"};
            const size_t E1 = 0, E2 = 1, U = 2, V = 5;
            u32 m1 = p - 1;
            C.alg.add_entry(E1, E1, E1, 1);
            C.alg.add_entry(E2, E2, E2, 1);
            for (size_t i = 0; i < 3; ++i) {
                C.alg.add_entry(E1, U + i, U + i, 1);  // e1 u = u
                C.alg.add_entry(U + i, E2, U + i, 1);  // u e2 = u
                C.alg.add_entry(E2, V + i, V + i, 1);  // e2 v = v
                C.alg.add_entry(V + i, E1, V + i, 1);  // v e1 = v
                C.alg.add_entry(U + i, V + i, E1, 1);  // u_i v_i = e1
                C.alg.add_entry(V + i, U + i, E2, 1);  // v_i u_i = e2
            }
            // u_i u_j = eps_ijk v_k ; v_i v_j = -eps_ijk u_k
            const int eps[3][3][3] = {{{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
                                      {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
                                      {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};
            for (size_t i = 0; i < 3; ++i)
                for (size_t j = 0; j < 3; ++j)
                    for (size_t k = 0; k < 3; ++k) {
                        int e = eps[i][j][k];
                        if (!e) continue;
                        C.alg.add_entry(U + i, U + j, V + k, e == 1 ? 1 : m1);
                        C.alg.add_entry(V + i, V + j, U + k, e == 1 ? m1 : 1);
                    }
            C.unit = Vec{1, 1, 0, 0, 0, 0, 0, 0};
            // conj: e1 <-> e2, u -> -u, v -> -v
            C.conj_mat = Matrix(p, 8, 8);
            C.conj_mat.at(0, 1) = 1;
            C.conj_mat.at(1, 0) = 1;
            for (size_t i = 2; i < 8; ++i) C.conj_mat.at(i, i) = static_cast<u8>(m1);
            break;
        }
        default: throw std::invalid_argument("split_composition: dimension must be 1, 2, 4 or 8");
    }
    detail::finish(C);
    return C;
}

inline InvolutiveAlgebra as_involutive(const CompositionAlgebra& C) {
    InvolutiveAlgebra A;
    A.alg = C.alg;
    A.inv = C.conj_mat;
    A.unit = C.unit;
    compute_skew_herm(A);
    return A;
}

/// Structural checks on a composition algebra: conj is an involutive
/// anti-automorphism, x + x̄ ∈ F·1, x·x̄ = n(x)·1, polar identity, and the
/// multiplicativity of the norm (exhaustive for dim ≤ 4, seeded otherwise).
inline std::vector<CheckReport> check_composition(const CompositionAlgebra& C, const CheckPolicy& policy = {}) {
    PrimeField F(C.alg.p);
    size_t n = C.alg.dim;
    std::vector<CheckReport> out;

    out.push_back(run_tuple_check("conj_involutive", {n}, n, policy, [&](const std::vector<u64>& t) {
        Vec e = unit_vec(n, t[0]);
        return C.conj(C.conj(e)) == e;
    }));
    out.push_back(run_tuple_check("conj_antiautomorphism", {n, n}, n, policy, [&](const std::vector<u64>& t) {
        Vec a = unit_vec(n, t[0]), b = unit_vec(n, t[1]);
        return C.conj(C.alg.multiply(a, b)) == C.alg.multiply(C.conj(b), C.conj(a));
    }));
    out.push_back(run_tuple_check("polar_identity", {n, n}, n, policy, [&](const std::vector<u64>& t) {
        // n(x,y)·1 = x·ȳ + y·x̄
        Vec x = unit_vec(n, t[0]), y = unit_vec(n, t[1]);
        Vec lhs = vec_scale(F, C.unit, C.norm_pair(x, y));
        Vec rhs = vec_add(F, C.alg.multiply(x, C.conj(y)), C.alg.multiply(y, C.conj(x)));
        return lhs == rhs;
    }));
    {
        // norm multiplicativity on full vectors (quadratic: basis checks are
        // not enough). Exhaustive over all pairs for dim <= 4.
        CheckReport rep;
        rep.name = "norm_multiplicative";
        u64 q = 1;
        for (size_t i = 0; i < n; ++i) q *= C.alg.p;
        auto check_pair = [&](u64 xi, u64 yi) {
            Vec x(n), y(n);
            u64 a = xi, b = yi;
            for (size_t i = 0; i < n; ++i) {
                x[i] = static_cast<u8>(a % C.alg.p);
                a /= C.alg.p;
                y[i] = static_cast<u8>(b % C.alg.p);
                b /= C.alg.p;
            }
            return C.norm(C.alg.multiply(x, y)) == F.mul(C.norm(x), C.norm(y));
        };
        bool exhaustive = policy.exhaustive(static_cast<double>(q) * static_cast<double>(q), n * n);
        rep.exhaustive = exhaustive;
        if (exhaustive) {
            rep.checked = q * q;
            auto fail = parallel_first_fail(q * q, [&](u64 i) { return check_pair(i / q, i % q); });
            if (fail) {
                rep.passed = false;
                rep.cex = Counterexample{{*fail / q, *fail % q}, "(vector pair encoded base p)"};
            }
        } else {
            u64 samples = std::min<u64>(policy.samples, 100000);
            rep.checked = samples;
            auto fail = parallel_first_fail(samples, [&](u64 i) {
                u64 s = splitmix64(policy.seed ^ (i + 7));
                return check_pair(splitmix64(s) % q, splitmix64(s + 1) % q);
            });
            if (fail) {
                rep.passed = false;
                rep.cex = Counterexample{{*fail}, "(seeded sample)"};
            }
        }
        out.push_back(std::move(rep));
    }
    return out;
}

}  // namespace char3

#endif
