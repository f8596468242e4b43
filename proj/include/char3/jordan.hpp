#ifndef CHAR3_JORDAN_HPP
#define CHAR3_JORDAN_HPP

#include <map>

#include "char3/subspace.hpp"

namespace char3 {

/// Chain basis for a nilpotent operator δ with δ^p = 0. Each chain is
/// (v, δv, δ²v, ...) of length ℓ ≤ p; the concatenation of all chain
/// vectors is a basis of the ambient space.
struct JordanChainDecomposition {
    u32 p = 3;
    std::vector<std::vector<Vec>> chains;  // longest first, RREF order within a length
    std::map<size_t, size_t> multiplicities;

    size_t ambient() const { return chains.empty() ? 0 : chains[0][0].size(); }
};

/// Deterministic chain extraction: process lengths k = p down to 1; at each
/// level the new chain tops are the canonical complement (greedy RREF pivot
/// order) of ker δ^{k-1} + δ·(longer chains) inside ker δ^k.
inline JordanChainDecomposition nilpotent_jordan_chains(const Matrix& delta, u32 p) {
    if (delta.rows != delta.cols) throw std::invalid_argument("nilpotent_jordan_chains: square matrix required");
    if (delta.p != p) throw std::invalid_argument("nilpotent_jordan_chains: modulus mismatch");
    size_t n = delta.rows;
    if (!mat_pow(delta, p).is_zero()) throw std::invalid_argument("nilpotent_jordan_chains: delta^p != 0");

    // kernels of powers
    std::vector<Subspace> ker(p + 1, Subspace::zero(p, n));
    Matrix pw = Matrix::identity(p, n);
    for (u32 k = 1; k <= p; ++k) {
        pw = mat_mul(delta, pw);
        Subspace s(p, n);
        Matrix kb = kernel_basis(pw);
        SpanBuilder sb(p, n);
        for (size_t i = 0; i < kb.rows; ++i) sb.insert(kb.row_vec(i));
        ker[k] = Subspace::from_builder(sb);
    }

    JordanChainDecomposition out;
    out.p = p;
    std::vector<std::pair<Vec, size_t>> tops;  // (top, length), longest first
    for (u32 k = p; k >= 1; --k) {
        SpanBuilder covered = ker[k - 1].to_builder();
        for (const auto& [t, len] : tops) {
            Vec v = t;
            for (size_t j = 0; j + k < len; ++j) v = delta.apply(v);
            covered.insert(std::move(v));
        }
        Subspace newtops = canonical_complement(Subspace::from_builder(covered), ker[k]);
        for (size_t i = 0; i < newtops.dim(); ++i) tops.emplace_back(newtops.basis.row_vec(i), k);
        if (k == 1) break;
    }
    for (const auto& [t, len] : tops) {
        std::vector<Vec> chain;
        Vec v = t;
        for (size_t j = 0; j < len; ++j) {
            chain.push_back(v);
            v = delta.apply(v);
        }
        if (!is_zero(v)) throw std::logic_error("nilpotent_jordan_chains: chain does not terminate");
        out.chains.push_back(std::move(chain));
        out.multiplicities[len]++;
    }
    // sanity: the chain vectors form a basis
    SpanBuilder all(p, n);
    size_t count = 0;
    for (const auto& ch : out.chains)
        for (const auto& v : ch) {
            if (!all.insert(v)) throw std::logic_error("nilpotent_jordan_chains: chain vectors are dependent");
            ++count;
        }
    if (count != n) throw std::logic_error("nilpotent_jordan_chains: chain vectors do not span");
    return out;
}

/// Rebuild δ from a chain decomposition (used by tests: must reproduce the
/// input exactly).
inline Matrix reassemble_from_chains(const JordanChainDecomposition& jd, size_t n, u32 p) {
    Matrix P(p, n, n);  // columns are chain vectors
    Matrix N(p, n, n);  // shift on chain coordinates
    size_t c = 0;
    for (const auto& ch : jd.chains) {
        for (size_t j = 0; j < ch.size(); ++j) {
            for (size_t r = 0; r < n; ++r) P.at(r, c + j) = ch[j][r];
            if (j + 1 < ch.size()) N.at(c + j + 1, c + j) = 1;
        }
        c += ch.size();
    }
    auto Pinv = inverse(P);
    if (!Pinv) throw std::logic_error("reassemble_from_chains: chain matrix is singular");
    return mat_mul(mat_mul(P, N), *Pinv);
}

}  // namespace char3

#endif
