#ifndef CHAR3_JSON_IO_HPP
#define CHAR3_JSON_IO_HPP

#include <json.hpp>

#include "char3/reference.hpp"

namespace char3 {

using nlohmann::json;

// Schema "alg/1": {"schema","p","dim","basis","mul":[[i,j,k,c],...]} with
// optional "inv" (matrix rows), "triple" ([[i,j,k,l,c],...]) replacing
// "mul", "parity", "grading", "sl2":[E,H,F], "delta" (matrix rows), "unit".

inline json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (size_t i = 0; i < m.rows; ++i) {
        json r = json::array();
        for (size_t j = 0; j < m.cols; ++j) r.push_back(m.at(i, j));
        rows.push_back(std::move(r));
    }
    return rows;
}

inline Matrix matrix_from_json(const json& j, u32 p) {
    size_t rows = j.size();
    size_t cols = rows ? j.at(0).size() : 0;
    Matrix m(p, rows, cols);
    for (size_t i = 0; i < rows; ++i)
        for (size_t c = 0; c < cols; ++c) m.at(i, c) = static_cast<u8>(j.at(i).at(c).get<u32>() % p);
    return m;
}

inline json algebra_to_json(const Algebra& A) {
    json j;
    j["schema"] = "alg/1";
    j["p"] = A.p;
    j["dim"] = A.dim;
    j["basis"] = A.basis_names;
    json mul = json::array();
    for (size_t i = 0; i < A.dim; ++i)
        for (size_t jj = 0; jj < A.dim; ++jj)
            for (auto [k, c] : A.basis_product(i, jj)) mul.push_back(json::array({i, jj, k, c}));
    j["mul"] = std::move(mul);
    if (A.unit) j["unit"] = *A.unit;
    return j;
}

inline Algebra algebra_from_json(const json& j) {
    u32 p = j.at("p").get<u32>();
    Algebra A(p, j.at("dim").get<size_t>());
    if (j.contains("basis")) A.basis_names = j.at("basis").get<std::vector<std::string>>();
    for (const auto& e : j.at("mul"))
        A.add_entry(e.at(0).get<size_t>(), e.at(1).get<size_t>(), e.at(2).get<size_t>(), e.at(3).get<u32>());
    if (j.contains("unit")) A.unit = j.at("unit").get<Vec>();
    return A;
}

inline json involutive_to_json(const InvolutiveAlgebra& A) {
    json j = algebra_to_json(A.alg);
    j["inv"] = matrix_to_json(A.inv);
    if (A.unit) j["unit"] = *A.unit;
    return j;
}

inline json structurable_to_json(const StructurableAlgebra& A) {
    json j = algebra_to_json(A.alg);
    j["inv"] = matrix_to_json(A.inv);
    j["unit"] = A.unit;
    return j;
}

inline json triple_to_json(const TripleSystem& T) {
    json j;
    j["schema"] = "alg/1";
    j["p"] = T.p;
    j["dim"] = T.dim;
    j["basis"] = T.basis_names;
    json tr = json::array();
    for (size_t i = 0; i < T.dim; ++i)
        for (size_t jj = 0; jj < T.dim; ++jj)
            for (size_t k = 0; k < T.dim; ++k)
                for (auto [l, c] : T.at(i, jj, k)) tr.push_back(json::array({i, jj, k, l, c}));
    j["triple"] = std::move(tr);
    return j;
}

inline TripleSystem triple_from_json(const json& j) {
    TripleSystem T(j.at("p").get<u32>(), j.at("dim").get<size_t>());
    if (j.contains("basis")) T.basis_names = j.at("basis").get<std::vector<std::string>>();
    for (const auto& e : j.at("triple"))
        T.add_entry(e.at(0).get<size_t>(), e.at(1).get<size_t>(), e.at(2).get<size_t>(), e.at(3).get<size_t>(),
                    e.at(4).get<u32>());
    return T;
}

inline json super_to_json(const LieSuperalgebra& L) {
    json j;
    j["schema"] = "alg/1";
    j["p"] = L.p;
    j["dim"] = L.dim;
    j["basis"] = L.basis_names;
    json mul = json::array();
    for (size_t i = 0; i < L.dim; ++i)
        for (size_t jj = 0; jj < L.dim; ++jj)
            for (auto [k, c] : L.basis_bracket(i, jj)) mul.push_back(json::array({i, jj, k, c}));
    j["mul"] = std::move(mul);
    j["parity"] = L.parity;
    return j;
}

inline LieSuperalgebra super_from_json(const json& j) {
    LieSuperalgebra L(j.at("p").get<u32>(), j.at("dim").get<size_t>());
    if (j.contains("basis")) L.basis_names = j.at("basis").get<std::vector<std::string>>();
    L.parity = j.at("parity").get<std::vector<u8>>();
    for (const auto& e : j.at("mul"))
        L.add_entry(e.at(0).get<size_t>(), e.at(1).get<size_t>(), e.at(2).get<size_t>(), e.at(3).get<u32>());
    return L;
}

inline json graded_to_json(const GradedLieAlgebra& G) {
    json j = algebra_to_json(G.alg);
    j["grading"] = G.grading;
    if (G.has_sl2()) j["sl2"] = json::array({G.E, G.H, G.F});
    return j;
}

inline GradedLieAlgebra graded_from_json(const json& j) {
    GradedLieAlgebra G;
    G.alg = algebra_from_json(j);
    if (j.contains("grading"))
        G.grading = j.at("grading").get<std::vector<int>>();
    else
        G.grading.assign(G.alg.dim, 0);
    if (j.contains("sl2")) {
        G.E = j.at("sl2").at(0).get<Vec>();
        G.H = j.at("sl2").at(1).get<Vec>();
        G.F = j.at("sl2").at(2).get<Vec>();
    }
    return G;
}

inline json semisimplify_input_to_json(const SemisimplifyInput& inp) {
    json j = algebra_to_json(inp.L);
    j["delta"] = matrix_to_json(inp.delta);
    return j;
}

inline SemisimplifyInput semisimplify_input_from_json(const json& j) {
    SemisimplifyInput inp;
    inp.L = algebra_from_json(j);
    inp.p = inp.L.p;
    inp.delta = matrix_from_json(j.at("delta"), inp.p);
    return inp;
}

inline json fingerprint_to_json(const Fingerprint& f) {
    json j;
    j["superdim"] = json::array({f.even, f.odd});
    j["center"] = json::array({f.center_even, f.center_odd});
    j["derived"] = json::array({f.derived_even, f.derived_odd});
    j["odd_odd"] = f.odd_odd;
    j["cube_ideal"] = f.cube_dim;
    j["odd_irreducible"] = {{"value", f.odd_irreducible_heuristic}, {"note", "heuristic"}};
    return j;
}

}  // namespace char3

#endif
