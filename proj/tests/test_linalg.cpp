#include <catch2/catch_amalgamated.hpp>

#include "char3/check.hpp"
#include "char3/jordan.hpp"

using namespace char3;

namespace {

Matrix from_rows(u32 p, std::vector<Vec> rows) {
    Matrix m(p, rows.size(), rows.empty() ? 0 : rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
    return m;
}

// Independent oracle: enumerate all p^n vectors and collect the null ones.
std::vector<Vec> brute_kernel(const Matrix& m) {
    std::vector<Vec> out;
    u64 total = 1;
    for (size_t i = 0; i < m.cols; ++i) total *= m.p;
    for (u64 x = 0; x < total; ++x) {
        Vec v(m.cols);
        u64 t = x;
        for (size_t i = 0; i < m.cols; ++i) {
            v[i] = static_cast<u8>(t % m.p);
            t /= m.p;
        }
        if (is_zero(m.apply(v))) out.push_back(v);
    }
    return out;
}

}  // namespace

TEST_CASE("prime field basics") {
    PrimeField F(3);
    REQUIRE(F.half() == 2);
    REQUIRE(F.mul(2, F.half()) == 1);
    REQUIRE(F.inv(2) == 2);
    REQUIRE(F.quarter() == 1);
    PrimeField F7(7);
    REQUIRE(F7.mul(F7.half(), 2) == 1);
    for (u32 a = 1; a < 7; ++a) REQUIRE(F7.mul(a, F7.inv(a)) == 1);
    REQUIRE_THROWS_AS(PrimeField(2), std::invalid_argument);
    REQUIRE_THROWS_AS(PrimeField(9), std::invalid_argument);
}

TEST_CASE("rref basics") {
    SECTION("zero matrix") {
        Matrix z(3, 3, 4);
        auto [r, piv] = rref(z);
        REQUIRE(piv.empty());
        REQUIRE(r.is_zero());
    }
    SECTION("identity") {
        Matrix id = Matrix::identity(3, 3);
        auto [r, piv] = rref(id);
        REQUIRE(r == id);
        REQUIRE(piv == std::vector<size_t>{0, 1, 2});
    }
    SECTION("rank-1 over GF(3): row2 = 2*row1") {
        Matrix m = from_rows(3, {{1, 2}, {2, 1}});
        auto [r, piv] = rref(m);
        REQUIRE(piv == std::vector<size_t>{0});
        REQUIRE(r == from_rows(3, {{1, 2}, {0, 0}}));
        REQUIRE(rank(m) == 1);
    }
}

TEST_CASE("kernel basis vs exhaustive null-vector enumeration") {
    SECTION("identity has zero kernel") {
        REQUIRE(kernel_basis(Matrix::identity(3, 4)).rows == 0);
    }
    SECTION("zero matrix has full kernel") {
        Matrix z(3, 3, 3);
        Matrix k = kernel_basis(z);
        REQUIRE(k == Matrix::identity(3, 3));
    }
    SECTION("S(x,x) operator of the weak-counterexample system") {
        // On basis {x, y}: x -> 2y, y -> 0.
        Matrix m = from_rows(3, {{0, 0}, {2, 0}});
        Matrix k = kernel_basis(m);
        auto all = brute_kernel(m);
        REQUIRE(all.size() == 3);  // p^(dim kernel) = 3^1
        SpanBuilder sb(3, 2);
        for (auto& v : all) sb.insert(v);
        REQUIRE(Subspace::from_builder(sb).basis == k);
    }
    SECTION("random matrices: rank-nullity and oracle span agreement") {
        u64 s = 12345;
        for (int trial = 0; trial < 20; ++trial) {
            Matrix m(3, 4, 5);
            for (auto& x : m.a) {
                s = splitmix64(s);
                x = static_cast<u8>(s % 3);
            }
            Matrix k = kernel_basis(m);
            REQUIRE(rank(m) + k.rows == m.cols);
            auto all = brute_kernel(m);
            SpanBuilder sb(3, 5);
            for (auto& v : all) sb.insert(v);
            REQUIRE(Subspace::from_builder(sb).basis == k);
        }
    }
}

TEST_CASE("solve and inverse") {
    Matrix m = from_rows(3, {{1, 2, 0}, {0, 1, 1}, {1, 0, 2}});  // det = 1 mod 3
    auto inv = inverse(m);
    REQUIRE(inv.has_value());
    REQUIRE(mat_mul(m, *inv) == Matrix::identity(3, 3));
    Vec b{1, 2, 0};
    auto x = solve(m, b);
    REQUIRE(x.has_value());
    REQUIRE(m.apply(*x) == b);
    Matrix sing = from_rows(3, {{1, 2}, {2, 1}});
    REQUIRE(!inverse(sing).has_value());
    REQUIRE(!solve(sing, Vec{1, 0}).has_value());
}

TEST_CASE("canonical complement") {
    SECTION("inner == outer") {
        Subspace s = Subspace::span(3, 3, {{1, 0, 0}, {0, 1, 0}});
        REQUIRE(canonical_complement(s, s).dim() == 0);
    }
    SECTION("inner == 0 returns outer") {
        Subspace outer = Subspace::span(3, 4, {{1, 1, 0, 0}, {0, 0, 1, 2}});
        REQUIRE(canonical_complement(Subspace::zero(3, 4), outer) == outer);
    }
    SECTION("pivot-greedy rule") {
        Subspace inner = Subspace::span(3, 3, {{1, 0, 0}});
        Subspace outer = Subspace::full(3, 3);
        Subspace w = canonical_complement(inner, outer);
        REQUIRE(w == Subspace::span(3, 3, {{0, 1, 0}, {0, 0, 1}}));
    }
    SECTION("direct sum reconstructs outer") {
        u64 s = 99;
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<Vec> gens;
            for (int g = 0; g < 4; ++g) {
                Vec v(6);
                for (auto& x : v) {
                    s = splitmix64(s);
                    x = static_cast<u8>(s % 3);
                }
                gens.push_back(v);
            }
            Subspace outer = Subspace::span(3, 6, gens);
            Subspace inner = Subspace::span(3, 6, {gens[0]});
            Subspace w = canonical_complement(inner, outer);
            REQUIRE(inner.dim() + w.dim() == outer.dim());
            REQUIRE(subspace_sum(inner, w) == outer);
            REQUIRE(subspace_intersection(inner, w).dim() == 0);
        }
    }
    SECTION("containment violation is an error") {
        Subspace inner = Subspace::span(3, 3, {{0, 1, 0}});
        Subspace outer = Subspace::span(3, 3, {{1, 0, 0}});
        REQUIRE_THROWS_AS(canonical_complement(inner, outer), std::invalid_argument);
    }
}

TEST_CASE("jordan chains of a nilpotent operator") {
    SECTION("delta = 0") {
        Matrix z(3, 4, 4);
        auto jd = nilpotent_jordan_chains(z, 3);
        REQUIRE(jd.chains.size() == 4);
        REQUIRE(jd.multiplicities[1] == 4);
    }
    SECTION("single 3x3 Jordan block at p = 3") {
        Matrix n(3, 3, 3);
        n.at(1, 0) = 1;
        n.at(2, 1) = 1;
        REQUIRE(!mat_pow(n, 2).is_zero());
        REQUIRE(mat_pow(n, 3).is_zero());
        auto jd = nilpotent_jordan_chains(n, 3);
        REQUIRE(jd.chains.size() == 1);
        REQUIRE(jd.chains[0].size() == 3);
        REQUIRE(reassemble_from_chains(jd, 3, 3) == n);
    }
    SECTION("delta^p != 0 is an error") {
        Matrix n(3, 4, 4);
        n.at(1, 0) = 1;
        n.at(2, 1) = 1;
        n.at(3, 2) = 1;  // nilpotency index 4 > 3
        REQUIRE_THROWS_AS(nilpotent_jordan_chains(n, 3), std::invalid_argument);
    }
    SECTION("conjugated mixed blocks: multiplicities and exact reassembly") {
        // blocks of sizes 3, 2, 2, 1 inside dim 8, conjugated by a seeded
        // invertible matrix
        Matrix n(3, 8, 8);
        n.at(1, 0) = 1;
        n.at(2, 1) = 1;  // J3 on 0,1,2
        n.at(4, 3) = 1;  // J2 on 3,4
        n.at(6, 5) = 1;  // J2 on 5,6
        u64 s = 4242;
        Matrix P(3, 8, 8);
        while (true) {
            for (auto& x : P.a) {
                s = splitmix64(s);
                x = static_cast<u8>(s % 3);
            }
            if (inverse(P)) break;
        }
        Matrix d = mat_mul(mat_mul(P, n), *inverse(P));
        auto jd = nilpotent_jordan_chains(d, 3);
        REQUIRE(jd.multiplicities[3] == 1);
        REQUIRE(jd.multiplicities[2] == 2);
        REQUIRE(jd.multiplicities[1] == 1);
        REQUIRE(reassemble_from_chains(jd, 8, 3) == d);
    }
    SECTION("generic p = 5") {
        Matrix n(5, 5, 5);
        for (size_t i = 0; i + 1 < 5; ++i) n.at(i + 1, i) = 1;
        auto jd = nilpotent_jordan_chains(n, 5);
        REQUIRE(jd.chains.size() == 1);
        REQUIRE(jd.chains[0].size() == 5);
        REQUIRE(reassemble_from_chains(jd, 5, 5) == n);
    }
}

TEST_CASE("span builder canonical form") {
    SpanBuilder sb(3, 4);
    REQUIRE(sb.insert(Vec{0, 2, 1, 0}));
    REQUIRE(sb.insert(Vec{1, 1, 1, 1}));
    REQUIRE(!sb.insert(Vec{1, 0, 2, 1}));  // 2*(0,2,1,0)+(1,1,1,1) = (1,2,0,1)? dependent check below
    Subspace s1 = Subspace::from_builder(sb);
    // order independence
    SpanBuilder sb2(3, 4);
    sb2.insert(Vec{1, 1, 1, 1});
    sb2.insert(Vec{0, 2, 1, 0});
    REQUIRE(Subspace::from_builder(sb2) == s1);
    // pivot structure: pivot entries 1, pivot columns otherwise 0
    for (size_t i = 0; i < s1.dim(); ++i) {
        REQUIRE(s1.basis.at(i, s1.pivots[i]) == 1);
        for (size_t j = 0; j < s1.dim(); ++j)
            if (i != j) REQUIRE(s1.basis.at(j, s1.pivots[i]) == 0);
    }
    // coords round-trip
    Vec v = s1.from_coords(Vec{2, 1});
    auto c = s1.coords(v);
    REQUIRE(c.has_value());
    REQUIRE(*c == Vec{2, 1});
    REQUIRE(!s1.coords(Vec{1, 0, 0, 0}).has_value());
}
