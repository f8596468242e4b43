#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "char3/pipeline.hpp"

using namespace char3;

namespace {

std::string bin() {
    const char* b = std::getenv("CHAR3_BIN");
    REQUIRE(b != nullptr);
    return b;
}

int run_cli(const std::string& args, std::string* output = nullptr) {
    std::string outfile = std::filesystem::temp_directory_path() / "char3_cli_out.txt";
    int rc = std::system((bin() + " " + args + " > " + outfile + " 2>&1").c_str());
    if (output) {
        std::ifstream in(outfile);
        std::ostringstream os;
        os << in.rdbuf();
        *output = os.str();
    }
    return WEXITSTATUS(rc);
}

bool same_mul(const Algebra& a, const Algebra& b) {
    if (a.dim != b.dim || a.p != b.p) return false;
    for (size_t i = 0; i < a.dim; ++i)
        for (size_t j = 0; j < a.dim; ++j) {
            Vec x(a.dim, 0), y(a.dim, 0);
            for (auto [k, c] : a.basis_product(i, j)) x[k] = c;
            for (auto [k, c] : b.basis_product(i, j)) y[k] = c;
            if (x != y) return false;
        }
    return true;
}

}  // namespace

TEST_CASE("JSON round trips") {
    SECTION("structurable tensor algebra") {
        TensorStructurable TS = tensor_structurable(split_composition(2, 3), split_composition(4, 3));
        json j = structurable_to_json(TS.A);
        Artifact a = artifact_from_json(j);
        REQUIRE(a.kind == Artifact::Kind::Structurable);
        REQUIRE(same_mul(a.str->alg, TS.A.alg));
        REQUIRE(a.str->inv == TS.A.inv);
        REQUIRE(a.str->skew == TS.A.skew);
    }
    SECTION("triple system") {
        TripleSystem T = weak_counterexample();
        TripleSystem T2 = triple_from_json(triple_to_json(T));
        REQUIRE(T2.dim == 2);
        Vec v(2, 0);
        T2.acc(v, 0, 0, 0, 1);
        REQUIRE(v == Vec{0, 1});
    }
    SECTION("superalgebra") {
        LieSuperalgebra g = build_reference(RefKind::osp, 3, 2, 3);
        LieSuperalgebra g2 = super_from_json(super_to_json(g));
        REQUIRE(g2.parity == g.parity);
        Fingerprint f1 = fingerprint(g), f2 = fingerprint(g2);
        REQUIRE(f1.core_match(f2));
    }
    SECTION("graded algebra with sl2") {
        JTernaryPackage pkg = jordanize(weak_counterexample());
        LTAlgebra lt = build_LT(pkg);
        GradedLieAlgebra g2 = graded_from_json(graded_to_json(lt.L));
        REQUIRE(g2.grading == lt.L.grading);
        REQUIRE(g2.F == lt.L.F);
        REQUIRE(same_mul(g2.alg, lt.L.alg));
    }
    SECTION("semisimplify input") {
        JTernaryPackage pkg = jordanize(weak_counterexample());
        LTAlgebra lt = build_LT(pkg);
        SemisimplifyInput inp{lt.L.alg, lie_detail::ad_matrix(lt.L.alg, lt.L.F), 3};
        SemisimplifyInput inp2 = semisimplify_input_from_json(semisimplify_input_to_json(inp));
        REQUIRE(inp2.delta == inp.delta);
        REQUIRE(same_mul(inp2.L, inp.L));
    }
}

TEST_CASE("construct -> file -> check matches the in-memory pipeline") {
    Artifact a = construct_by_spec("tensor(4,2)", 3, {});
    auto mem_reports = run_suite(a, "structurable", {});
    json j = artifact_to_json(a);
    Artifact b = artifact_from_json(j);
    auto file_reports = run_suite(b, "structurable", {});
    REQUIRE(mem_reports.size() == file_reports.size());
    for (size_t i = 0; i < mem_reports.size(); ++i) REQUIRE(mem_reports[i].summary() == file_reports[i].summary());
}

TEST_CASE("CLI exit codes and behavior") {
    auto tmp = std::filesystem::temp_directory_path();
    SECTION("construct writes JSON, check accepts the file") {
        std::string f = (tmp / "tensor81.json").string();
        REQUIRE(run_cli("construct \"tensor(8,1)\" --out " + f) == 0);
        REQUIRE(std::filesystem::exists(f));
        std::string out;
        REQUIRE(run_cli("check " + f + " --suite structurable", &out) == 0);
        REQUIRE(out.find("all checks passed") != std::string::npos);
    }
    SECTION("check failure exits 1 with a counterexample") {
        std::string out;
        REQUIRE(run_cli("check weak-counterexample --suite super-cube", &out) == 1);
        REQUIRE(out.find("FAIL") != std::string::npos);
        REQUIRE(out.find("counterexample") != std::string::npos);
    }
    SECTION("invalid spec exits 2") {
        REQUIRE(run_cli("check no-such-recipe --suite hein") == 2);
        REQUIRE(run_cli("construct \"tensor(5,1)\"") == 2);
        REQUIRE(run_cli("badsubcommand") == 2);
    }
    SECTION("semisimplify a file with L and delta") {
        JTernaryPackage pkg = jordanize(weak_counterexample());
        LTAlgebra lt = build_LT(pkg);
        SemisimplifyInput inp{lt.L.alg, lie_detail::ad_matrix(lt.L.alg, lt.L.F), 3};
        std::string f = (tmp / "ltweak.json").string();
        std::ofstream(f) << semisimplify_input_to_json(inp).dump();
        std::string ssout = (tmp / "lssweak.json").string();
        std::string out;
        REQUIRE(run_cli("semisimplify " + f + " --out " + ssout, &out) == 0);
        REQUIRE(out.find("superdim        (1|2)") != std::string::npos);
        std::ifstream in(ssout);
        LieSuperalgebra S = super_from_json(json::parse(in));
        REQUIRE(S.even_dim() == 1);
        REQUIRE(S.odd_dim() == 2);
    }
    SECTION("identity subcommand") {
        const char* dir = std::getenv("CHAR3_IDENTITIES");
        REQUIRE(dir != nullptr);
        std::string out;
        REQUIRE(run_cli(std::string("identity --identity ") + dir + "/hein1.id \"proto-osp(1,2)\"", &out) == 0);
        REQUIRE(out.find("pass") != std::string::npos);
        REQUIRE(run_cli(std::string("identity --identity ") + dir +
                        "/super_jacobi_ooo.id \"reference osp(3,2)\" --var x=odd --var y=odd --var z=odd") == 0);
        // a failing identity exits 1
        std::string badid = (std::filesystem::temp_directory_path() / "bad.id").string();
        std::ofstream(badid) << "T(x,y,z) = 0\n";  // fails: xxx = y
        REQUIRE(run_cli("identity --identity " + badid + " weak-counterexample") == 1);
        // syntax errors exit 2
        std::string synid = (std::filesystem::temp_directory_path() / "syn.id").string();
        std::ofstream(synid) << "T(x,y,z\n";
        REQUIRE(run_cli("identity --identity " + synid + " weak-counterexample") == 2);
    }
    SECTION("fingerprint json output") {
        std::string out;
        REQUIRE(run_cli("fingerprint \"reference psl(4,1)\" --json", &out) == 0);
        json j = json::parse(out);
        REQUIRE(j.at("superdim") == json::array({15, 8}));
        REQUIRE(j.at("odd_irreducible").at("note") == "heuristic");
    }
    SECTION("determinism: two seeded runs print identical reports") {
        std::string a, b;
        REQUIRE(run_cli("check \"tensor(8,2)\" --suite structurable --mode random --samples 20000 --seed 42", &a) == 0);
        REQUIRE(run_cli("check \"tensor(8,2)\" --suite structurable --mode random --samples 20000 --seed 42", &b) == 0);
        REQUIRE(a == b);
    }
}
