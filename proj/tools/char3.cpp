// char3 — construct, check, semisimplify and fingerprint the characteristic-3
// algebraic structures of this library, and print the magic square.
#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "char3/pipeline.hpp"

using namespace char3;

namespace {

CheckPolicy g_policy;
u32 g_p = 3;

std::string join(const std::vector<std::string>& parts) {
    std::string s;
    for (const auto& p : parts) {
        if (!s.empty()) s += " ";
        s += p;
    }
    return s;
}

Artifact load_artifact(const std::string& arg) {
    if (std::filesystem::exists(arg)) {
        std::ifstream in(arg);
        json j = json::parse(in);
        return artifact_from_json(j);
    }
    return construct_by_spec(arg, g_p, g_policy);
}

void write_json(const json& j, const std::string& out) {
    if (out.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream os(out);
        os << j.dump(2) << "\n";
    }
}

int print_reports(const std::vector<CheckReport>& reports) {
    bool ok = true;
    for (const auto& r : reports) {
        std::cout << "  " << r.summary() << "\n";
        ok = ok && r.passed;
    }
    std::cout << (ok ? "all checks passed" : "CHECK FAILED") << "\n";
    return ok ? 0 : 1;
}

void print_fingerprint(const Fingerprint& f, bool as_json) {
    if (as_json) {
        std::cout << fingerprint_to_json(f).dump(2) << "\n";
        return;
    }
    std::cout << "superdim        (" << f.even << "|" << f.odd << ")\n"
              << "center          (" << f.center_even << "|" << f.center_odd << ")\n"
              << "derived         (" << f.derived_even << "|" << f.derived_odd << ")\n"
              << "dim [odd,odd]   " << f.odd_odd << "\n"
              << "cube ideal dim  " << f.cube_dim << "\n"
              << "odd irreducible " << (f.odd_irreducible_heuristic ? "yes" : "no") << " (heuristic)\n";
}

int cmd_magic_square(bool as_json) {
    auto cells = magic_square(g_p, g_policy);
    bool all_ok = true;
    std::vector<std::string> bad;
    for (const auto& c : cells)
        if (!c.ok) {
            all_ok = false;
            bad.push_back("(" + std::to_string(c.d1) + "," + std::to_string(c.d2) + "): " + c.detail);
        }
    if (as_json) {
        std::cout << magic_square_to_json(cells).dump(2) << "\n";
    } else {
        auto cell_text = [&](size_t d1, size_t d2) -> std::string {
            for (const auto& c : cells)
                if (c.d1 == d1 && c.d2 == d2) {
                    if (c.empty) return "-- (S = 0)";
                    std::string s = c.label + " (" + std::to_string(c.fp.even) + "|" + std::to_string(c.fp.odd) + ")";
                    if (!c.ok) s += " [FAIL]";
                    return s;
                }
            return "?";
        };
        std::cout << "magic square of Lie superalgebras, dim C1 x dim C2, p = " << g_p << "\n\n";
        std::cout << std::left << std::setw(8) << "";
        for (size_t d2 : {1, 2, 4, 8}) std::cout << std::left << std::setw(22) << ("C2=" + std::to_string(d2));
        std::cout << "\n";
        for (size_t d1 : {1, 2, 4, 8}) {
            std::cout << std::left << std::setw(8) << ("C1=" + std::to_string(d1));
            for (size_t d2 : {1, 2, 4, 8}) std::cout << std::left << std::setw(22) << cell_text(d1, d2);
            std::cout << "\n";
        }
        std::cout << "\nmatches: psl/osp cells fingerprint-checked against reference constructions;\n"
                  << "g(3,3), el(5;3), g(6,6) labels follow the paper's naming (fingerprint evidence).\n";
    }
    if (!all_ok) {
        std::cerr << "failing cells:\n";
        for (const auto& b : bad) std::cerr << "  " << b << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computational algebra over GF(p): J-ternary algebras, structurable algebras,"
                 " Kantor Lie algebras and characteristic-3 Lie superalgebras"};
    app.require_subcommand(1);
    app.fallthrough(true);  // accept the global flags after the subcommand too
    std::string mode = "auto";
    app.add_option("--seed", g_policy.seed, "seed for sampled checks")->capture_default_str();
    app.add_option("--samples", g_policy.samples, "sample count for sampled checks")->capture_default_str();
    app.add_option("--mode", mode, "check mode: auto|exhaustive|random")->capture_default_str();
    app.add_option("--p", g_p, "prime modulus")->capture_default_str();

    auto* c_construct = app.add_subcommand("construct", "build a named construction and emit JSON");
    std::vector<std::string> construct_spec;
    std::string out_file;
    c_construct->add_option("spec", construct_spec, "recipe, e.g. tensor(8,1) | kantor tensor(8,8) | smirnov")
        ->required();
    c_construct->add_option("--out", out_file, "output file (stdout if omitted)");

    auto* c_check = app.add_subcommand("check", "run a named axiom suite");
    std::vector<std::string> check_spec;
    std::string suite;
    c_check->add_option("spec", check_spec, "construction spec or JSON file")->required();
    c_check->add_option("--suite", suite, "hein|fk|allison|structurable|lts|jacobi|super|super-cube")->required();

    auto* c_ss = app.add_subcommand("semisimplify", "semisimplify L with a nilpotent derivation");
    std::vector<std::string> ss_spec;
    std::string ss_out;
    c_ss->add_option("spec", ss_spec, "triple-system spec, or JSON file with mul + delta")->required();
    c_ss->add_option("--out", ss_out, "output file for the superalgebra JSON");

    auto* c_fp = app.add_subcommand("fingerprint", "structural fingerprint of a Lie superalgebra");
    std::vector<std::string> fp_spec;
    bool fp_json = false;
    c_fp->add_option("spec", fp_spec, "superalgebra spec or JSON file")->required();
    c_fp->add_flag("--format-json,--json", fp_json, "machine-readable output");

    auto* c_magic = app.add_subcommand("magic-square", "the 4x4 table of Lie superalgebras");
    std::string magic_format = "text";
    c_magic->add_option("--format", magic_format, "text|json");

    auto* c_id = app.add_subcommand("identity", "check a multilinear identity from a file");
    std::string id_file;
    std::vector<std::string> id_spec, id_vars;
    bool id_package = false;
    c_id->add_option("--identity", id_file, "identity source file")->required();
    c_id->add_option("spec", id_spec, "system the identity is checked against")->required();
    c_id->add_option("--var", id_vars, "sort assignment var=even|odd (superalgebras)");
    c_id->add_flag("--package", id_package, "bind jm/act/pr/T of the J-ternary package of a triple system");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (mode == "exhaustive")
        g_policy.mode = CheckPolicy::Mode::Exhaustive;
    else if (mode == "random")
        g_policy.mode = CheckPolicy::Mode::Random;
    else if (mode != "auto") {
        std::cerr << "unknown mode '" << mode << "'\n";
        return 2;
    }

    try {
        if (*c_construct) {
            Artifact a = load_artifact(join(construct_spec));
            write_json(artifact_to_json(a), out_file);
            return 0;
        }
        if (*c_check) {
            Artifact a = load_artifact(join(check_spec));
            return print_reports(run_suite(a, suite, g_policy));
        }
        if (*c_ss) {
            std::string spec = join(ss_spec);
            SemisimplifyInput inp;
            if (std::filesystem::exists(spec)) {
                std::ifstream in(spec);
                inp = semisimplify_input_from_json(json::parse(in));
            } else {
                Artifact a = construct_by_spec(spec, g_p, g_policy);
                if (!a.triple) throw std::invalid_argument("semisimplify: spec must name a triple system");
                JTernaryPackage pkg = jordanize(*a.triple, g_policy);
                LTAlgebra lt = build_LT(pkg, g_policy);
                inp = SemisimplifyInput{lt.L.alg, lie_detail::ad_matrix(lt.L.alg, lt.L.F), g_p};
            }
            SemisimplifyResult r = semisimplify(inp, g_policy);
            print_fingerprint(fingerprint(r.super, g_policy.seed), false);
            if (!ss_out.empty()) write_json(super_to_json(r.super), ss_out);
            return 0;
        }
        if (*c_fp) {
            Artifact a = load_artifact(join(fp_spec));
            if (!a.super) throw std::invalid_argument("fingerprint: not a Lie superalgebra");
            print_fingerprint(fingerprint(*a.super, g_policy.seed), fp_json);
            return 0;
        }
        if (*c_magic) {
            if (magic_format != "text" && magic_format != "json") throw std::invalid_argument("bad --format");
            return cmd_magic_square(magic_format == "json");
        }
        if (*c_id) {
            std::ifstream in(id_file);
            if (!in.good()) throw std::invalid_argument("identity: cannot open '" + id_file + "'");
            std::ostringstream src;
            src << in.rdbuf();
            IdentityAst ast = parse_identity(src.str());
            Artifact a = load_artifact(join(id_spec));
            Binding b;
            JTernaryPackage pkg;
            switch (a.kind) {
                case Artifact::Kind::Triple:
                    if (id_package) {
                        pkg = jordanize(*a.triple, g_policy);
                        b = bind_package(pkg);
                    } else {
                        b = bind_triple_system(*a.triple);
                    }
                    break;
                case Artifact::Kind::Super: b = bind_superalgebra(*a.super); break;
                case Artifact::Kind::Structurable: b = bind_structurable(*a.str); break;
                case Artifact::Kind::Involutive: b = bind_involutive_algebra(*a.involutive); break;
                default: throw std::invalid_argument("identity: unsupported system kind");
            }
            for (const auto& v : id_vars) {
                auto eq = v.find('=');
                if (eq == std::string::npos) throw std::invalid_argument("identity: bad --var '" + v + "'");
                std::string name = v.substr(0, eq), sort = v.substr(eq + 1);
                if (sort == "even")
                    b.var_sort[name] = 1;
                else if (sort == "odd")
                    b.var_sort[name] = 2;
                else
                    throw std::invalid_argument("identity: unknown sort '" + sort + "'");
            }
            CheckReport rep = check_identity(ast, b, g_policy, std::filesystem::path(id_file).stem().string());
            std::cout << "  " << rep.summary() << "\n";
            return rep.passed ? 0 : 1;
        }
    } catch (const SyntaxError& e) {
        std::cerr << "syntax error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "construction failed: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
