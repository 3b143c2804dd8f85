// polybern: exact poly-Bernoulli numbers, their star variants, and the
// verification suites, from the command line.
//
// Exit codes: 0 success, 1 verification failure or internal inconsistency,
// 2 argument errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polybern/polybern.hpp"

namespace {

using namespace polybern;

struct OutputOptions {
    std::string format = "pretty";  // pretty | json | csv (tables only)
    std::string out_path;
};

void add_output_flags(CLI::App* cmd, OutputOptions& opts, bool tables = false) {
    cmd->add_option("--format", opts.format, tables ? "pretty, json or csv" : "pretty or json")
        ->check(tables ? CLI::IsMember({"pretty", "json", "csv"})
                       : CLI::IsMember({"pretty", "json"}));
    cmd->add_option("--out", opts.out_path, "write output to this path instead of stdout");
}

int emit(const OutputOptions& opts, const std::string& text) {
    if (opts.out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream os(opts.out_path, std::ios::binary);
    if (!os) {
        std::cerr << "cannot open output path: " << opts.out_path << "\n";
        return 2;
    }
    os << text;
    return 0;
}

std::string render_value(const Rational& v, const OutputOptions& opts) {
    if (opts.format == "json") return json_of(v).dump(2) + "\n";
    return v.str() + "\n";
}

/// Default truncation caps per depth; POLYBERN_DEFAULT_CAPS="PER,TOTAL"
/// overrides, CLI flags override both.
std::pair<int, int> default_caps(int r) {
    if (const char* env = std::getenv("POLYBERN_DEFAULT_CAPS")) {
        std::string s(env);
        auto comma = s.find(',');
        if (comma != std::string::npos) {
            int per = std::atoi(s.substr(0, comma).c_str());
            int total = std::atoi(s.substr(comma + 1).c_str());
            if (per > 0 && total > 0) return {per, total};
        }
        std::cerr << "warning: ignoring malformed POLYBERN_DEFAULT_CAPS (want PER,TOTAL)\n";
    }
    if (r <= 1) return {16, 16};
    if (r == 2) return {8, 16};
    return {6, 12};
}

std::string render_suites(const std::vector<SuiteReport>& suites, const OutputOptions& opts,
                          long* failures_out) {
    long failures = 0;
    for (const auto& s : suites) failures += static_cast<long>(s.failures.size());
    if (failures_out) *failures_out = failures;
    if (opts.format == "json") {
        // timing is deliberately left out so identical runs are byte-identical
        Json arr = Json::array();
        for (const auto& s : suites) {
            Json j{{"suite", s.name}, {"cells", s.cells}, {"failures", s.failures}};
            if (!s.note.empty()) j["note"] = s.note;
            arr.push_back(j);
        }
        return Json{{"suites", arr}, {"total_failures", failures}}.dump(2) + "\n";
    }
    std::ostringstream os;
    for (const auto& s : suites) {
        os << (s.ok() ? "PASS " : "FAIL ") << s.name << ": " << s.cells << " cells, "
           << s.failures.size() << " failures (" << static_cast<long>(s.elapsed_ms) << " ms)\n";
        for (size_t i = 0; i < s.failures.size() && i < 8; ++i)
            os << "  - " << s.failures[i] << "\n";
        if (s.failures.size() > 8)
            os << "  - ... " << s.failures.size() - 8 << " further failures\n";
        if (!s.note.empty()) os << "  note: " << s.note << "\n";
    }
    os << (failures == 0 ? "all suites passed\n" : "suites reported failures\n");
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact poly-Bernoulli numbers, star variants, and verification"};
    app.require_subcommand(1);

    // ---- value ----------------------------------------------------------
    auto* value = app.add_subcommand("value", "compute a single exact value");
    value->require_subcommand(1);
    OutputOptions value_opts;

    long vn = 0;
    std::vector<int> vk, vl, vm, vs;
    int vd = 0;

    auto* v_single = value->add_subcommand("single", "B_n^{(k)}");
    v_single->add_option("-n", vn, "lower index n >= 0")->required();
    v_single->add_option("-k", vk, "upper index k")->expected(1)->required();
    add_output_flags(v_single, value_opts);

    auto* v_double = value->add_subcommand("double", "B_{l1,l2}^{(k1,k2)} (closed formula)");
    v_double->add_option("-l", vl, "lower indices l1 l2")->expected(2)->required();
    v_double->add_option("-k", vk, "weights k1 k2")->expected(2)->required();
    add_output_flags(v_double, value_opts);

    auto* v_multi = value->add_subcommand("multi", "B^{(s),(d)}_{m} via the generating function");
    v_multi->add_option("-m", vm, "lower indices m1..mr")->required();
    v_multi->add_option("-s", vs, "weights s1..sr")->required();
    v_multi->add_option("-d", vd, "denominator depth d (default r)");
    add_output_flags(v_multi, value_opts);

    auto* v_star = value->add_subcommand("star-double", "double star value B*_{m1,m2}^{(s1,s2)}");
    v_star->add_option("-m", vm, "lower indices m1 m2")->expected(2)->required();
    v_star->add_option("-s", vs, "weights s1 s2")->expected(2)->required();
    add_output_flags(v_star, value_opts);

    // ---- table ----------------------------------------------------------
    auto* table = app.add_subcommand("table", "emit a value table as CSV or JSON");
    table->require_subcommand(1);
    OutputOptions table_opts;
    table_opts.format = "csv";

    int t_max_n = 4, t_max_k = 4;
    auto* t_single = table->add_subcommand(
        "single", "duality matrix rows (n, k, B_n^{(-k)}) for n <= max-n, k <= max-k");
    t_single->add_option("--max-n", t_max_n, "row bound");
    t_single->add_option("--max-k", t_max_k, "column bound");
    add_output_flags(t_single, table_opts, true);

    std::vector<int> t_s, t_caps;
    int t_d = 0, t_total_cap = 0;
    auto* t_multi = table->add_subcommand("multi", "box of multi-indexed values");
    t_multi->add_option("-s", t_s, "weights s1..sr")->required();
    t_multi->add_option("-d", t_d, "denominator depth d (default r)");
    t_multi->add_option("--caps", t_caps, "per-index caps (default from depth)");
    t_multi->add_option("--total-cap", t_total_cap, "total-degree cap override");
    add_output_flags(t_multi, table_opts, true);

    // ---- polylog --------------------------------------------------------
    auto* polylog = app.add_subcommand("polylog", "truncated multiple polylogarithm values");
    polylog->require_subcommand(1);
    OutputOptions poly_opts;
    std::vector<int> p_s;
    std::vector<std::string> p_z;
    long p_M = 10;
    for (const char* kind : {"ast", "sharp", "ast-star", "sharp-star", "decomp-check"}) {
        auto* sub = polylog->add_subcommand(kind, "");
        sub->add_option("-s", p_s, "weights s1..sr")->required();
        sub->add_option("-z", p_z, "arguments z1..zr as rationals, |z| < 1")->required();
        sub->add_option("-M", p_M, "summation cutoff (largest index)")->required();
        add_output_flags(sub, poly_opts);
    }

    // ---- verify ---------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    OutputOptions verify_opts;
    std::string suite;
    verify->add_option("suite", suite, "duality | explicit-double | star-double | star-triple | "
                                       "polylog-star | periodicity | all")
        ->required()
        ->check(CLI::IsMember({"duality", "explicit-double", "star-double", "star-triple",
                               "polylog-star", "periodicity", "all"}));
    int ver_max = 0;
    long ver_p = 0;
    int ver_N = 0;
    std::vector<int> ver_k;
    bool ver_small = false;
    int jobs = 1;
    verify->add_option("--max", ver_max, "grid bound override");
    verify->add_option("-p,--mod-p", ver_p, "prime for periodicity");
    verify->add_option("-N,--mod-N", ver_N, "prime-power exponent");
    verify->add_option("-k,--k", ver_k, "weight magnitudes k1 [k2]");
    verify->add_flag("--small", ver_small, "reduced scale for a quick pass");
    verify->add_option("--jobs", jobs, "parallelism degree")->check(CLI::PositiveNumber);
    add_output_flags(verify, verify_opts);

    // ---- search ---------------------------------------------------------
    auto* search = app.add_subcommand("search", "exploratory sweeps");
    OutputOptions search_opts;
    auto* finer = search->add_subcommand("finer-period",
                                         "test divisors of the proven period on a range");
    long f_p = 3;
    int f_N = 1;
    std::vector<int> f_k{1, 1};
    long f_maxq = 1 << 20;
    std::vector<long> f_range;
    finer->add_option("-p,--mod-p", f_p, "prime")->required();
    finer->add_option("-N,--mod-N", f_N, "exponent")->required();
    finer->add_option("-k,--k", f_k, "weight magnitudes k1 k2")->expected(2);
    finer->add_option("--max-period", f_maxq, "largest candidate period to test");
    finer->add_option("--range", f_range, "index range lo hi")->expected(2);
    add_output_flags(finer, search_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (v_single->parsed())
            return emit(value_opts, render_value(pb_single(vn, vk.at(0)), value_opts));
        if (v_double->parsed())
            return emit(value_opts,
                        render_value(double_explicit(vl.at(0), vl.at(1), vk.at(0), vk.at(1)),
                                     value_opts));
        if (v_multi->parsed()) {
            if (vm.size() != vs.size()) {
                std::cerr << "value multi: -m and -s must have the same length\n";
                return 2;
            }
            GFSpec spec(vs, vd == 0 ? static_cast<int>(vs.size()) : vd);
            return emit(value_opts, render_value(multi_indexed(vm, spec).value, value_opts));
        }
        if (v_star->parsed())
            return emit(value_opts, render_value(star_double(vm.at(0), vm.at(1), vs.at(0),
                                                             vs.at(1)),
                                                 value_opts));

        if (t_single->parsed() || t_multi->parsed()) {
            PBTable t = [&] {
                if (t_single->parsed()) {
                    // duality matrix as an r=2-shaped listing: value(n,k) = B_n^{(-k)}
                    PBTable out{GFSpec({0, 0}, 2), {t_max_n, t_max_k}, false, {}};
                    for (int n = 0; n <= t_max_n; ++n)
                        for (int k = 0; k <= t_max_k; ++k)
                            out.entries.push_back(
                                PBValue{{n, k}, out.spec, pb_single(n, -k), false});
                    return out;
                }
                GFSpec spec(t_s, t_d == 0 ? static_cast<int>(t_s.size()) : t_d);
                auto [def_per, def_total] = default_caps(spec.r);
                std::vector<int> caps = t_caps;
                if (caps.empty()) caps.assign(static_cast<size_t>(spec.r), def_per);
                if (static_cast<int>(caps.size()) != spec.r)
                    throw CLI::ValidationError("--caps length must equal the depth");
                int total = t_total_cap > 0 ? t_total_cap : (t_caps.empty() ? def_total : -1);
                return multi_indexed_table(spec, caps, total);
            }();
            if (table_opts.format == "json") return emit(table_opts, json_of(t).dump(2) + "\n");
            std::ostringstream os;
            write_csv(os, t);
            if (table_opts.format == "pretty") {
                return emit(table_opts, os.str());
            }
            return emit(table_opts, os.str());
        }

        if (polylog->parsed()) {
            std::vector<Rational> z;
            for (const auto& s : p_z) z.push_back(Rational::parse(s));
            PolylogCutoff cut(p_M);
            CLI::App* active = polylog->get_subcommands().at(0);
            const std::string kind = active->get_name();
            if (kind == "decomp-check") {
                auto rep = star_decomposition_check(p_s, z, cut);
                if (poly_opts.format == "json") {
                    Json terms = Json::array();
                    for (const auto& t : rep.rhs_terms) terms.push_back(json_of(t));
                    Json j{{"weights", rep.weights}, {"cutoff", rep.cutoff},
                           {"lhs", json_of(rep.lhs)}, {"rhs_terms", terms},
                           {"rhs", json_of(rep.rhs)}, {"equal", rep.equal}};
                    int rc = emit(poly_opts, j.dump(2) + "\n");
                    return rc != 0 ? rc : (rep.equal ? 0 : 1);
                }
                std::ostringstream os;
                os << "lhs  = " << rep.lhs << "\nrhs  = " << rep.rhs << "  (";
                for (size_t i = 0; i < rep.rhs_terms.size(); ++i)
                    os << (i ? " + " : "") << rep.rhs_terms[i];
                os << ")\n" << (rep.equal ? "equal\n" : "NOT EQUAL\n");
                int rc = emit(poly_opts, os.str());
                return rc != 0 ? rc : (rep.equal ? 0 : 1);
            }
            Rational v = kind == "ast"        ? li_ast(p_s, z, cut)
                         : kind == "sharp"    ? li_sharp(p_s, z, cut)
                         : kind == "ast-star" ? li_ast_star(p_s, z, cut)
                                              : li_sharp_star(p_s, z, cut);
            return emit(poly_opts, render_value(v, poly_opts));
        }

        if (verify->parsed()) {
            std::vector<SuiteReport> suites;
            const bool small = ver_small;
            auto want = [&](const char* name) { return suite == name || suite == "all"; };
            if (want("duality")) {
                suites.push_back(verify_single_duality(ver_max > 0 ? ver_max : (small ? 6 : 10)));
                suites.push_back(small ? verify_multi_duality(3, 2)
                                       : verify_multi_duality(ver_max > 0 ? std::min(ver_max, 5) : 5,
                                                              ver_max > 0 ? std::min(ver_max, 3) : 3));
                suites.push_back(verify_classical_reduction(small ? 12 : 20));
            }
            if (want("explicit-double")) {
                suites.push_back(small ? verify_double_routes(4, -2, 2)
                                       : verify_double_routes(6, -3, 3));
                suites.push_back(small ? verify_integrality(4, 2) : verify_integrality(6, 3));
                suites.push_back(verify_single_routes(small ? 8 : 12, -4, 4));
            }
            if (want("star-double")) {
                suites.push_back(small ? verify_star_double(4, -2, 1) : verify_star_double(6, -3, 1));
                suites.push_back(small ? verify_odd_collapse(4, -2, 1) : verify_odd_collapse(6, -3, 1));
            }
            if (want("star-triple"))
                suites.push_back(small ? verify_star_triple(3) : verify_star_triple(4));
            if (want("polylog-star"))
                suites.push_back(small ? verify_polylog_star(12, {Rational(1, 2), Rational(1, 3)},
                                                             -1, 1, jobs)
                                       : verify_polylog_star(30,
                                                             {Rational(1, 2), Rational(1, 3),
                                                              Rational(2, 5)},
                                                             -2, 2, jobs));
            if (want("periodicity")) {
                if (ver_p > 0) {
                    int N = ver_N > 0 ? ver_N : 1;
                    int k1 = ver_k.size() > 0 ? ver_k[0] : 1;
                    int k2 = ver_k.size() > 1 ? ver_k[1] : k1;
                    suites.push_back(
                        verify_periodicity({ver_p}, {N}, std::max(k1, k2), true, true));
                } else {
                    suites.push_back(small ? verify_periodicity({2, 3}, {1, 2}, 2)
                                           : verify_periodicity({2, 3, 5}, {1, 2}, 3));
                }
            }
            if (suite == "all") {
                suites.push_back(small ? verify_composite({4, 6}, 1) : verify_composite({4, 6, 12}, 2));
                suites.push_back(verify_truncation_robustness());
            }
            long failures = 0;
            std::string text = render_suites(suites, verify_opts, &failures);
            int rc = emit(verify_opts, text);
            return rc != 0 ? rc : (failures == 0 ? 0 : 1);
        }

        if (finer->parsed()) {
            long lo = f_range.size() == 2 ? f_range[0] : f_N;
            long hi = f_range.size() == 2
                          ? f_range[1]
                          : f_N + 2 * polybern::detail::phi_prime_power(f_p, f_N);
            auto rep = search_finer_period(f_p, f_N, f_k.at(0), f_k.at(1), f_maxq, lo, hi);
            if (search_opts.format == "json") return emit(search_opts, json_of(rep).dump(2) + "\n");
            std::ostringstream os;
            os << "proven period " << rep.proven_period << ", minimal working "
               << rep.minimal_working << (rep.conjectural ? " (conjectural, range-limited)" : "")
               << " on [" << rep.lo << "," << rep.hi << "]\n";
            for (const auto& c : rep.candidates)
                os << "  q=" << c.q << (c.holds ? " holds" : " fails") << "\n";
            return emit(search_opts, os.str());
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
