// Command-line front end: instance generation, exact bicriteria analysis,
// verification batches, bound tables and the sampling oracle.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "avvi/io.hpp"
#include "avvi/verify.hpp"

namespace {

using namespace avvi;

int cmd_gen(const std::string& family, int n, int p, const std::string& out_path) {
    if (family != "pp") {
        std::cerr << "error: unknown family '" << family << "' (available: pp)\n";
        return 2;
    }
    AvviProblem problem = gen_family(n, p);
    json meta;
    meta["family"] = "pp";
    meta["n"] = n;
    meta["p"] = p;
    const std::string text = instance_to_string(problem, std::move(meta));
    if (out_path.empty())
        std::cout << text;
    else
        write_file_atomic(out_path, text);
    return 0;
}

int cmd_analyze(const std::string& input, const std::string& mode, const std::string& report_path,
                const std::string& csv_path, bool with_oracle, const OracleOptions& oracle_opt,
                int csv_samples) {
    const AvviProblem problem = instance_from_json(read_json_file(input));
    AnalysisOptions opt;
    opt.weak = mode == "weak" || mode == "both";
    opt.pareto = mode == "pareto" || mode == "both";
    opt.run_oracle = with_oracle;
    opt.oracle = oracle_opt;
    if (problem.m() != 2) opt.run_oracle = true; // documented fallback
    const AnalysisReport rep = analyze_problem(problem, opt);

    const std::string text = canonical_json_string(report_to_json(rep));
    if (report_path.empty())
        std::cout << text;
    else
        write_file_atomic(report_path, text);

    if (!csv_path.empty()) {
        const ModeAnalysis* ma = rep.weak ? &*rep.weak : (rep.pareto ? &*rep.pareto : nullptr);
        if (!ma) {
            std::cerr << "error: --curve-csv requires a successful structural analysis\n";
            return 1;
        }
        write_file_atomic(csv_path, curve_csv(*ma, csv_samples));
    }
    if (!report_path.empty()) {
        std::cout << "structural: " << rep.structural;
        if (rep.weak) std::cout << ", chi_weak=" << rep.weak->report.count;
        if (rep.pareto) std::cout << ", chi_pareto=" << rep.pareto->report.count;
        if (rep.oracle) std::cout << ", oracle chi=" << rep.oracle->count << " (heuristic)";
        std::cout << "\n";
    }
    return 0;
}

int cmd_verify(const std::string& suite, int n_max, unsigned long long seed, bool with_oracle_table) {
    bool all = true;
    if (suite == "pp" || suite == "all") {
        // instance table: expected vs computed counts, bound checks, oracle
        std::cout << "instance   expected  chi_weak  chi_pareto  bounds  oracle\n";
        const int ncon = std::min(n_max, 6);
        for (const auto& [n, p] : verify_detail::family_instances(n_max, ncon)) {
            const AvviProblem prob = gen_family(n, p);
            const int expected = n / 2 + p + 1;
            const int weak = count_components(build_piece_graph(prob, SweepMode::Weak)).count;
            const int pareto = count_components(build_piece_graph(prob, SweepMode::Pareto)).count;
            const Integer lower = *bounds(2, n, p, BoundKind::LowerMonotone);
            const Integer general = *bounds(2, n, p, BoundKind::GeneralUpper);
            const auto skew_up = bounds(2, n, p, BoundKind::SkewBicriteriaUpper);
            bool bounds_ok = Integer(weak) >= lower && Integer(weak) <= general;
            if (skew_up) bounds_ok = bounds_ok && Integer(weak) <= *skew_up;
            std::optional<int> oracle_chi;
            if (with_oracle_table) oracle_chi = sampling_oracle(prob).count;
            const bool row_ok =
                weak == expected && pareto == expected && bounds_ok && (!oracle_chi || *oracle_chi == expected);
            all = all && row_ok;
            std::cout << "P(" << n << "," << p << ")     " << expected << "         " << weak
                      << "         " << pareto << "          " << (bounds_ok ? "ok" : "VIOLATED") << "      "
                      << (oracle_chi ? std::to_string(*oracle_chi) : std::string("-"))
                      << (row_ok ? "" : "   <-- MISMATCH") << "\n";
        }
        std::cout << "\n";
    }
    for (const auto& r : run_suite(suite, n_max, seed)) {
        all = all && r.pass;
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << "\n" << r.detail;
    }
    std::cout << (all ? "verification passed" : "verification FAILED") << "\n";
    return all ? 0 : 1;
}

int cmd_bounds(int m, int n, int p) {
    const auto general = bounds(m, n, p, BoundKind::GeneralUpper);
    const auto skew = bounds(m, n, p, BoundKind::SkewBicriteriaUpper);
    const auto lower = bounds(m, n, p, BoundKind::LowerMonotone);
    std::cout << "bound                      value\n";
    std::cout << "general upper              " << general->str() << "\n";
    std::cout << "skew bicriteria upper      "
              << (skew ? skew->str() : std::string("inapplicable (needs m=2, p=0, n even)")) << "\n";
    std::cout << "monotone lower             "
              << (lower ? lower->str() : std::string("inapplicable (needs m>=2, n>=2, p<=floor(n/2))"))
              << "\n";
    return 0;
}

int cmd_oracle(const std::string& input, const OracleOptions& opt, const std::string& report_path) {
    const AvviProblem problem = instance_from_json(read_json_file(input));
    const OracleResult res = sampling_oracle(problem, opt);
    json out;
    out["heuristic"] = true;
    out["chi"] = res.count;
    out["points"] = res.points;
    out["refinements"] = res.refinements;
    out["clipped"] = res.clipped;
    out["coarsened"] = res.coarsened;
    const std::string text = canonical_json_string(out);
    if (report_path.empty())
        std::cout << text;
    else {
        write_file_atomic(report_path, text);
        std::cout << "oracle chi=" << res.count << " (heuristic)\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact analysis of bicriteria affine vector variational inequalities"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a family instance");
    std::string family = "pp", gen_out;
    int gen_n = 2, gen_p = 0;
    gen->add_option("--family", family, "instance family (pp)")->required();
    gen->add_option("--n", gen_n, "number of variables (even)")->required();
    gen->add_option("--p", gen_p, "number of constraints (0..n/2)");
    gen->add_option("-o,--output", gen_out, "output path (stdout if omitted)");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "exact structural analysis of an instance");
    std::string an_input, an_mode = "both", an_report, an_csv;
    bool an_oracle = false;
    int an_csv_samples = 200;
    OracleOptions an_oracle_opt;
    analyze->add_option("input", an_input, "instance JSON file")->required();
    analyze->add_option("--mode", an_mode, "weak|pareto|both (default both)")
        ->check(CLI::IsMember({"weak", "pareto", "both"}));
    analyze->add_option("-o,--report", an_report, "report JSON path (stdout if omitted)");
    analyze->add_option("--curve-csv", an_csv, "CSV path for curve samples");
    analyze->add_option("--csv-samples", an_csv_samples, "samples per interval cell (default 200)");
    analyze->add_flag("--oracle", an_oracle, "append a sampling-oracle cross-check");
    analyze->add_option("--grid", an_oracle_opt.grid, "oracle lattice density (default 2000)");
    analyze->add_option("--eps", an_oracle_opt.eps, "oracle clustering radius (default 0.05)");
    analyze->add_option("--clip", an_oracle_opt.clip, "oracle clip box radius (default 10)");

    // verify
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite = "all";
    int n_max = 8;
    unsigned long long seed = 12345;
    bool table_oracle = false;
    verify->add_option("--suite", suite, "pp|cayley|bounds|scalarization|convexity|lift|oracle|all")
        ->required();
    verify->add_option("--n-max", n_max, "largest family dimension (default 8)");
    verify->add_option("--seed", seed, "random seed (default 12345)");
    verify->add_flag("--table-oracle", table_oracle, "include oracle counts in the instance table");

    // bounds
    auto* bnd = app.add_subcommand("bounds", "print the three bound formulas");
    int bm = 2, bn = 2, bp = 0;
    bnd->add_option("--m", bm, "criteria")->required();
    bnd->add_option("--n", bn, "variables")->required();
    bnd->add_option("--p", bp, "constraints")->required();

    // oracle
    auto* orc = app.add_subcommand("oracle", "standalone sampling-oracle run");
    std::string orc_input, orc_report;
    OracleOptions orc_opt;
    orc->add_option("input", orc_input, "instance JSON file")->required();
    orc->add_option("-o,--report", orc_report, "report JSON path (stdout if omitted)");
    orc->add_option("--grid", orc_opt.grid, "lattice density (default 2000)");
    orc->add_option("--eps", orc_opt.eps, "clustering radius (default 0.05)");
    orc->add_option("--clip", orc_opt.clip, "clip box radius (default 10)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) return cmd_gen(family, gen_n, gen_p, gen_out);
        if (analyze->parsed())
            return cmd_analyze(an_input, an_mode, an_report, an_csv, an_oracle, an_oracle_opt,
                               an_csv_samples);
        if (verify->parsed()) return cmd_verify(suite, n_max, seed, table_oracle);
        if (bnd->parsed()) return cmd_bounds(bm, bn, bp);
        if (orc->parsed()) return cmd_oracle(orc_input, orc_opt, orc_report);
    } catch (const avvi::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const avvi::DimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const avvi::UnsupportedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
