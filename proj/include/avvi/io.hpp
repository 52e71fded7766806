#pragma once

#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "avvi/components.hpp"
#include "avvi/errors.hpp"
#include "avvi/instances.hpp"
#include "avvi/model.hpp"
#include "avvi/sweep.hpp"

namespace avvi {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Instance files
// ---------------------------------------------------------------------------

inline json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json vector_to_json(const Vector& v) {
    json out = json::array();
    for (int i = 0; i < v.size(); ++i) out.push_back(to_string(v[i]));
    return out;
}

inline Matrix matrix_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.empty()) throw ParseError(std::string(what) + ": expected a nonempty array of rows");
    const int rows = static_cast<int>(j.size());
    const int cols = j[0].is_array() ? static_cast<int>(j[0].size()) : -1;
    if (cols <= 0) throw ParseError(std::string(what) + ": expected arrays of rational strings");
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (!j[static_cast<size_t>(i)].is_array() || static_cast<int>(j[static_cast<size_t>(i)].size()) != cols)
            throw ParseError(std::string(what) + ": ragged rows");
        for (int c = 0; c < cols; ++c) {
            const auto& cell = j[static_cast<size_t>(i)][static_cast<size_t>(c)];
            if (!cell.is_string()) throw ParseError(std::string(what) + ": entries must be rational strings");
            m(i, c) = parse_rational(cell.get<std::string>());
        }
    }
    return m;
}

inline Vector vector_from_json(const json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + ": expected an array of rational strings");
    Vector v(static_cast<int>(j.size()));
    for (size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_string()) throw ParseError(std::string(what) + ": entries must be rational strings");
        v[static_cast<int>(i)] = parse_rational(j[i].get<std::string>());
    }
    return v;
}

inline json instance_to_json(const AvviProblem& problem, json meta = json::object()) {
    json out;
    out["n"] = problem.n;
    out["m"] = problem.m();
    json ops = json::array();
    for (const auto& op : problem.operators) {
        json o;
        o["M"] = matrix_to_json(op.M);
        o["q"] = vector_to_json(op.q);
        ops.push_back(std::move(o));
    }
    out["operators"] = std::move(ops);
    if (problem.constraint) {
        json c;
        c["A"] = matrix_to_json(problem.constraint->A);
        c["b"] = vector_to_json(problem.constraint->b);
        out["constraints"] = std::move(c);
    } else {
        out["constraints"] = nullptr;
    }
    out["meta"] = std::move(meta);
    return out;
}

inline AvviProblem instance_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("instance: expected a JSON object");
    if (!j.contains("n") || !j["n"].is_number_integer()) throw ParseError("instance: missing integer field 'n'");
    if (!j.contains("m") || !j["m"].is_number_integer()) throw ParseError("instance: missing integer field 'm'");
    const int n = j["n"].get<int>();
    const int m = j["m"].get<int>();
    if (n < 1 || m < 1) throw ParseError("instance: n and m must be positive");
    if (!j.contains("operators") || !j["operators"].is_array() || static_cast<int>(j["operators"].size()) != m)
        throw ParseError("instance: 'operators' must be an array of length m");
    std::vector<AffineOperator> ops;
    for (const auto& o : j["operators"]) {
        if (!o.is_object() || !o.contains("M") || !o.contains("q"))
            throw ParseError("instance: each operator needs 'M' and 'q'");
        Matrix mm = matrix_from_json(o["M"], "operator M");
        Vector q = vector_from_json(o["q"], "operator q");
        if (mm.rows() != n || mm.cols() != n) throw ParseError("instance: operator M must be n x n");
        if (q.size() != n) throw ParseError("instance: operator q must have length n");
        ops.emplace_back(std::move(mm), std::move(q));
    }
    std::optional<Polyhedron> constraint;
    if (j.contains("constraints") && !j["constraints"].is_null()) {
        const auto& c = j["constraints"];
        if (!c.is_object() || !c.contains("A") || !c.contains("b"))
            throw ParseError("instance: 'constraints' must be null or contain 'A' and 'b'");
        Matrix a = matrix_from_json(c["A"], "constraint A");
        Vector b = vector_from_json(c["b"], "constraint b");
        if (a.cols() != n) throw ParseError("instance: constraint A must have n columns");
        if (a.rows() != b.size()) throw ParseError("instance: constraint rows of A and b differ");
        constraint = Polyhedron(std::move(a), std::move(b));
    }
    return AvviProblem(std::move(ops), std::move(constraint));
}

/// Canonical serialization: sorted keys, fixed two-space indentation, one
/// trailing newline. Parse followed by serialize is byte-identical.
inline std::string instance_to_string(const AvviProblem& problem, json meta = json::object()) {
    return instance_to_json(problem, std::move(meta)).dump(2) + "\n";
}

inline std::string canonical_json_string(const json& j) { return j.dump(2) + "\n"; }

/// Write via a temp file in the same directory plus rename.
inline void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ParseError("cannot open for writing: " + tmp);
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw ParseError("cannot rename into place: " + path);
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

// ---------------------------------------------------------------------------
// Analysis reports
// ---------------------------------------------------------------------------

struct AnalysisOptions {
    bool weak = true;
    bool pareto = true;
    bool run_oracle = false;
    OracleOptions oracle;
    int curve_samples_per_cell = 200;
};

struct ModeAnalysis {
    PieceGraph graph;
    ComponentReport report;
};

struct AnalysisReport {
    int n = 0, m = 0, p = 0;
    bool unconstrained = true;
    bool monotone = false;
    bool all_skew = false;
    std::optional<bool> nondegenerate;     // bicriteria only
    std::string structural = "ok";         // "ok" | "unsupported: ..." | "skipped"
    std::optional<ModeAnalysis> weak, pareto;
    std::optional<Integer> bound_general, bound_skew_upper, bound_lower;
    std::optional<bool> bounds_conform;
    std::optional<OracleResult> oracle;
    bool oracle_heuristic = true;
    long timing_ms = 0;
};

inline AnalysisReport analyze_problem(const AvviProblem& problem, const AnalysisOptions& opt = {}) {
    const auto start = std::chrono::steady_clock::now();
    AnalysisReport rep;
    rep.n = problem.n;
    rep.m = problem.m();
    rep.p = problem.p();
    rep.unconstrained = problem.unconstrained();
    rep.monotone = is_monotone(problem);
    rep.all_skew = true;
    for (const auto& op : problem.operators) rep.all_skew = rep.all_skew && is_skew(op.M);
    if (rep.m == 2) rep.nondegenerate = is_nondegenerate(problem);

    if (rep.m != 2) {
        rep.structural = "unsupported: structural counting requires m = 2";
    } else {
        try {
            if (opt.weak) {
                ModeAnalysis ma;
                ma.graph = build_piece_graph(problem, SweepMode::Weak);
                ma.report = count_components(ma.graph);
                rep.weak = std::move(ma);
            }
            if (opt.pareto) {
                ModeAnalysis ma;
                ma.graph = build_piece_graph(problem, SweepMode::Pareto);
                ma.report = count_components(ma.graph);
                rep.pareto = std::move(ma);
            }
        } catch (const UnsupportedError& e) {
            rep.structural = std::string("unsupported: ") + e.what();
            rep.weak.reset();
            rep.pareto.reset();
        }
    }
    if (!opt.weak && !opt.pareto) rep.structural = "skipped";

    rep.bound_general = bounds(rep.m, rep.n, rep.p, BoundKind::GeneralUpper);
    rep.bound_skew_upper =
        rep.all_skew ? bounds(rep.m, rep.n, rep.p, BoundKind::SkewBicriteriaUpper) : std::nullopt;
    rep.bound_lower = rep.monotone ? bounds(rep.m, rep.n, rep.p, BoundKind::LowerMonotone) : std::nullopt;
    if (rep.weak || rep.pareto) {
        bool ok = true;
        for (const auto& ma : {std::cref(rep.weak), std::cref(rep.pareto)}) {
            if (!ma.get()) continue;
            const Integer chi = ma.get()->report.count;
            if (rep.bound_general) ok = ok && chi <= *rep.bound_general;
            if (rep.bound_skew_upper && rep.nondegenerate.value_or(false) && rep.unconstrained)
                ok = ok && chi <= *rep.bound_skew_upper;
        }
        rep.bounds_conform = ok;
    }

    if (opt.run_oracle) rep.oracle = sampling_oracle(problem, opt.oracle);

    rep.timing_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                        .count();
    return rep;
}

inline json root_to_json(const Root& r) {
    if (r.is_exact) return to_string(r.value);
    json out;
    out["lo"] = to_string(r.lo);
    out["hi"] = to_string(r.hi);
    json coeffs = json::array();
    for (const auto& c : r.defining.coeffs()) coeffs.push_back(to_string(c));
    out["defining"] = std::move(coeffs);
    return out;
}

inline json pattern_to_json(const ActivePattern& p) {
    json out = json::array();
    for (int i : p.indices) out.push_back(i + 1); // 1-based in reports
    return out;
}

inline json cell_to_json(const ParamCell& cell) {
    json out;
    if (cell.is_point()) {
        out["kind"] = "point";
        out["value"] = root_to_json(cell.point);
        return out;
    }
    out["kind"] = "interval";
    out["lo"] = cell.lo_root ? root_to_json(*cell.lo_root) : json("0");
    out["hi"] = cell.hi_root ? root_to_json(*cell.hi_root) : json("1");
    out["closed_lo"] = cell.closed_lo;
    out["closed_hi"] = cell.closed_hi;
    out["sample"] = to_string(cell.sample);
    return out;
}

inline json ratfun_to_json(const RatFun& f) {
    json out;
    json num = json::array(), den = json::array();
    for (const auto& c : f.num.coeffs()) num.push_back(to_string(c));
    for (const auto& c : f.den.coeffs()) den.push_back(to_string(c));
    out["num"] = std::move(num);
    out["den"] = std::move(den);
    return out;
}

inline json piece_to_json(const SolutionPiece& piece) {
    json out;
    out["id"] = piece.id;
    out["cell"] = piece.cell_index;
    out["pattern"] = pattern_to_json(piece.pattern);
    out["dimension"] = piece.dimension;
    switch (piece.geometry) {
    case SolutionPiece::Geometry::Curve: {
        out["geometry"] = "curve";
        json coords = json::array();
        for (const auto& c : piece.curve.coords) coords.push_back(ratfun_to_json(c));
        out["coords"] = std::move(coords);
        break;
    }
    case SolutionPiece::Geometry::FixedSet:
        out["geometry"] = "fixed";
        out["witness"] = vector_to_json(piece.fixed.witness);
        break;
    case SolutionPiece::Geometry::SymbolicPoint:
        out["geometry"] = "symbolic";
        break;
    }
    return out;
}

inline json mode_analysis_to_json(const ModeAnalysis& ma) {
    json out;
    const auto& sweep = ma.graph.sweep;
    json criticals = json::array();
    for (const auto& r : sweep.criticals) criticals.push_back(root_to_json(r));
    out["criticals"] = std::move(criticals);
    json cells = json::array();
    for (const auto& c : sweep.cells) cells.push_back(cell_to_json(c));
    out["cells"] = std::move(cells);
    json pieces = json::array();
    for (const auto& piece : sweep.pieces) pieces.push_back(piece_to_json(piece));
    out["pieces"] = std::move(pieces);
    json edges = json::array();
    for (const auto& [a, b] : ma.graph.edges) edges.push_back(json::array({a, b}));
    out["edges"] = std::move(edges);
    out["chi"] = ma.report.count;
    json groups = json::array();
    for (const auto& grp : ma.report.groups) groups.push_back(grp);
    out["components"] = std::move(groups);
    json wits = json::array();
    for (const auto& w : ma.report.witnesses) wits.push_back(w ? vector_to_json(*w) : json(nullptr));
    out["witnesses"] = std::move(wits);
    out["degraded"] = sweep.degraded;
    return out;
}

inline json report_to_json(const AnalysisReport& rep) {
    json out;
    json summary;
    summary["n"] = rep.n;
    summary["m"] = rep.m;
    summary["p"] = rep.p;
    summary["unconstrained"] = rep.unconstrained;
    summary["monotone"] = rep.monotone;
    summary["skew"] = rep.all_skew;
    summary["nondegenerate"] = rep.nondegenerate ? json(*rep.nondegenerate) : json(nullptr);
    out["summary"] = std::move(summary);
    out["structural"] = rep.structural;
    if (rep.weak) out["weak"] = mode_analysis_to_json(*rep.weak);
    if (rep.pareto) out["pareto"] = mode_analysis_to_json(*rep.pareto);
    if (rep.weak) out["chi_weak"] = rep.weak->report.count;
    if (rep.pareto) out["chi_pareto"] = rep.pareto->report.count;
    json b;
    b["general_upper"] = rep.bound_general ? json(rep.bound_general->str()) : json(nullptr);
    b["skew_bicriteria_upper"] = rep.bound_skew_upper ? json(rep.bound_skew_upper->str()) : json(nullptr);
    b["lower_monotone"] = rep.bound_lower ? json(rep.bound_lower->str()) : json(nullptr);
    b["conforms"] = rep.bounds_conform ? json(*rep.bounds_conform) : json(nullptr);
    out["bounds"] = std::move(b);
    if (rep.oracle) {
        json o;
        o["heuristic"] = true;
        o["chi"] = rep.oracle->count;
        o["points"] = rep.oracle->points;
        o["refinements"] = rep.oracle->refinements;
        o["clipped"] = rep.oracle->clipped;
        o["coarsened"] = rep.oracle->coarsened;
        out["oracle"] = std::move(o);
    } else {
        out["oracle"] = nullptr;
    }
    out["timing_ms"] = rep.timing_ms;
    return out;
}

// ---------------------------------------------------------------------------
// Curve CSV export (presentation only; counts always come from exact data)
// ---------------------------------------------------------------------------

inline std::string curve_csv(const ModeAnalysis& ma, int samples_per_cell = 200) {
    if (samples_per_cell < 2) throw DimensionError("curve_csv: need at least 2 samples per cell");
    const auto& sweep = ma.graph.sweep;
    std::vector<int> component_of(sweep.pieces.size(), -1);
    for (size_t gi = 0; gi < ma.report.groups.size(); ++gi)
        for (int id : ma.report.groups[gi]) component_of[static_cast<size_t>(id)] = static_cast<int>(gi);

    std::ostringstream out;
    out.precision(17);
    const int n = sweep.pieces.empty()
                      ? 0
                      : static_cast<int>(sweep.pieces.front().curve.coords.size());
    out << "xi1";
    int width = n;
    for (const auto& piece : sweep.pieces)
        if (piece.geometry == SolutionPiece::Geometry::Curve)
            width = static_cast<int>(piece.curve.coords.size());
    for (int i = 1; i <= width; ++i) out << ",x_" << i;
    out << ",cell_id,pattern,component_id\n";

    for (const auto& piece : sweep.pieces) {
        if (piece.geometry != SolutionPiece::Geometry::Curve) continue;
        const ParamCell& cell = sweep.cells[static_cast<size_t>(piece.cell_index)];
        Rational lo = cell.lo_root ? cell.lo_root->upper() : Rational(0);
        Rational hi = cell.hi_root ? cell.hi_root->lower() : Rational(1);
        // inset open endpoints slightly; closed ones are sampled exactly
        const Rational inset = (hi - lo) / 1000;
        if (!(cell.closed_lo && !cell.lo_root)) lo += inset;
        if (!(cell.closed_hi && !cell.hi_root)) hi -= inset;
        for (int j = 0; j < samples_per_cell; ++j) {
            const Rational t = lo + Rational(j) * (hi - lo) / Rational(samples_per_cell - 1);
            if (!piece.curve.defined_at(t)) continue;
            const Vector x = piece.curve.eval(t);
            out << to_double(t);
            for (int i = 0; i < x.size(); ++i) out << "," << to_double(x[i]);
            std::string pat;
            for (int i : piece.pattern.indices) pat += (pat.empty() ? "" : ";") + std::to_string(i + 1);
            out << "," << piece.cell_index << "," << (pat.empty() ? "-" : pat) << ","
                << component_of[static_cast<size_t>(piece.id)] << "\n";
        }
    }
    return out.str();
}

} // namespace avvi
