#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "avvi/parallel.hpp"
#include "avvi/sweep.hpp"

namespace avvi {

/// Pieces plus closure-adjacency edges; the graph's connected components are
/// exactly the connected components of the solution set.
struct PieceGraph {
    SweepMode mode = SweepMode::Weak;
    SweepResult sweep;
    std::vector<std::pair<int, int>> edges;
};

struct ComponentReport {
    SweepMode mode = SweepMode::Weak;
    int count = 0;
    std::vector<std::vector<int>> groups;          // piece ids per component
    std::vector<std::optional<Vector>> witnesses;  // rational point per component when available
};

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int a) {
        while (parent[static_cast<size_t>(a)] != a) {
            parent[static_cast<size_t>(a)] = parent[static_cast<size_t>(parent[static_cast<size_t>(a)])];
            a = parent[static_cast<size_t>(a)];
        }
        return a;
    }
    void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

/// Does the polynomial system x_P(t) = target have a solution t inside the
/// cell (closed domain endpoints included)?
inline bool curve_attains(const RationalCurve& curve, const Vector& target, const ParamCell& cell) {
    UniPoly common;
    bool all_zero = true;
    for (size_t i = 0; i < curve.coords.size(); ++i) {
        const UniPoly h = curve.coords[i].num - target[static_cast<int>(i)] * curve.coords[i].den;
        if (h.is_zero()) continue;
        all_zero = false;
        common = common.is_zero() ? h : poly_gcd(common, h);
        if (common.degree() == 0) return false;
    }
    if (all_zero) return true; // constant curve equal to the target
    const Root zero = Root::exact(0), one = Root::exact(1);
    const Root& left = cell.lo_root ? *cell.lo_root : zero;
    const Root& right = cell.hi_root ? *cell.hi_root : one;
    for (const auto& r : isolate_roots(common, 0, 1)) {
        const bool at_left = root_equal(left, r);
        const bool at_right = root_equal(r, right);
        const bool above = at_left ? (!cell.lo_root && cell.closed_lo) : root_less(left, r);
        const bool below = at_right ? (!cell.hi_root && cell.closed_hi) : root_less(r, right);
        if (above && below) return true;
    }
    return false;
}

} // namespace detail

/// Exact closure-adjacency edges between solution pieces:
///  (a) curve <-> point-set through a shared critical via the curve's limit,
///  (b) curve <-> curve through a shared critical (equal limits that solve
///      the critical problem),
///  (c) point-sets at the same critical with intersecting closures,
///  (d) distinct-pattern curves over one cell whose closures meet, including
///      endpoint limits landing on the other curve.
inline PieceGraph build_piece_graph(const AvviProblem& problem, SweepMode mode) {
    PieceGraph g;
    g.mode = mode;
    g.sweep = run_sweep(problem, mode);
    const auto& sweep = g.sweep;

    auto add_edge = [&](int a, int b) {
        if (a == b) return;
        g.edges.emplace_back(std::min(a, b), std::max(a, b));
    };

    const int ncrit = static_cast<int>(sweep.criticals.size());
    std::vector<std::vector<int>> left_of(static_cast<size_t>(ncrit)), right_of(static_cast<size_t>(ncrit)),
        at(static_cast<size_t>(ncrit));
    std::vector<std::vector<int>> in_cell(sweep.cells.size());
    for (const auto& piece : sweep.pieces) {
        const ParamCell& cell = sweep.cells[static_cast<size_t>(piece.cell_index)];
        in_cell[static_cast<size_t>(piece.cell_index)].push_back(piece.id);
        if (cell.is_point()) {
            at[static_cast<size_t>(cell.left_critical)].push_back(piece.id);
        } else {
            if (cell.right_critical >= 0) left_of[static_cast<size_t>(cell.right_critical)].push_back(piece.id);
            if (cell.left_critical >= 0) right_of[static_cast<size_t>(cell.left_critical)].push_back(piece.id);
        }
    }

    for (int k = 0; k < ncrit; ++k) {
        const Root& c = sweep.criticals[static_cast<size_t>(k)];
        const auto& adj_left = left_of[static_cast<size_t>(k)];
        const auto& adj_right = right_of[static_cast<size_t>(k)];
        const auto& points = at[static_cast<size_t>(k)];

        if (c.is_exact) {
            auto limit_of = [&](int id) { return limit_at(sweep.pieces[static_cast<size_t>(id)].curve, c.value); };
            // (a) curve limits into point-piece closures
            for (const auto& side : {adj_left, adj_right}) {
                for (int pid : side) {
                    const auto lim = limit_of(pid);
                    if (!lim) continue;
                    for (int qid : points) {
                        const auto& q = sweep.pieces[static_cast<size_t>(qid)];
                        if (q.geometry == SolutionPiece::Geometry::FixedSet &&
                            q.fixed.xset.closure().contains(*lim))
                            add_edge(pid, qid);
                    }
                }
            }
            // (b) equal limits from both sides that solve the critical problem
            if (!adj_left.empty() && !adj_right.empty()) {
                const auto op = scalarize(problem, Weight::bicriteria(c.value));
                for (int lp : adj_left)
                    for (int rp : adj_right) {
                        const auto ll = limit_of(lp), rl = limit_of(rp);
                        if (ll && rl && *ll == *rl && is_vi_solution(op, problem.constraint, *ll))
                            add_edge(lp, rp);
                    }
            }
            // (c) point-set pairs with touching closures
            for (size_t i = 0; i < points.size(); ++i)
                for (size_t j = i + 1; j < points.size(); ++j) {
                    const auto& a = sweep.pieces[static_cast<size_t>(points[i])];
                    const auto& b = sweep.pieces[static_cast<size_t>(points[j])];
                    if (a.geometry != SolutionPiece::Geometry::FixedSet ||
                        b.geometry != SolutionPiece::Geometry::FixedSet)
                        continue;
                    LinIneqSystem joint = a.fixed.xset.closure();
                    joint.append(b.fixed.xset.closure());
                    if (is_feasible(joint)) add_edge(points[i], points[j]);
                }
        } else {
            // degraded mode (unconstrained): a bounded limit certifies both
            // nonemptiness of and adjacency to the critical solution set
            for (const auto& side : {adj_left, adj_right}) {
                for (int pid : side) {
                    if (!limit_exists_at(sweep.pieces[static_cast<size_t>(pid)].curve, c)) continue;
                    if (points.empty())
                        throw InternalError("bounded limit at an infeasible critical parameter");
                    for (int qid : points) add_edge(pid, qid);
                }
            }
        }
    }

    // (d) distinct-pattern pieces over the same interval cell
    for (size_t ci = 0; ci < sweep.cells.size(); ++ci) {
        const ParamCell& cell = sweep.cells[ci];
        if (cell.is_point() || in_cell[ci].size() < 2) continue;
        std::vector<Rational> endpoint_values;
        if (!cell.lo_root)
            endpoint_values.push_back(0);
        else if (cell.lo_root->is_exact)
            endpoint_values.push_back(cell.lo_root->value);
        if (!cell.hi_root)
            endpoint_values.push_back(1);
        else if (cell.hi_root->is_exact)
            endpoint_values.push_back(cell.hi_root->value);
        for (int pid : in_cell[ci])
            for (int qid : in_cell[ci]) {
                if (pid == qid) continue;
                const auto& p = sweep.pieces[static_cast<size_t>(pid)];
                const auto& q = sweep.pieces[static_cast<size_t>(qid)];
                for (const auto& e : endpoint_values) {
                    const auto lim = limit_at(q.curve, e);
                    if (lim && detail::curve_attains(p.curve, *lim, cell)) add_edge(pid, qid);
                }
            }
    }

    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
    return g;
}

/// Union-find over the piece graph; one witness per component when a
/// rational representative exists.
inline ComponentReport count_components(const PieceGraph& g) {
    ComponentReport rep;
    rep.mode = g.mode;
    const int n = static_cast<int>(g.sweep.pieces.size());
    detail::UnionFind uf(n);
    for (const auto& [a, b] : g.edges) uf.unite(a, b);
    std::vector<int> root_index(static_cast<size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        const int r = uf.find(i);
        if (root_index[static_cast<size_t>(r)] < 0) {
            root_index[static_cast<size_t>(r)] = static_cast<int>(rep.groups.size());
            rep.groups.emplace_back();
            rep.witnesses.emplace_back(std::nullopt);
        }
        const int gi = root_index[static_cast<size_t>(r)];
        rep.groups[static_cast<size_t>(gi)].push_back(i);
        if (!rep.witnesses[static_cast<size_t>(gi)]) {
            const auto& piece = g.sweep.pieces[static_cast<size_t>(i)];
            if (piece.geometry == SolutionPiece::Geometry::Curve)
                rep.witnesses[static_cast<size_t>(gi)] =
                    piece.curve.eval(g.sweep.cells[static_cast<size_t>(piece.cell_index)].sample);
            else if (piece.geometry == SolutionPiece::Geometry::FixedSet)
                rep.witnesses[static_cast<size_t>(gi)] = piece.fixed.witness;
        }
    }
    rep.count = static_cast<int>(rep.groups.size());
    return rep;
}

/// How the Pareto pieces differ from the weak ones: structurally identical
/// cell-by-cell, minus the curve values attained at closed domain endpoints.
struct ParetoWeakDiff {
    bool piecewise_identical = false;
    std::vector<Vector> removed;
    int chi_weak = 0, chi_pareto = 0;
};

inline ParetoWeakDiff pareto_weak_diff(const AvviProblem& problem) {
    ParetoWeakDiff diff;
    const PieceGraph weak = build_piece_graph(problem, SweepMode::Weak);
    const PieceGraph pareto = build_piece_graph(problem, SweepMode::Pareto);
    diff.chi_weak = count_components(weak).count;
    diff.chi_pareto = count_components(pareto).count;

    const auto& wp = weak.sweep.pieces;
    const auto& pp = pareto.sweep.pieces;
    diff.piecewise_identical = wp.size() == pp.size();
    if (diff.piecewise_identical)
        for (size_t i = 0; i < wp.size(); ++i) {
            if (!(wp[i].pattern == pp[i].pattern) || wp[i].geometry != pp[i].geometry ||
                wp[i].curve.coords != pp[i].curve.coords) {
                diff.piecewise_identical = false;
                break;
            }
        }
    for (const auto& piece : wp) {
        if (piece.geometry != SolutionPiece::Geometry::Curve) continue;
        const ParamCell& cell = weak.sweep.cells[static_cast<size_t>(piece.cell_index)];
        for (const auto& [closed, value] :
             {std::pair{cell.closed_lo, Rational(0)}, std::pair{cell.closed_hi, Rational(1)}}) {
            if (!closed) continue;
            const auto v = limit_at(piece.curve, value);
            if (!v) throw InternalError("weak piece undefined at its closed endpoint");
            diff.removed.push_back(*v);
        }
    }
    return diff;
}

// ---------------------------------------------------------------------------
// Monte-Carlo sampling oracle
// ---------------------------------------------------------------------------

struct OracleOptions {
    long grid = 2000;   // simplex lattice density target
    double eps = 0.05;  // neighborhood radius for clustering
    double clip = 10.0; // box radius; unbounded pieces are clipped to it
};

struct OracleResult {
    int count = 0;
    long points = 0;
    long refinements = 0;
    bool clipped = false;
    bool coarsened = false;
};

namespace detail {

struct OracleSampler {
    const AvviProblem& problem;
    const OracleOptions& opt;
    Rational clip_rat;
    bool clipped = false;
    bool coarsened = false;
    std::vector<unsigned long> feasible_faces; // precomputed pattern masks

    OracleSampler(const AvviProblem& prob, const OracleOptions& options)
        : problem(prob), opt(options), clip_rat(options.clip) {
        if (problem.constraint) {
            const int p = problem.constraint->p();
            if (p > 16) throw UnsupportedError("sampling_oracle: more than 16 constraints");
            for (unsigned long mask = 0; mask < (1ul << p); ++mask)
                if (is_feasible(pseudo_face_system(*problem.constraint, ActivePattern::from_mask(mask, p))))
                    feasible_faces.push_back(mask);
        }
    }

    bool in_box(const Vector& x) const {
        for (int i = 0; i < x.size(); ++i)
            if (abs_of(x[i]) > clip_rat) return false;
        return true;
    }

    static std::vector<double> to_doubles(const Vector& x) {
        std::vector<double> out(static_cast<size_t>(x.size()));
        for (int i = 0; i < x.size(); ++i) out[static_cast<size_t>(i)] = to_double(x[i]);
        return out;
    }

    /// Samples an affine set at spacing <= eps/2 in x, filtered by an exact
    /// membership predicate, clipped to the box.
    template <typename Filter>
    void sample_affine(const Vector& base, const std::vector<Vector>& dirs, int nx, Filter&& keep,
                       std::vector<std::vector<double>>& out) {
        std::vector<Vector> live;
        for (const auto& d : dirs) {
            double norm2 = 0;
            for (int i = 0; i < nx; ++i) norm2 += to_double(d[i]) * to_double(d[i]);
            if (norm2 > 1e-18) live.push_back(d);
        }
        auto emit = [&](const Vector& pt) {
            if (!keep(pt)) return;
            Vector x(nx);
            for (int i = 0; i < nx; ++i) x[i] = pt[i];
            if (!in_box(x)) {
                clipped = true;
                return;
            }
            out.push_back(to_doubles(x));
        };
        if (live.empty()) {
            emit(base);
            return;
        }
        // per-direction rational step: x moves by at most ~0.4 eps per step
        std::vector<Rational> steps;
        std::vector<long> spans;
        long total = 1;
        for (const auto& d : live) {
            double norm = 0;
            for (int i = 0; i < nx; ++i) norm += to_double(d[i]) * to_double(d[i]);
            norm = std::sqrt(norm);
            double step = 0.4 * opt.eps / norm;
            double reach = (2.0 * opt.clip * std::sqrt(static_cast<double>(nx))) / norm;
            long span = static_cast<long>(reach / step) + 1;
            const long cap = live.size() == 1 ? 100000 : 300;
            if (span > cap) {
                coarsened = true;
                step = reach / static_cast<double>(cap);
                span = cap;
            }
            steps.push_back(Rational(step));
            spans.push_back(span);
            total *= 2 * span + 1;
        }
        if (total > 200000) coarsened = true;
        std::vector<long> idx(live.size(), 0);
        std::vector<long> lo(live.size()), hi(live.size());
        for (size_t i = 0; i < live.size(); ++i) {
            lo[i] = -spans[i];
            hi[i] = spans[i];
            idx[i] = lo[i];
        }
        long emitted = 0;
        while (true) {
            Vector pt = base;
            for (size_t i = 0; i < live.size(); ++i) pt = pt + (Rational(idx[i]) * steps[i]) * live[i];
            emit(pt);
            if (++emitted > 200000) break;
            size_t k = 0;
            while (k < idx.size() && ++idx[k] > hi[k]) {
                idx[k] = lo[k];
                ++k;
            }
            if (k == idx.size()) break;
        }
    }

    /// Exact solve at one weight, sampled and clipped; all points in double.
    std::vector<std::vector<double>> cloud(const std::vector<Rational>& weight) {
        const auto op = scalarize(problem, Weight(weight));
        const int n = problem.n;
        std::vector<std::vector<double>> out;
        if (!problem.constraint) {
            const auto s = solve_affine_system(op.M, -op.q);
            if (!s) return out;
            sample_affine(s->base, s->directions, n, [](const Vector&) { return true; }, out);
            return out;
        }
        const Polyhedron& k = *problem.constraint;
        for (unsigned long mask : feasible_faces) {
            const ActivePattern alpha = ActivePattern::from_mask(mask, k.p());
            const int a = alpha.size();
            Matrix sys(n + a, n + a);
            Vector rhs(n + a);
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) sys(i, j) = op.M(i, j);
                for (int j = 0; j < a; ++j) sys(i, n + j) = -k.A(alpha.indices[static_cast<size_t>(j)], i);
                rhs[i] = -op.q[i];
            }
            for (int j = 0; j < a; ++j) {
                for (int col = 0; col < n; ++col) sys(n + j, col) = k.A(alpha.indices[static_cast<size_t>(j)], col);
                rhs[n + j] = k.b[alpha.indices[static_cast<size_t>(j)]];
            }
            const auto s = solve_affine_system(sys, rhs);
            if (!s) continue;
            auto keep = [&](const Vector& pt) {
                for (int j = 0; j < a; ++j)
                    if (pt[n + j] < 0) return false;
                Vector x(n);
                for (int i = 0; i < n; ++i) x[i] = pt[i];
                for (int i = 0; i < k.p(); ++i) {
                    if (alpha.contains(i)) continue;
                    if (dot(k.A.row(i), x) <= k.b[i]) return false;
                }
                return true;
            };
            sample_affine(s->base, s->directions, n, keep, out);
        }
        return out;
    }
};

inline double cloud_gap(const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b,
                        double good_enough) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& x : a)
        for (const auto& y : b) {
            double d2 = 0;
            for (size_t i = 0; i < x.size(); ++i) d2 += (x[i] - y[i]) * (x[i] - y[i]);
            best = std::min(best, std::sqrt(d2));
            if (best <= good_enough) return best;
        }
    return best;
}

} // namespace detail

/// Heuristic component count: exact per-weight solves over a simplex lattice
/// (plus exact rational critical values for m = 2), adaptive bisection of
/// lattice edges until in-box samples chain within eps, then eps-neighborhood
/// clustering of the sampled points. Correct for the paper-style families at
/// the defaults; not guaranteed in general.
inline OracleResult sampling_oracle(const AvviProblem& problem, const OracleOptions& opt = {}) {
    if (opt.grid <= 0) throw DimensionError("sampling_oracle: grid must be positive");
    if (!(opt.eps > 0)) throw DimensionError("sampling_oracle: eps must be positive");
    if (!(opt.clip > 0)) throw DimensionError("sampling_oracle: clip must be positive");
    const int m = problem.m();

    detail::OracleSampler sampler(problem, opt);

    // lattice density: keep the total point count near opt.grid
    long density = opt.grid;
    if (m > 2) {
        double fact = 1;
        for (int i = 2; i < m; ++i) fact *= i;
        density = std::max<long>(1, static_cast<long>(std::pow(static_cast<double>(opt.grid) * fact,
                                                               1.0 / static_cast<double>(m - 1))));
    }

    std::vector<std::vector<Rational>> weights;
    std::vector<std::pair<size_t, size_t>> segments;
    if (m == 2) {
        std::vector<Rational> ts;
        for (long j = 0; j <= density; ++j) ts.push_back(make_rational(j, density));
        try {
            for (const auto& r : critical_values(problem))
                if (r.is_exact) ts.push_back(r.value);
        } catch (const UnsupportedError&) {
            // no critical enrichment when the structural machinery declines
        }
        std::sort(ts.begin(), ts.end());
        ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
        for (const auto& t : ts) weights.push_back({t, 1 - t});
        for (size_t i = 0; i + 1 < weights.size(); ++i) segments.emplace_back(i, i + 1);
    } else {
        std::vector<std::vector<long>> comps;
        std::vector<long> cur(static_cast<size_t>(m), 0);
        // enumerate compositions of `density` into m parts
        std::function<void(int, long)> rec = [&](int pos, long left) {
            if (pos == m - 1) {
                cur[static_cast<size_t>(pos)] = left;
                comps.push_back(cur);
                return;
            }
            for (long v = 0; v <= left; ++v) {
                cur[static_cast<size_t>(pos)] = v;
                rec(pos + 1, left - v);
            }
        };
        rec(0, density);
        std::map<std::vector<long>, size_t> index;
        for (const auto& c : comps) {
            index[c] = weights.size();
            std::vector<Rational> w;
            for (long v : c) w.push_back(make_rational(v, density));
            weights.push_back(std::move(w));
        }
        for (const auto& c : comps) {
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    if (i == j || c[static_cast<size_t>(i)] == 0) continue;
                    std::vector<long> nb = c;
                    nb[static_cast<size_t>(i)] -= 1;
                    nb[static_cast<size_t>(j)] += 1;
                    if (nb < c) continue; // one direction per unordered pair
                    segments.emplace_back(index[c], index[nb]);
                }
        }
    }

    std::vector<std::vector<std::vector<double>>> clouds(weights.size());
    parallel_for(static_cast<long>(weights.size()),
                 [&](long i) { clouds[static_cast<size_t>(i)] = sampler.cloud(weights[static_cast<size_t>(i)]); });

    std::vector<std::vector<double>> points;
    for (const auto& c : clouds) points.insert(points.end(), c.begin(), c.end());

    // adaptive bisection: chase diverging tails and over-wide steps
    OracleResult res;
    struct Task {
        std::vector<Rational> wa, wb;
        std::vector<std::vector<double>> ca, cb;
        int depth;
    };
    std::vector<Task> stack;
    for (const auto& [i, j] : segments)
        stack.push_back({weights[i], weights[j], clouds[i], clouds[j], 0});
    const double target = opt.eps / 2;
    while (!stack.empty()) {
        Task t = std::move(stack.back());
        stack.pop_back();
        if (t.depth > 45) continue;
        const bool a_empty = t.ca.empty(), b_empty = t.cb.empty();
        if (a_empty && b_empty) continue;
        if (!a_empty && !b_empty && detail::cloud_gap(t.ca, t.cb, target) <= target) continue;
        std::vector<Rational> mid(t.wa.size());
        for (size_t i = 0; i < mid.size(); ++i) mid[i] = (t.wa[i] + t.wb[i]) / 2;
        auto cm = sampler.cloud(mid);
        ++res.refinements;
        points.insert(points.end(), cm.begin(), cm.end());
        stack.push_back({t.wa, mid, t.ca, cm, t.depth + 1});
        stack.push_back({std::move(mid), std::move(t.wb), std::move(cm), std::move(t.cb), t.depth + 1});
    }

    // eps-neighborhood clustering (union-find, sweep on the first coordinate)
    const long np = static_cast<long>(points.size());
    res.points = np;
    res.clipped = sampler.clipped;
    res.coarsened = sampler.coarsened;
    if (np == 0) {
        res.count = 0;
        return res;
    }
    std::vector<int> order(static_cast<size_t>(np));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return points[static_cast<size_t>(a)][0] < points[static_cast<size_t>(b)][0];
    });
    detail::UnionFind uf(static_cast<int>(np));
    for (size_t oi = 0; oi < order.size(); ++oi) {
        const auto& x = points[static_cast<size_t>(order[oi])];
        for (size_t oj = oi + 1; oj < order.size(); ++oj) {
            const auto& y = points[static_cast<size_t>(order[oj])];
            if (y[0] - x[0] > opt.eps) break;
            double d2 = 0;
            for (size_t i = 0; i < x.size(); ++i) d2 += (x[i] - y[i]) * (x[i] - y[i]);
            if (std::sqrt(d2) <= opt.eps) uf.unite(order[oi], order[oj]);
        }
    }
    std::vector<bool> seen(static_cast<size_t>(np), false);
    int clusters = 0;
    for (int i = 0; i < np; ++i) {
        const int r = uf.find(i);
        if (!seen[static_cast<size_t>(r)]) {
            seen[static_cast<size_t>(r)] = true;
            ++clusters;
        }
    }
    res.count = clusters;
    return res;
}

} // namespace avvi
