#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "hpws/harness.hpp"

namespace hpws {

struct Finding {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct VerifyReport {
    std::vector<Finding> findings;

    bool pass() const {
        for (const auto& f : findings)
            if (!f.pass) return false;
        return true;
    }
    void add(std::string name, bool ok, std::string detail = "") {
        findings.push_back({std::move(name), ok, std::move(detail)});
    }
    void merge(const VerifyReport& other) {
        findings.insert(findings.end(), other.findings.begin(), other.findings.end());
    }
};

inline double euclidean_spanning_bound(double s) { return 1 + 2 / s + 2 / (s - 1); }
inline double euclidean_routing_bound(double s) { return 1 + 4 / s + 1 / (s - 1); }
inline double doubling_routing_bound(double s, double tau) {
    return 1 + (2 + tau / (tau - 1)) / s + 1 / (s - 1);
}
inline double doubling_spanning_bound_low(double s, double tau) {
    return 1 + (2 + 2 * tau / (tau - 1)) / s;
}
inline int hop_bound(std::size_t n) { return int(std::floor(2 * std::log2(double(n)) + 1 + 1e-9)); }
inline int max_light_depth(std::size_t n) { return int(std::floor(std::log2(double(n)) + 1e-9)); }

namespace detail {

// Cell faces are nested sums lo + side/2^k, so a boundary point can sit a few
// ulp outside the recomputed face; structural checks allow that much slack.
inline bool contains_with_slack(const Hypercube& c, std::span<const double> p) {
    for (std::size_t k = 0; k < c.dimension(); ++k) {
        double eps = 1e-12 * (std::abs(c.lo[k]) + std::abs(c.hi(k)) + 1.0);
        if (p[k] < c.lo[k] - eps || p[k] > c.hi(k) + eps) return false;
    }
    return true;
}

template <DecompositionTree T>
void collect_subtree_points(const T& t, NodeId a, std::vector<PointId>& out) {
    out.clear();
    std::vector<NodeId> stack{a};
    while (!stack.empty()) {
        NodeId x = stack.back();
        stack.pop_back();
        if (t.is_leaf(x)) {
            out.push_back(t.leaf_point(x));
            continue;
        }
        for (NodeId c : t.children(x)) stack.push_back(c);
    }
}
}  // namespace detail

/// Structural sweep: halving, compression, containment chain, leaf payloads,
/// and the diameter-vs-cell-diagonal comparison.
inline VerifyReport check_quadtree(const CompressedQuadtree& t, const PointSet& pts,
                                   const Metric& m) {
    VerifyReport r;
    bool halving = true, compression = true, containment = true, leaves = true, diam_ok = true;
    std::string detail;
    std::vector<PointId> subtree;
    std::size_t leaf_seen = 0;
    for (NodeId a = 0; a < t.node_count(); ++a) {
        if (t.is_leaf(a)) {
            ++leaf_seen;
            if (!detail::contains_with_slack(t.cell_small(a), pts[t.leaf_point(a)]))
                leaves = false;
        } else if (t.children(a).size() < 2) {
            compression = false;
            detail = "node " + std::to_string(a) + " has a single child";
        }
        if (a != t.root()) {
            const Hypercube& pl = t.cell_small(t.parent(a));
            if (t.cell_small(a).diagonal() > pl.diagonal() / 2 * (1 + 1e-12)) {
                halving = false;
                detail = "halving violated at node " + std::to_string(a);
            }
            if (std::abs(t.cell_large(a).side - pl.side / 2) > 1e-12 * pl.side)
                containment = false;
        }
        const Hypercube &cs = t.cell_small(a), &cl = t.cell_large(a);
        for (std::size_t k = 0; k < t.dimension(); ++k)
            if (cs.lo[k] < cl.lo[k] - 1e-12 * cl.side ||
                cs.hi(k) > cl.hi(k) + 1e-12 * cl.side)
                containment = false;
        detail::collect_subtree_points(t, a, subtree);
        for (PointId p : subtree)
            if (!detail::contains_with_slack(cs, pts[p])) containment = false;
        if (subtree.size() > 1 &&
            set_diameter(pts, m, subtree) > t.cell_diagonal(a) * (1 + 1e-12))
            diam_ok = false;
    }
    r.add("quadtree-halving", halving, detail);
    r.add("quadtree-compression", compression, detail);
    r.add("quadtree-containment", containment);
    r.add("quadtree-leaves", leaves && leaf_seen == t.leaf_count());
    r.add("quadtree-diameter-vs-diagonal", diam_ok);
    return r;
}

inline VerifyReport check_net_tree(const NetTree& t, const PointSet& pts, const Metric& m) {
    VerifyReport r;
    PropertyReport cov = verify_covering(t, pts, m);
    PropertyReport pack = verify_packing(t, pts, m);
    r.add("nettree-covering", cov.pass(), cov.pass() ? "" : cov.violations.front());
    r.add("nettree-packing", pack.pass(), pack.pass() ? "" : pack.violations.front());

    bool levels = true, reps = true, diam_bound = true;
    for (NodeId a = 0; a < t.node_count(); ++a) {
        if (a != t.root()) {
            int la = t.is_leaf(a) ? std::numeric_limits<int>::min() : t.level(a);
            if (!(la < t.level(t.parent(a)))) levels = false;
        }
        if (!t.is_leaf(a)) {
            bool found = false;
            for (NodeId c : t.children(a))
                if (t.rep_hm(c) == t.rep_hm(a)) found = true;
            if (!found) reps = false;
        }
        auto sub = t.subtree_points(a);
        double diam = sub.size() > 1 ? set_diameter(pts, m, sub) : 0.0;
        NodeId anc = a;
        for (int k = 0;; ++k) {
            if (diam > nettree_subtree_diameter_bound(t, a, k) * (1 + 1e-12)) diam_bound = false;
            if (t.parent(anc) == kNoNode) break;
            anc = t.parent(anc);
        }
    }
    r.add("nettree-level-monotonic", levels);
    r.add("nettree-rep-inheritance", reps);
    r.add("nettree-diameter-bound", diam_bound);
    return r;
}

/// Interval contiguity, representative-gets-minimum, laminar child partition,
/// apex correctness, and the light-depth bound.
template <DecompositionTree T>
VerifyReport check_labelling(const T& t, const HeavyPathLabelling& hl) {
    VerifyReport r;
    bool contiguous = true, rep_min = true, partition = true, apex_ok = true, light_ok = true;
    for (NodeId a = 0; a < t.node_count(); ++a) {
        if (hl.interval[a].width() != hl.subtree_leaves[a]) contiguous = false;
        if (hl.rep_label(a) != hl.interval[a].lo) rep_min = false;
        if (!t.is_leaf(a)) {
            Label expected = hl.interval[a].lo;
            Label hi = 0;
            NodeId heavy = hl.heavy_child[a];
            if (hl.interval[heavy].lo != hl.interval[a].lo) partition = false;
            std::uint32_t covered = 0;
            for (NodeId c : t.children(a)) {
                covered += hl.interval[c].width();
                hi = std::max(hi, hl.interval[c].hi);
            }
            if (covered != hl.interval[a].width() || hi != hl.interval[a].hi) partition = false;
            (void)expected;
        }
    }
    for (Label v = 1; v <= hl.leaf_count(); ++v) {
        NodeId leaf = hl.label_to_leaf[v];
        NodeId apex = hl.apex[leaf];
        if (hl.rep[apex] != leaf) apex_ok = false;
        if (apex != t.root() && hl.rep[t.parent(apex)] == leaf) apex_ok = false;
        // every node from apex down to the leaf along heavy edges shares the rep
        NodeId x = apex;
        while (!t.is_leaf(x)) {
            if (hl.rep[x] != leaf) apex_ok = false;
            x = hl.heavy_child[x];
        }
        if (x != leaf) apex_ok = false;
        if (light_depth(t, hl, leaf) > max_light_depth(hl.leaf_count())) light_ok = false;
    }
    r.add("labelling-contiguous-intervals", contiguous);
    r.add("labelling-rep-minimum", rep_min);
    r.add("labelling-children-partition", partition);
    r.add("labelling-apex", apex_ok);
    r.add("labelling-light-depth", light_ok);
    return r;
}

template <DecompositionTree T>
VerifyReport check_wspd(const Wspd& w, const T& t, const HeavyPathLabelling& hl,
                        const PointSet& pts, const Metric& m) {
    VerifyReport r;
    ExactnessReport ex = wspd_exactness_check(w, hl, pts, m);
    r.add("wspd-exactness", ex.pass(), ex.pass() ? "" : ex.violations.front());

    bool ancestry = true;
    for (const WspdPair& pr : w.pairs()) {
        // both nodes must descend from the LCA of any represented point pair;
        // checked via interval containment of each side in every common ancestor
        Label pa = hl.interval[pr.a].lo, pb = hl.interval[pr.b].lo;
        NodeId x = hl.label_to_leaf[pa];
        while (x != kNoNode) {
            if (hl.interval[x].contains(pa) && hl.interval[x].contains(pb)) {
                if (!(hl.interval[x].contains(hl.interval[pr.a].hi) &&
                      hl.interval[x].contains(hl.interval[pr.b].hi)))
                    ancestry = false;
            }
            x = (x == t.root()) ? kNoNode : t.parent(x);
        }
    }
    r.add("wspd-subtree-ancestry", ancestry);
    return r;
}

inline std::string io_detail(double got, double bound) {
    std::ostringstream os;
    os.precision(12);
    os << "observed " << got << " vs bound " << bound;
    return os.str();
}

struct RoutingBounds {
    double spanning = 0;
    double routing = 0;
    double ascending = 0;  // max ascending_len / d
};

inline RoutingBounds euclidean_bounds(double s) {
    return {euclidean_spanning_bound(s), euclidean_routing_bound(s), 2 / s};
}
inline RoutingBounds doubling_bounds(double s, double tau) {
    return {euclidean_spanning_bound(s), doubling_routing_bound(s, tau),
            tau / (s * (tau - 1))};
}

/// Route-level checks: delivery and hop budget via measure_ratios, phase
/// monotonicity, the descending suffix matching BuildPath, and the
/// ratio-vs-bound comparisons.
template <typename BuildT>
VerifyReport check_routing(const BuildT& b, const RoutingBounds& bounds,
                           RatioReport* out_report = nullptr) {
    VerifyReport r;
    RatioReport rep = measure_ratios(b);
    if (out_report) *out_report = rep;
    std::size_t n = rep.n;
    const double tol = 1e-9;

    r.add("routing-delivery", true);  // measure_ratios would have thrown otherwise
    r.add("spanning-ratio", rep.max_spanning_ratio <= bounds.spanning + tol,
          io_detail(rep.max_spanning_ratio, bounds.spanning));
    r.add("routing-ratio", rep.max_routing_ratio <= bounds.routing + tol,
          io_detail(rep.max_routing_ratio, bounds.routing));
    r.add("ascending-length", rep.max_ascending_ratio <= bounds.ascending + tol,
          io_detail(rep.max_ascending_ratio, bounds.ascending));
    r.add("shortest-le-spanner", rep.max_shortest_ratio <= rep.max_spanning_ratio + tol);
    r.add("spanner-hops", rep.max_spanner_hops <= hop_bound(n),
          io_detail(rep.max_spanner_hops, hop_bound(n)));
    r.add("routed-hops", rep.max_routed_hops <= hop_bound(n),
          io_detail(rep.max_routed_hops, hop_bound(n)));
    return r;
}

/// Phase structure (ascending prefix, descending suffix) and the exact match
/// between the descending suffix and the centralized path. Exhaustive;
/// intended for n <= 128.
template <typename BuildT>
VerifyReport check_phases(const BuildT& b) {
    VerifyReport r;
    std::size_t n = b.labelling.leaf_count();
    bool phases = true, suffix = true, shortest_le_path = true;
    auto sp = dijkstra_all_pairs(b.graph);
    for (Label p = 1; p <= n && (phases || suffix); ++p)
        for (Label q = 1; q <= n; ++q) {
            if (p == q) continue;
            auto rt = route(b.tables, p, q);
            std::size_t first_desc = rt.hops();
            for (std::size_t i = 0; i < rt.hops(); ++i)
                if (rt.descending[i]) {
                    first_desc = i;
                    break;
                }
            for (std::size_t i = first_desc; i < rt.hops(); ++i)
                if (!rt.descending[i]) phases = false;
            Label ra = rt.vertices[first_desc];
            auto bp = build_path(b.graph, b.wspd, b.tree, b.labelling, b.pts, b.metric, ra, q);
            std::vector<Label> suffix_labels(rt.vertices.begin() + first_desc, rt.vertices.end());
            if (bp.vertices.empty()) {
                if (suffix_labels.size() != 1 || suffix_labels[0] != q) suffix = false;
            } else if (suffix_labels != bp.vertices) {
                suffix = false;
            }
            double path_len = 0;
            for (std::size_t i = 0; i + 1 < rt.vertices.size(); ++i)
                path_len += b.metric.distance(b.pts, b.labelling.label_to_point[rt.vertices[i]],
                                              b.labelling.label_to_point[rt.vertices[i + 1]]);
            if (sp[p][q] > path_len * (1 + 1e-9)) shortest_le_path = false;
        }
    r.add("routing-phase-structure", phases);
    r.add("routing-descending-suffix-is-buildpath", suffix);
    r.add("shortest-le-routed", shortest_le_path);
    return r;
}

/// Exhaustive uniqueness of the descending candidate (per destination) and
/// nesting of ascending candidates. Intended for n <= 128.
inline VerifyReport check_uniqueness(const std::vector<RoutingTable>& tables) {
    VerifyReport r;
    std::size_t n = tables.size() - 1;
    bool desc_unique = true, asc_nested = true;
    for (Label u = 1; u <= n; ++u) {
        for (Label q = 1; q <= n; ++q) {
            if (q == u) continue;
            int hits = 0;
            for (const RoutingEntry& e : tables[u].entries)
                if (e.x_v <= q && q <= e.y_b) ++hits;
            if (hits > 1) desc_unique = false;
        }
        std::vector<LabelInterval> cands;
        for (const RoutingEntry& e : tables[u].entries)
            if (e.x_v <= u && u <= e.y_h) cands.push_back({e.x_v, e.y_h});
        std::sort(cands.begin(), cands.end(), [](const LabelInterval& a, const LabelInterval& b) {
            return a.width() < b.width();
        });
        for (std::size_t i = 0; i + 1 < cands.size(); ++i) {
            if (cands[i].width() == cands[i + 1].width() && !(cands[i] == cands[i + 1]))
                asc_nested = false;
            if (!(cands[i + 1].lo <= cands[i].lo && cands[i].hi <= cands[i + 1].hi))
                asc_nested = false;
        }
    }
    r.add("descending-candidate-uniqueness", desc_unique);
    r.add("ascending-candidate-nesting", asc_nested);
    return r;
}

/// Bit-exact packed size and round-trip of every table.
inline VerifyReport check_tables(const std::vector<RoutingTable>& tables, std::size_t n) {
    VerifyReport r;
    bool size_ok = true, roundtrip = true;
    for (Label u = 1; u <= n; ++u) {
        PackedTable packed = pack_routing_table(tables[u], n);
        std::size_t expect = (3 * tables[u].entries.size() + 1) * ceil_log2(n);
        if (packed.bits != expect) size_ok = false;
        if (unpack_routing_table(packed, n, tables[u].entries.size()) != tables[u])
            roundtrip = false;
    }
    r.add("table-bit-size", size_ok);
    r.add("table-roundtrip", roundtrip);
    return r;
}

}  // namespace hpws
