#pragma once

#include <cmath>
#include <cstdlib>
#include <functional>
#include <future>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "hpws/dijkstra.hpp"
#include "hpws/error.hpp"
#include "hpws/heavy_path.hpp"
#include "hpws/hypercube.hpp"
#include "hpws/metric.hpp"
#include "hpws/net_tree.hpp"
#include "hpws/quadtree.hpp"
#include "hpws/random.hpp"
#include "hpws/routing.hpp"
#include "hpws/spanner.hpp"
#include "hpws/wspd.hpp"

namespace hpws {

// ---------------------------------------------------------------------------
// Assembled pipelines

struct EuclideanBuild {
    PointSet pts;
    Metric metric = Metric::euclidean();
    Hypercube root_cube;
    CompressedQuadtree tree;
    HeavyPathLabelling labelling;
    Wspd wspd{{}, 0, 0};
    SpannerGraph graph{0, {}};
    std::vector<RoutingTable> tables;
    double s = 0;
};

inline EuclideanBuild build_euclidean(PointSet pts, double s,
                                      std::optional<Hypercube> root_cube = std::nullopt) {
    EuclideanBuild b;
    b.pts = std::move(pts);
    b.s = s;
    b.root_cube = root_cube ? *root_cube : smallest_enclosing_hypercube(b.pts);
    b.tree = CompressedQuadtree::build(b.pts, b.root_cube);
    b.labelling = heavy_path_labelling(b.tree);
    b.wspd = build_wspd_euclidean(b.tree, s);
    b.graph = build_spanner(b.wspd, b.labelling, b.pts, b.metric);
    b.tables = make_routing_tables(b.graph, b.labelling);
    return b;
}

struct DoublingBuild {
    PointSet pts;  // may be coordinate-free (matrix metric only)
    Metric metric = Metric::euclidean();
    NetTree tree;
    HeavyPathLabelling labelling;
    Wspd wspd{{}, 0, 0};
    SpannerGraph graph{0, {}};
    std::vector<RoutingTable> tables;
    double s = 0;
    double tau = 0;
};

inline DoublingBuild build_doubling(PointSet pts, Metric metric, double s, double tau,
                                    std::size_t n_override = 0) {
    DoublingBuild b;
    b.pts = std::move(pts);
    b.metric = std::move(metric);
    b.s = s;
    b.tau = tau;
    b.tree = NetTree::build(b.pts, b.metric, {tau}, n_override);
    b.labelling = heavy_path_labelling(b.tree);
    b.wspd = build_wspd_doubling(b.tree, s, b.pts, b.metric);
    b.graph = build_spanner(b.wspd, b.labelling, b.pts, b.metric);
    b.tables = make_routing_tables(b.graph, b.labelling);
    return b;
}

// ---------------------------------------------------------------------------
// WSPD exactness oracle

struct ExactnessReport {
    std::size_t pair_count = 0;
    std::size_t covered_once = 0;
    std::vector<std::string> violations;
    bool pass() const { return violations.empty(); }
};

/// Brute-force incidence check: every unordered point pair covered by exactly
/// one WSPD pair, and every pair's point sets truly s-separated.
inline ExactnessReport wspd_exactness_check(const Wspd& w, const HeavyPathLabelling& hl,
                                            const PointSet& pts, const Metric& m,
                                            double rel_slack = 1e-9) {
    std::size_t n = hl.leaf_count();
    ExactnessReport report;
    report.pair_count = w.size();
    std::vector<std::uint8_t> cover(n * n, 0);

    std::vector<PointId> side_a, side_b;
    for (std::uint32_t id = 0; id < w.size(); ++id) {
        const WspdPair& pr = w.pair(id);
        LabelInterval ia = hl.interval[pr.a], ib = hl.interval[pr.b];
        side_a.clear();
        side_b.clear();
        for (Label x = ia.lo; x <= ia.hi; ++x) side_a.push_back(hl.label_to_point[x]);
        for (Label x = ib.lo; x <= ib.hi; ++x) side_b.push_back(hl.label_to_point[x]);

        bool disjoint = ia.hi < ib.lo || ib.hi < ia.lo;
        if (!disjoint)
            report.violations.push_back("pair " + std::to_string(id) + ": sides not disjoint");

        for (Label x = ia.lo; x <= ia.hi; ++x)
            for (Label y = ib.lo; y <= ib.hi; ++y) {
                std::size_t lo = std::min(x, y) - 1, hi = std::max(x, y) - 1;
                ++cover[lo * n + hi];
            }

        double d = set_distance(pts, m, side_a, side_b);
        double diam = std::max(side_a.size() > 1 ? set_diameter(pts, m, side_a) : 0.0,
                               side_b.size() > 1 ? set_diameter(pts, m, side_b) : 0.0);
        if (d < w.separation() * diam * (1.0 - rel_slack))
            report.violations.push_back("pair " + std::to_string(id) + ": separation " +
                                        std::to_string(d) + " < s*diam " +
                                        std::to_string(w.separation() * diam));
    }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            std::uint8_t c = cover[i * n + j];
            if (c == 1)
                ++report.covered_once;
            else
                report.violations.push_back("labels " + std::to_string(i + 1) + "," +
                                            std::to_string(j + 1) + " covered " +
                                            std::to_string(int(c)) + " times");
        }
    return report;
}

/// Independent full-scan locator used to cross-check find_separating_pair.
inline std::vector<std::uint32_t> scan_separating_pairs(const Wspd& w,
                                                        const HeavyPathLabelling& hl, Label p,
                                                        Label q) {
    std::vector<std::uint32_t> hits;
    for (std::uint32_t id = 0; id < w.size(); ++id) {
        const WspdPair& pr = w.pair(id);
        bool pa = hl.interval[pr.a].contains(p), pb = hl.interval[pr.b].contains(p);
        bool qa = hl.interval[pr.a].contains(q), qb = hl.interval[pr.b].contains(q);
        if ((pa && qb) || (pb && qa)) hits.push_back(id);
    }
    return hits;
}

// ---------------------------------------------------------------------------
// Ratio measurement

struct PairRecord {
    Label p = 0, q = 0;
    double dist = 0;
    double spanner_len = 0;
    double shortest_len = 0;
    double routed_len = 0;
    double ascending_len = 0;
    int spanner_hops = 0;
    int routed_hops = 0;
};

struct RatioReport {
    std::size_t n = 0;
    double s = 0;
    std::uint64_t seed = 0;
    bool exhaustive = true;
    std::vector<PairRecord> records;  // kept only when requested
    double max_spanning_ratio = 0;    // build_path length / d
    double max_shortest_ratio = 0;    // dijkstra length / d
    double max_routing_ratio = 0;     // routed length / d
    double max_ascending_ratio = 0;   // ascending stage length / d
    double max_abs_error = 0;         // (routed - spanner) / d
    double max_rel_error = 0;         // routed / spanner - 1
    int max_spanner_hops = 0;
    int max_routed_hops = 0;
    double mean_routed_hops = 0;
};

inline unsigned harness_thread_cap() {
    if (const char* env = std::getenv("HPWS_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return unsigned(v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? std::min(hc, 8u) : 1u;
}

/// Runs routing + the reference path + Dijkstra for ordered vertex pairs and
/// aggregates the worst ratios. Exhaustive all-pairs for n <= 512,
/// 10n seeded ordered pairs above. Per-pair work is independent; sources are
/// chunked across threads and merged in order.
template <typename BuildT>
RatioReport measure_ratios(const BuildT& b, bool keep_records = false,
                           std::uint64_t sample_seed = 1) {
    const std::size_t n = b.labelling.leaf_count();
    RatioReport report;
    report.n = n;
    report.s = b.s;
    report.seed = sample_seed;
    if (n < 2) return report;

    auto sp_table = dijkstra_all_pairs(b.graph);

    report.exhaustive = n <= 512;
    std::vector<std::pair<Label, Label>> sampled;
    if (!report.exhaustive) {
        Rng rng(sample_seed);
        for (std::size_t i = 0; i < 10 * n; ++i) {
            Label p = Label(rng.bits() % n) + 1;
            Label q = Label(rng.bits() % n) + 1;
            if (p != q) sampled.push_back({p, q});
        }
    }

    auto eval_pair = [&](Label p, Label q, RatioReport& acc) {
        PairRecord rec;
        rec.p = p;
        rec.q = q;
        rec.dist =
            b.metric.distance(b.pts, b.labelling.label_to_point[p], b.labelling.label_to_point[q]);
        auto bp = build_path(b.graph, b.wspd, b.tree, b.labelling, b.pts, b.metric, p, q);
        rec.spanner_len = bp.length;
        rec.spanner_hops = int(bp.edge_depths.size());
        rec.shortest_len = sp_table[p][q];
        auto rt = route(b.tables, p, q);
        rec.routed_hops = int(rt.hops());
        for (std::size_t i = 0; i + 1 < rt.vertices.size(); ++i) {
            double w = b.metric.distance(b.pts, b.labelling.label_to_point[rt.vertices[i]],
                                         b.labelling.label_to_point[rt.vertices[i + 1]]);
            rec.routed_len += w;
            if (!rt.descending[i]) rec.ascending_len += w;
        }
        acc.max_spanning_ratio = std::max(acc.max_spanning_ratio, rec.spanner_len / rec.dist);
        acc.max_shortest_ratio = std::max(acc.max_shortest_ratio, rec.shortest_len / rec.dist);
        acc.max_routing_ratio = std::max(acc.max_routing_ratio, rec.routed_len / rec.dist);
        acc.max_ascending_ratio = std::max(acc.max_ascending_ratio, rec.ascending_len / rec.dist);
        acc.max_abs_error =
            std::max(acc.max_abs_error, (rec.routed_len - rec.spanner_len) / rec.dist);
        acc.max_rel_error = std::max(acc.max_rel_error, rec.routed_len / rec.spanner_len - 1.0);
        acc.max_spanner_hops = std::max(acc.max_spanner_hops, rec.spanner_hops);
        acc.max_routed_hops = std::max(acc.max_routed_hops, rec.routed_hops);
        acc.mean_routed_hops += rec.routed_hops;
        if (keep_records) acc.records.push_back(rec);
    };

    unsigned threads = harness_thread_cap();
    std::size_t total_pairs = 0;
    if (report.exhaustive) {
        std::vector<std::future<RatioReport>> parts;
        std::size_t chunk = (n + threads - 1) / threads;
        for (unsigned tid = 0; tid < threads; ++tid) {
            Label lo = Label(tid * chunk + 1);
            Label hi = Label(std::min<std::size_t>(n, (tid + 1) * chunk));
            if (lo > hi) continue;
            parts.push_back(std::async(std::launch::async, [&, lo, hi] {
                RatioReport acc;
                for (Label p = lo; p <= hi; ++p)
                    for (Label q = 1; q <= n; ++q)
                        if (p != q) eval_pair(p, q, acc);
                return acc;
            }));
        }
        for (auto& f : parts) {
            RatioReport acc = f.get();
            report.max_spanning_ratio = std::max(report.max_spanning_ratio, acc.max_spanning_ratio);
            report.max_shortest_ratio = std::max(report.max_shortest_ratio, acc.max_shortest_ratio);
            report.max_routing_ratio = std::max(report.max_routing_ratio, acc.max_routing_ratio);
            report.max_ascending_ratio =
                std::max(report.max_ascending_ratio, acc.max_ascending_ratio);
            report.max_abs_error = std::max(report.max_abs_error, acc.max_abs_error);
            report.max_rel_error = std::max(report.max_rel_error, acc.max_rel_error);
            report.max_spanner_hops = std::max(report.max_spanner_hops, acc.max_spanner_hops);
            report.max_routed_hops = std::max(report.max_routed_hops, acc.max_routed_hops);
            report.mean_routed_hops += acc.mean_routed_hops;
            for (auto& r : acc.records) report.records.push_back(r);
        }
        total_pairs = n * (n - 1);
    } else {
        for (auto [p, q] : sampled) eval_pair(p, q, report);
        total_pairs = sampled.size();
    }
    if (total_pairs) report.mean_routed_hops /= double(total_pairs);
    return report;
}

// ---------------------------------------------------------------------------
// Lower-bound instance

struct LowerBoundInstance {
    double s = 0;
    double eps = 0;
    int k = 0;
    double alpha = 0;
    PointSet pts;  // 1-d, ordered p1..p8
    Hypercube cube;
    std::size_t expected_pairs = 13;
    std::vector<Label> expected_route{4, 3, 1, 8, 5};
    std::vector<Label> expected_spanner_path{4, 1, 8, 5};

    double expected_ratio() const { return (1 + 10 * alpha + 6 * eps) / (1 - 14 * alpha - 2 * eps); }
};

/// The 8-point line instance: p = {a, 3a, 5a, 7a, 1-7a, 1-5a, 1-3a, 1-a} with
/// a = 2^-ceil(lg(4s+8)), the outer four points shifted by eps, and [0,1]
/// forced as the root cube.
inline LowerBoundInstance lower_bound_instance(double s, double eps = 0.0) {
    require(s > 2.0, errc::invalid_argument, "separation ratio must exceed 2");
    LowerBoundInstance inst;
    inst.s = s;
    inst.k = int(std::ceil(std::log2(4 * s + 8)));
    inst.alpha = std::ldexp(1.0, -inst.k);
    require(eps >= 0.0 && eps < inst.alpha, errc::invalid_argument,
            "perturbation must satisfy 0 <= eps < alpha");
    inst.eps = eps;
    double a = inst.alpha;
    PointSet pts(1);
    for (double x : {a - eps, 3 * a, 5 * a, 7 * a + eps, 1 - 7 * a - eps, 1 - 5 * a, 1 - 3 * a,
                     1 - a + eps}) {
        double row[1] = {x};
        pts.add(row);
    }
    inst.pts = std::move(pts);
    inst.cube = Hypercube{{0.0}, 1.0};
    return inst;
}

// ---------------------------------------------------------------------------
// Closed-form error bounds and their numeric re-maximization

struct ErrorBoundTable {
    // Euclidean
    double delta_max, delta_argmax;  // 3 - 2 sqrt(2) at s = 2 + sqrt(2)
    double rel_max, rel_argmax;      // (7 - 4 sqrt(2)) / 17 at s = 2 + 2 sqrt(2)
};

inline double abs_error_euclidean(double s) { return 2 / s - 1 / (s - 1); }
inline double rel_error_euclidean(double s) { return (s - 2) / (s * s + 3 * s - 2); }

// Doubling-space analogues; s <= tau and s > tau regimes.
inline double abs_error_doubling_low(double s, double tau) {
    return 1 / (s - 1) - tau / (s * (tau - 1));
}
inline double abs_error_doubling_high(double s, double tau) {
    return tau / (s * (tau - 1)) - 1 / (s - 1);
}
inline double rel_error_doubling_low(double s, double tau) {
    return (tau - s) / ((s - 1) * (s * (tau - 1) + 4 * tau - 2));
}
inline double rel_error_doubling_high(double s, double tau) {
    return (s - tau) / ((tau - 1) * (s * s + 3 * s - 2));
}

inline ErrorBoundTable error_bound_table() {
    double r2 = std::sqrt(2.0);
    return {3 - 2 * r2, 2 + r2, (7 - 4 * r2) / 17, 2 + 2 * r2};
}

struct GridMax {
    double argmax = 0;
    double max = -std::numeric_limits<double>::infinity();
};

inline GridMax grid_maximize(const std::function<double(double)>& f, double lo, double hi,
                             double step) {
    GridMax best;
    for (double x = lo; x <= hi; x += step) {
        double y = f(x);
        if (y > best.max) {
            best.max = y;
            best.argmax = x;
        }
    }
    return best;
}

}  // namespace hpws
