#pragma once

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "hpws/io.hpp"
#include "hpws/random.hpp"
#include "hpws/verify.hpp"

namespace hpws {

namespace fs = std::filesystem;

struct RunConfig {
    fs::path input;                          // points CSV; empty -> generator or lower bound
    std::string metric_spec = "euclidean";   // "euclidean" | "matrix:<path>"
    double s = 4.0;
    double tau = 11.0;
    std::size_t n = 0;                       // generator size (0 = not a generator run)
    std::size_t dim = 2;
    std::uint64_t seed = 1;
    bool lowerbound = false;
    double eps = 0.0;
    fs::path out_dir;

    void validate() const {
        require(s > 2.0, errc::invalid_argument, "--s must exceed 2");
        require(tau >= 11.0, errc::invalid_argument, "--tau must be at least 11");
    }
};

using AnyBuild = std::variant<EuclideanBuild, DoublingBuild>;

/// Resolve the configured instance: explicit file, generator, or the built-in
/// lower-bound line instance.
inline AnyBuild build_instance(const RunConfig& cfg) {
    cfg.validate();
    bool matrix = cfg.metric_spec.rfind("matrix:", 0) == 0;

    if (cfg.lowerbound) {
        LowerBoundInstance inst = lower_bound_instance(cfg.s, cfg.eps);
        return build_euclidean(std::move(inst.pts), cfg.s, inst.cube);
    }
    if (matrix) {
        Metric m = load_metric_matrix(cfg.metric_spec.substr(7));
        std::size_t n = m.matrix_size();
        if (!cfg.input.empty()) {
            PointSet pts = load_points_csv(cfg.input);
            require(pts.size() == n, errc::invalid_argument,
                    "matrix size does not match point count");
            return build_doubling(std::move(pts), std::move(m), cfg.s, cfg.tau);
        }
        return build_doubling(PointSet(1), std::move(m), cfg.s, cfg.tau, n);
    }
    PointSet pts = cfg.input.empty() ? random_point_set(cfg.n ? cfg.n : 64, cfg.dim, cfg.seed)
                                     : load_points_csv(cfg.input);
    return build_euclidean(std::move(pts), cfg.s);
}

struct BuildStats {
    std::size_t n = 0, pairs = 0, edges = 0, max_degree = 0, table_bits = 0;

    std::string line() const {
        std::ostringstream os;
        os << "n=" << n << " pairs=" << pairs << " edges=" << edges
           << " max_degree=" << max_degree << " table_bits=" << table_bits;
        return os.str();
    }
};

template <typename BuildT>
BuildStats build_stats(const BuildT& b) {
    BuildStats st;
    st.n = b.labelling.leaf_count();
    st.pairs = b.wspd.size();
    st.edges = b.graph.edges().size();
    for (Label u = 1; u <= st.n; ++u) {
        st.max_degree = std::max(st.max_degree, b.graph.degree(u));
        st.table_bits += (3 * b.graph.degree(u) + 1) * ceil_log2(st.n);
    }
    return st;
}

/// `build`: writes spanner.json, tables.csv, wspd.csv, labels.csv and
/// spanner.dot into out_dir, returns the stats line.
inline BuildStats cmd_build(const RunConfig& cfg) {
    require(!cfg.out_dir.empty(), errc::invalid_argument, "build requires --out");
    fs::create_directories(cfg.out_dir);
    AnyBuild any = build_instance(cfg);
    return std::visit(
        [&](const auto& b) {
            io::SpannerFile f = io::spanner_file_from_build(b, cfg.seed);
            io::save_spanner(f, cfg.out_dir / "spanner.json");
            io::write_text(cfg.out_dir / "tables.csv", io::tables_csv(b.tables));
            io::write_text(cfg.out_dir / "wspd.csv", io::wspd_csv(b.wspd, b.labelling));
            io::write_text(cfg.out_dir / "labels.csv", io::labels_csv(b.labelling));
            io::write_text(cfg.out_dir / "spanner.dot", io::spanner_dot(f));
            io::write_text(cfg.out_dir / "tree.txt", b.tree.debug_dump());
            return build_stats(b);
        },
        any);
}

struct TraceHop {
    Label from = 0, to = 0;
    bool descending = false;
    double length = 0;
};

struct RouteTrace {
    std::vector<Label> vertices;
    std::vector<TraceHop> hops;
    double total_length = 0;

    std::string text() const {
        std::ostringstream os;
        os << vertices.front();
        for (const TraceHop& h : hops)
            os << (h.descending ? " -d-> " : " -a-> ") << h.to << " (len " << io::fmt12(h.length)
               << ")";
        os << "\ntotal_hops=" << hops.size() << " total_length=" << io::fmt12(total_length)
           << '\n';
        return os.str();
    }
};

/// `route`: drives the memoryless steps off the files written by `build`.
inline RouteTrace cmd_route(const RunConfig& cfg, Label p, Label q) {
    require(!cfg.out_dir.empty(), errc::invalid_argument, "route requires --out (build directory)");
    io::SpannerFile f = io::load_spanner(cfg.out_dir / "spanner.json");
    auto tables = io::tables_from_csv(io::read_text(cfg.out_dir / "tables.csv"), f.n);
    require(1 <= p && p <= f.n && 1 <= q && q <= f.n, errc::invalid_argument, "unknown label");
    RouteTrace trace;
    RouteResult rt = route(tables, p, q);
    trace.vertices = rt.vertices;
    for (std::size_t i = 0; i + 1 < rt.vertices.size(); ++i) {
        TraceHop hop;
        hop.from = rt.vertices[i];
        hop.to = rt.vertices[i + 1];
        hop.descending = rt.descending[i];
        hop.length = io::file_distance(f, hop.from, hop.to);
        trace.total_length += hop.length;
        trace.hops.push_back(hop);
    }
    return trace;
}

/// Full invariant suite for a freshly built instance.
template <typename BuildT>
VerifyReport verify_build(const BuildT& b, RatioReport* out_report = nullptr) {
    VerifyReport r;
    if constexpr (std::is_same_v<BuildT, EuclideanBuild>) {
        r.merge(check_quadtree(b.tree, b.pts, b.metric));
        r.merge(check_labelling(b.tree, b.labelling));
        r.merge(check_wspd(b.wspd, b.tree, b.labelling, b.pts, b.metric));
        r.merge(check_routing(b, euclidean_bounds(b.s), out_report));
    } else {
        r.merge(check_net_tree(b.tree, b.pts, b.metric));
        r.merge(check_labelling(b.tree, b.labelling));
        r.merge(check_wspd(b.wspd, b.tree, b.labelling, b.pts, b.metric));
        r.merge(check_routing(b, doubling_bounds(b.s, b.tau), out_report));
    }
    std::size_t n = b.labelling.leaf_count();
    if (n <= 128) {
        r.merge(check_phases(b));
        r.merge(check_uniqueness(b.tables));
    }
    r.merge(check_tables(b.tables, n));
    return r;
}

/// Delivery / budget / uniqueness checks against table files on disk (no
/// rebuild), catching deliberate corruption.
inline VerifyReport verify_files(const fs::path& dir) {
    VerifyReport r;
    io::SpannerFile f = io::load_spanner(dir / "spanner.json");
    auto tables = io::tables_from_csv(io::read_text(dir / "tables.csv"), f.n);
    r.merge(check_uniqueness(tables));
    bool delivered = true;
    std::string detail;
    for (Label p = 1; p <= f.n && delivered; ++p)
        for (Label q = 1; q <= f.n; ++q) {
            if (p == q) continue;
            try {
                route(tables, p, q);
            } catch (const Error& e) {
                delivered = false;
                detail = e.what();
                break;
            }
        }
    r.add("routing-budget-and-delivery", delivered, detail);
    return r;
}

inline io::json verify_report_json(const VerifyReport& r, const RunConfig& cfg) {
    io::json checks = io::json::array();
    for (const Finding& f : r.findings)
        checks.push_back({{"name", f.name}, {"pass", f.pass}, {"detail", f.detail}});
    return io::json{{"seed", cfg.seed}, {"s", cfg.s}, {"pass", r.pass()}, {"checks", checks}};
}

/// `verify`: builds (or loads, when `in_dir` is set) and runs every suite.
inline VerifyReport cmd_verify(const RunConfig& cfg, const fs::path& in_dir = {}) {
    if (!in_dir.empty()) return verify_files(in_dir);
    RunConfig c = cfg;
    if (c.input.empty() && c.n == 0 && !c.lowerbound) c.lowerbound = true;  // built-in default
    AnyBuild any = build_instance(c);
    return std::visit([&](const auto& b) { return verify_build(b); }, any);
}

struct BenchRow {
    std::size_t n = 0;
    double d_or_tau = 0;
    double s = 0;
    std::size_t pairs = 0, edges = 0;
    double max_spanning = 0, max_routing = 0;
    int max_hops = 0;
    double mean_hops = 0;
    double build_ms = 0;
    double route_ns_per_hop = 0;
};

inline std::string bench_csv_header() {
    return "n,d_or_tau,s,pairs,edges,max_spanning,max_routing,max_hops,mean_hops,build_ms,"
           "route_ns_per_hop\n";
}

inline std::string bench_row_csv(const BenchRow& r) {
    std::ostringstream os;
    os << r.n << ',' << io::fmt12(r.d_or_tau) << ',' << io::fmt12(r.s) << ',' << r.pairs << ','
       << r.edges << ',' << io::fmt12(r.max_spanning) << ',' << io::fmt12(r.max_routing) << ','
       << r.max_hops << ',' << io::fmt12(r.mean_hops) << ',' << io::fmt12(r.build_ms) << ','
       << io::fmt12(r.route_ns_per_hop) << '\n';
    return os.str();
}

template <typename BuildFn>
BenchRow bench_one(std::size_t n, double d_or_tau, double s, BuildFn make) {
    BenchRow row;
    row.n = n;
    row.d_or_tau = d_or_tau;
    row.s = s;
    auto t0 = std::chrono::steady_clock::now();
    auto b = make();
    auto t1 = std::chrono::steady_clock::now();
    row.build_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    BuildStats st = build_stats(b);
    row.pairs = st.pairs;
    row.edges = st.edges;
    RatioReport rep = measure_ratios(b);
    row.max_spanning = rep.max_spanning_ratio;
    row.max_routing = rep.max_routing_ratio;
    row.max_hops = rep.max_routed_hops;
    row.mean_hops = rep.mean_routed_hops;

    Rng rng(7);
    std::size_t hops = 0;
    auto r0 = std::chrono::steady_clock::now();
    for (int i = 0; i < 200; ++i) {
        Label p = Label(rng.bits() % n) + 1;
        Label q = Label(rng.bits() % n) + 1;
        if (p == q) continue;
        hops += route(b.tables, p, q).hops();
    }
    auto r1 = std::chrono::steady_clock::now();
    if (hops)
        row.route_ns_per_hop =
            std::chrono::duration<double, std::nano>(r1 - r0).count() / double(hops);
    return row;
}

/// `bench`: parameter sweeps emitting one CSV row per configuration.
inline std::string cmd_bench(const RunConfig& cfg, const std::string& sweep) {
    std::ostringstream out;
    out << bench_csv_header();
    if (sweep == "s") {
        std::size_t n = cfg.n ? cfg.n : 500;
        for (double s : {2.5, 3.0, 4.0, 6.0, 8.0, 16.0}) {
            PointSet pts = random_point_set(n, cfg.dim, cfg.seed);
            out << bench_row_csv(bench_one(n, double(cfg.dim), s, [&] {
                return build_euclidean(std::move(pts), s);
            }));
        }
    } else if (sweep == "n") {
        for (std::size_t n = 64; n <= 8192; n *= 2) {
            PointSet pts = random_point_set(n, cfg.dim, cfg.seed);
            out << bench_row_csv(bench_one(n, double(cfg.dim), cfg.s, [&] {
                return build_euclidean(std::move(pts), cfg.s);
            }));
        }
    } else if (sweep == "tau") {
        std::size_t n = cfg.n ? cfg.n : 128;
        for (double tau : {11.0, 16.0, 32.0}) {
            PointSet pts = random_point_set(n, cfg.dim, cfg.seed);
            Metric m = euclidean_as_matrix(pts);
            out << bench_row_csv(bench_one(n, tau, cfg.s, [&] {
                return build_doubling(PointSet(1), std::move(m), cfg.s, tau, n);
            }));
        }
    } else {
        fail(errc::invalid_argument, "unknown sweep '" + sweep + "' (use s, n, or tau)");
    }
    return out.str();
}

}  // namespace hpws
