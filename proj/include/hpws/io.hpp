#pragma once

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hpws/error.hpp"
#include "hpws/harness.hpp"
#include "hpws/routing.hpp"
#include "hpws/spanner.hpp"

namespace hpws {

namespace io {

using nlohmann::json;
namespace fs = std::filesystem;

inline std::string fmt12(double x) {
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

inline void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), errc::io_error, "cannot write " + path.string());
    out << text;
}

inline std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), errc::io_error, "cannot read " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// ---------------------------------------------------------------------------
// Spanner file: everything needed to reload the graph and rebuild tables.

struct SpannerFile {
    std::size_t n = 0;
    double s = 0;
    double tau = 0;  // 0 for Euclidean builds
    std::uint64_t seed = 0;
    std::string metric_kind;             // "euclidean" | "matrix"
    std::size_t dimension = 0;           // Euclidean only
    std::vector<double> matrix;          // matrix metric only (row-major n x n)
    std::vector<std::vector<double>> points_by_label;  // label order; may be empty per point
    std::vector<PointId> label_to_point;
    std::vector<LabelInterval> apex_by_label;
    std::vector<SpannerEdge> edges;
};

template <typename BuildT>
SpannerFile spanner_file_from_build(const BuildT& b, std::uint64_t seed) {
    SpannerFile f;
    f.n = b.labelling.leaf_count();
    f.s = b.s;
    f.seed = seed;
    if constexpr (requires { b.tau; }) f.tau = b.tau;
    f.metric_kind = b.metric.is_euclidean() ? "euclidean" : "matrix";
    f.dimension = b.pts.dimension();
    if (!b.metric.is_euclidean()) f.matrix = b.metric.matrix();
    for (Label v = 1; v <= f.n; ++v) {
        PointId p = b.labelling.label_to_point[v];
        f.label_to_point.push_back(p);
        if (b.pts.size() > p) {
            auto coords = b.pts[p];
            f.points_by_label.emplace_back(coords.begin(), coords.end());
        } else {
            f.points_by_label.emplace_back();
        }
        f.apex_by_label.push_back(b.labelling.apex_interval(v));
    }
    for (const SpannerEdge& e : b.graph.edges()) f.edges.push_back(e);
    return f;
}

inline json to_json(const SpannerFile& f) {
    json j;
    j["n"] = f.n;
    j["s"] = f.s;
    if (f.tau > 0) j["tau"] = f.tau;
    j["seed"] = f.seed;
    j["metric"] = {{"kind", f.metric_kind}, {"dimension", f.dimension}};
    if (!f.matrix.empty()) j["metric"]["matrix"] = f.matrix;
    j["points"] = f.points_by_label;
    json labels = json::array();
    for (std::size_t i = 0; i < f.label_to_point.size(); ++i)
        labels.push_back({{"label", i + 1},
                          {"point", f.label_to_point[i]},
                          {"apex", {f.apex_by_label[i].lo, f.apex_by_label[i].hi}}});
    j["labels"] = labels;
    json edges = json::array();
    for (const SpannerEdge& e : f.edges)
        edges.push_back({{"u", e.u},
                         {"v", e.v},
                         {"weight", e.weight},
                         {"a_interval", {e.a_interval.lo, e.a_interval.hi}},
                         {"b_interval", {e.b_interval.lo, e.b_interval.hi}}});
    j["edges"] = edges;
    return j;
}

inline SpannerFile spanner_file_from_json(const json& j) {
    SpannerFile f;
    f.n = j.at("n").get<std::size_t>();
    f.s = j.at("s").get<double>();
    f.tau = j.value("tau", 0.0);
    f.seed = j.value("seed", std::uint64_t(0));
    f.metric_kind = j.at("metric").at("kind").get<std::string>();
    f.dimension = j.at("metric").value("dimension", std::size_t(0));
    if (j.at("metric").contains("matrix"))
        f.matrix = j.at("metric").at("matrix").get<std::vector<double>>();
    f.points_by_label = j.at("points").get<std::vector<std::vector<double>>>();
    for (const auto& item : j.at("labels")) {
        f.label_to_point.push_back(item.at("point").get<PointId>());
        auto apex = item.at("apex");
        f.apex_by_label.push_back({apex.at(0).get<Label>(), apex.at(1).get<Label>()});
    }
    for (const auto& item : j.at("edges")) {
        SpannerEdge e;
        e.u = item.at("u").get<Label>();
        e.v = item.at("v").get<Label>();
        e.weight = item.at("weight").get<double>();
        e.a_interval = {item.at("a_interval").at(0).get<Label>(),
                        item.at("a_interval").at(1).get<Label>()};
        e.b_interval = {item.at("b_interval").at(0).get<Label>(),
                        item.at("b_interval").at(1).get<Label>()};
        f.edges.push_back(e);
    }
    return f;
}

inline void save_spanner(const SpannerFile& f, const fs::path& path) {
    write_text(path, to_json(f).dump(2) + "\n");
}

inline SpannerFile load_spanner(const fs::path& path) {
    json j = json::parse(read_text(path), nullptr, true);
    return spanner_file_from_json(j);
}

/// Geometry-free distance between labels, from the reloaded file.
inline double file_distance(const SpannerFile& f, Label u, Label v) {
    if (f.metric_kind == "matrix") {
        PointId a = f.label_to_point[u - 1], b = f.label_to_point[v - 1];
        return f.matrix[std::size_t(a) * f.n + b];
    }
    double sq = 0;
    for (std::size_t k = 0; k < f.dimension; ++k) {
        double d = f.points_by_label[u - 1][k] - f.points_by_label[v - 1][k];
        sq += d * d;
    }
    return std::sqrt(sq);
}

// ---------------------------------------------------------------------------
// CSV dumps

inline std::string tables_csv(const std::vector<RoutingTable>& tables) {
    std::ostringstream out;
    out << "u_label,x_v,y_b,y_h\n";
    for (std::size_t u = 1; u < tables.size(); ++u)
        for (const RoutingEntry& e : tables[u].entries)
            out << u << ',' << e.x_v << ',' << e.y_b << ',' << e.y_h << '\n';
    return out.str();
}

inline std::vector<RoutingTable> tables_from_csv(const std::string& text, std::size_t n) {
    std::vector<RoutingTable> tables(n + 1);
    for (Label u = 1; u <= n; ++u) tables[u].x_u = u;
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        RoutingEntry e;
        unsigned long u = 0;
        if (std::sscanf(line.c_str(), "%lu,%u,%u,%u", &u, &e.x_v, &e.y_b, &e.y_h) != 4)
            fail(errc::io_error, "bad routing-table row: " + line);
        require(1 <= u && u <= n, errc::io_error, "routing-table label out of range");
        tables[u].entries.push_back(e);
    }
    return tables;
}

inline std::string wspd_csv(const Wspd& w, const HeavyPathLabelling& hl) {
    std::ostringstream out;
    out << "a_interval_lo,a_interval_hi,b_interval_lo,b_interval_hi\n";
    for (const WspdPair& pr : w.pairs())
        out << hl.interval[pr.a].lo << ',' << hl.interval[pr.a].hi << ','
            << hl.interval[pr.b].lo << ',' << hl.interval[pr.b].hi << '\n';
    return out.str();
}

inline std::string labels_csv(const HeavyPathLabelling& hl) {
    std::ostringstream out;
    out << "point,leaf_label,apex_lo,apex_hi\n";
    for (Label v = 1; v <= hl.leaf_count(); ++v) {
        LabelInterval apex = hl.apex_interval(v);
        out << hl.label_to_point[v] << ',' << v << ',' << apex.lo << ',' << apex.hi << '\n';
    }
    return out.str();
}

inline std::string ratio_report_csv(const RatioReport& r) {
    std::ostringstream out;
    out << "p,q,dist,spanner_len,shortest_len,routed_len,spanner_hops,routed_hops,ascending_len\n";
    for (const PairRecord& rec : r.records)
        out << rec.p << ',' << rec.q << ',' << fmt12(rec.dist) << ',' << fmt12(rec.spanner_len)
            << ',' << fmt12(rec.shortest_len) << ',' << fmt12(rec.routed_len) << ','
            << rec.spanner_hops << ',' << rec.routed_hops << ',' << fmt12(rec.ascending_len)
            << '\n';
    return out.str();
}

inline json ratio_report_json(const RatioReport& r) {
    return json{{"n", r.n},
                {"s", r.s},
                {"seed", r.seed},
                {"exhaustive", r.exhaustive},
                {"max_spanning_ratio", r.max_spanning_ratio},
                {"max_shortest_ratio", r.max_shortest_ratio},
                {"max_routing_ratio", r.max_routing_ratio},
                {"max_ascending_ratio", r.max_ascending_ratio},
                {"max_abs_error", r.max_abs_error},
                {"max_rel_error", r.max_rel_error},
                {"max_spanner_hops", r.max_spanner_hops},
                {"max_routed_hops", r.max_routed_hops},
                {"mean_routed_hops", r.mean_routed_hops}};
}

inline std::string spanner_dot(const SpannerFile& f) {
    std::ostringstream out;
    out << "graph spanner {\n  node [shape=point];\n";
    for (std::size_t i = 0; i < f.n; ++i) {
        out << "  v" << (i + 1);
        if (f.dimension == 2 && f.points_by_label[i].size() == 2)
            out << " [pos=\"" << fmt12(f.points_by_label[i][0]) << ','
                << fmt12(f.points_by_label[i][1]) << "!\"]";
        out << ";\n";
    }
    for (const SpannerEdge& e : f.edges) out << "  v" << e.u << " -- v" << e.v << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace io

}  // namespace hpws
