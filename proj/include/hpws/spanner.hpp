#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hpws/error.hpp"
#include "hpws/heavy_path.hpp"
#include "hpws/metric.hpp"
#include "hpws/wspd.hpp"

namespace hpws {

using EdgeId = std::uint32_t;

struct SpannerEdge {
    Label u = 0;  // label of r(a)
    Label v = 0;  // label of r(b)
    double weight = 0;
    std::uint32_t pair_id = 0;
    LabelInterval a_interval;
    LabelInterval b_interval;
};

/// One edge per WSPD pair, between the heavy-path representatives of its two
/// nodes. Vertices are leaf labels 1..n.
class SpannerGraph {
public:
    SpannerGraph(std::size_t n, std::vector<SpannerEdge> edges)
        : n_(n), edges_(std::move(edges)), adjacency_(n + 1) {
        std::vector<std::pair<Label, Label>> seen;
        seen.reserve(edges_.size());
        for (EdgeId e = 0; e < edges_.size(); ++e) {
            const auto& ed = edges_[e];
            require(ed.u != ed.v, errc::corrupt_structure, "self-loop edge (representative collision)");
            require(1 <= ed.u && ed.u <= n_ && 1 <= ed.v && ed.v <= n_, errc::invalid_argument,
                    "edge endpoint out of range");
            seen.emplace_back(std::min(ed.u, ed.v), std::max(ed.u, ed.v));
            adjacency_[ed.u].push_back(e);
            adjacency_[ed.v].push_back(e);
        }
        std::sort(seen.begin(), seen.end());
        require(std::adjacent_find(seen.begin(), seen.end()) == seen.end(),
                errc::corrupt_structure, "duplicate edge (representative collision)");
    }

    std::size_t size() const { return n_; }
    std::span<const SpannerEdge> edges() const { return edges_; }
    const SpannerEdge& edge(EdgeId e) const { return edges_[e]; }
    std::span<const EdgeId> incident(Label u) const { return adjacency_[u]; }
    std::size_t degree(Label u) const { return adjacency_[u].size(); }

    Label other_end(EdgeId e, Label u) const { return edges_[e].u == u ? edges_[e].v : edges_[e].u; }

    bool has_edge(Label u, Label v) const {
        for (EdgeId e : adjacency_[u])
            if (other_end(e, u) == v) return true;
        return false;
    }

private:
    std::size_t n_;
    std::vector<SpannerEdge> edges_;
    std::vector<std::vector<EdgeId>> adjacency_;
};

inline SpannerGraph build_spanner(const Wspd& w, const HeavyPathLabelling& hl,
                                  const PointSet& pts, const Metric& m) {
    std::vector<SpannerEdge> edges;
    edges.reserve(w.size());
    for (std::uint32_t id = 0; id < w.size(); ++id) {
        const WspdPair& pr = w.pair(id);
        Label u = hl.rep_label(pr.a);
        Label v = hl.rep_label(pr.b);
        double weight = m.distance(pts, hl.label_to_point[u], hl.label_to_point[v]);
        edges.push_back({u, v, weight, id, hl.interval[pr.a], hl.interval[pr.b]});
    }
    return SpannerGraph(hl.leaf_count(), edges);
}

struct BuildPathResult {
    std::vector<Label> vertices;   // empty when p == q
    std::vector<int> edge_depths;  // recursion depth per edge; top call is 0
    double length = 0;
};

/// The centralized reference path: recurse through the separating pair,
/// linking r(a) to r(b) and chaining both sides. Every consecutive pair of
/// vertices is checked to be a spanner edge.
template <DecompositionTree T>
BuildPathResult build_path(const SpannerGraph& g, const Wspd& w, const T& t,
                           const HeavyPathLabelling& hl, const PointSet& pts, const Metric& m,
                           Label p, Label q) {
    struct Rec {
        const Wspd& w;
        const T& t;
        const HeavyPathLabelling& hl;
        std::vector<std::pair<std::pair<Label, Label>, int>> edges;
        int guard;

        void run(Label x, Label y, int depth) {
            if (x == y) return;
            require(depth <= guard, errc::corrupt_structure, "path recursion exceeded depth guard");
            SeparatingPair sp = find_separating_pair(w, t, hl, x, y);
            const WspdPair& pr = w.pair(sp.pair_id);
            NodeId na = sp.p_in_a ? pr.a : pr.b;
            NodeId nb = sp.p_in_a ? pr.b : pr.a;
            Label ra = hl.rep_label(na);
            Label rb = hl.rep_label(nb);
            run(x, ra, depth + 1);
            edges.push_back({{ra, rb}, depth});
            run(rb, y, depth + 1);
        }
    };

    std::size_t n = hl.leaf_count();
    int guard = 4 * (32 - std::countl_zero(std::uint32_t(n))) + 8;
    Rec rec{w, t, hl, {}, guard};
    rec.run(p, q, 0);

    BuildPathResult out;
    if (rec.edges.empty()) return out;
    out.vertices.push_back(p);
    for (auto& [edge, depth] : rec.edges) {
        auto [x, y] = edge;
        require(out.vertices.back() == x, errc::corrupt_structure, "path edges do not chain");
        require(g.has_edge(x, y), errc::corrupt_structure, "path uses a non-edge");
        out.vertices.push_back(y);
        out.edge_depths.push_back(depth);
        out.length += m.distance(pts, hl.label_to_point[x], hl.label_to_point[y]);
    }
    require(out.vertices.back() == q, errc::corrupt_structure, "path does not reach target");
    return out;
}

}  // namespace hpws
