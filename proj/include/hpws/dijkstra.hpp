#pragma once

#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "hpws/error.hpp"
#include "hpws/spanner.hpp"

namespace hpws {

/// Shortest-path lengths from src to every vertex (labels 1..n); index 0 unused.
inline std::vector<double> dijkstra_from(const SpannerGraph& g, Label src) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(g.size() + 1, inf);
    using Item = std::pair<double, Label>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[src] = 0;
    heap.push({0, src});
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) continue;
        for (EdgeId e : g.incident(u)) {
            Label v = g.other_end(e, u);
            double nd = d + g.edge(e).weight;
            if (nd < dist[v]) {
                dist[v] = nd;
                heap.push({nd, v});
            }
        }
    }
    return dist;
}

/// Exact all-pairs oracle; errors out on a disconnected graph, naming one
/// unreachable vertex.
inline std::vector<std::vector<double>> dijkstra_all_pairs(const SpannerGraph& g) {
    std::vector<std::vector<double>> table(g.size() + 1);
    for (Label u = 1; u <= g.size(); ++u) {
        table[u] = dijkstra_from(g, u);
        for (Label v = 1; v <= g.size(); ++v)
            if (table[u][v] == std::numeric_limits<double>::infinity())
                fail(errc::disconnected_graph, "vertex " + std::to_string(v) +
                                                   " unreachable from " + std::to_string(u));
    }
    return table;
}

}  // namespace hpws
