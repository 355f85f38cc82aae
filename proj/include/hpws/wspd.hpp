#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hpws/error.hpp"
#include "hpws/heavy_path.hpp"
#include "hpws/net_tree.hpp"
#include "hpws/quadtree.hpp"

namespace hpws {

struct WspdPair {
    NodeId a = kNoNode;
    NodeId b = kNoNode;
};

/// Well-separated pair decomposition: node pairs {a,b} such that every
/// unordered pair of distinct points is split by exactly one of them.
class Wspd {
public:
    Wspd(std::vector<WspdPair> pairs, double separation, std::size_t node_count)
        : pairs_(std::move(pairs)), separation_(separation), node_pairs_(node_count) {
        for (std::uint32_t id = 0; id < pairs_.size(); ++id) {
            node_pairs_[pairs_[id].a].push_back(id);
            node_pairs_[pairs_[id].b].push_back(id);
        }
    }

    std::span<const WspdPair> pairs() const { return pairs_; }
    std::size_t size() const { return pairs_.size(); }
    const WspdPair& pair(std::uint32_t id) const { return pairs_[id]; }
    double separation() const { return separation_; }
    std::span<const std::uint32_t> pairs_touching(NodeId a) const { return node_pairs_[a]; }

private:
    std::vector<WspdPair> pairs_;
    double separation_ = 0;
    std::vector<std::vector<std::uint32_t>> node_pairs_;
};

namespace detail {

// Shared recursion skeleton. A self call on an internal node expands to the
// unordered pairs of its children plus child self calls; a cross call splits
// the node `bigger` reports. Explicit stack, pushed in reverse, so pairs come
// out in depth-first order.
template <typename TreeT, typename BiggerFn, typename SeparatedFn>
std::vector<WspdPair> wspd_recurse(const TreeT& t, BiggerFn bigger, SeparatedFn separated) {
    std::vector<WspdPair> out;
    std::vector<WspdPair> stack{{t.root(), t.root()}};
    while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        if (a == b) {
            if (t.is_leaf(a)) continue;
            auto cs = t.children(a);
            std::vector<WspdPair> batch;
            for (std::size_t i = 0; i < cs.size(); ++i)
                for (std::size_t j = i + 1; j < cs.size(); ++j) batch.push_back({cs[i], cs[j]});
            for (NodeId c : cs) batch.push_back({c, c});
            for (auto it = batch.rbegin(); it != batch.rend(); ++it) stack.push_back(*it);
            continue;
        }
        if (bigger(b, a)) std::swap(a, b);
        if (separated(a, b)) {
            out.push_back({a, b});
            continue;
        }
        auto cs = t.children(a);
        for (auto it = cs.rbegin(); it != cs.rend(); ++it) stack.push_back({*it, b});
    }
    return out;
}

}  // namespace detail

/// Separation test: d(C_S(a), C_S(b)) >= s * max{l(a), l(b)}, exact >=.
/// Recursion always splits the node with the larger cell diagonal.
inline Wspd build_wspd_euclidean(const CompressedQuadtree& t, double s) {
    require(s > 2.0, errc::invalid_argument, "separation ratio must exceed 2");
    auto bigger = [&](NodeId x, NodeId y) { return t.cell_diagonal(x) > t.cell_diagonal(y); };
    auto separated = [&](NodeId a, NodeId b) {
        double d = hypercube_distance(t.cell_small(a), t.cell_small(b));
        return d >= s * std::max(t.cell_diagonal(a), t.cell_diagonal(b));
    };
    return Wspd(detail::wspd_recurse(t, bigger, separated), s, t.node_count());
}

/// Separation test for net trees:
/// 8 s (2 tau / (tau - 1)) max{tau^l(a), tau^l(b)} <= d(r(a), r(b)),
/// with tau^(-inf) = 0 at leaves. Splits the node with the larger level.
inline Wspd build_wspd_doubling(const NetTree& t, double s, const PointSet& pts, const Metric& m) {
    require(s > 2.0, errc::invalid_argument, "separation ratio must exceed 2");
    double tau = t.tau();
    double factor = 8.0 * s * (2.0 * tau / (tau - 1.0));
    auto level_key = [&](NodeId x) {
        return t.is_leaf(x) ? std::numeric_limits<double>::lowest() : double(t.level(x));
    };
    auto bigger = [&](NodeId x, NodeId y) { return level_key(x) > level_key(y); };
    auto separated = [&](NodeId a, NodeId b) {
        double lhs = factor * std::max(t.tau_pow_level(a), t.tau_pow_level(b));
        return lhs <= m.distance(pts, t.rep_hm(a), t.rep_hm(b));
    };
    return Wspd(detail::wspd_recurse(t, bigger, separated), s, t.node_count());
}

struct SeparatingPair {
    std::uint32_t pair_id = 0;
    bool p_in_a = true;  // orientation: does p fall in side a?
};

/// The unique pair splitting p from q, located by walking p's leaf-to-root
/// path and testing label-interval containment of q. The brute-force scan over
/// all pairs stays in the test suite as the independent oracle.
template <DecompositionTree T>
SeparatingPair find_separating_pair(const Wspd& w, const T& t, const HeavyPathLabelling& hl,
                                    Label p, Label q) {
    require(p != q, errc::invalid_argument, "p == q has no separating pair");
    bool found = false;
    SeparatingPair result;
    NodeId node = hl.label_to_leaf[p];
    while (node != kNoNode) {
        for (std::uint32_t id : w.pairs_touching(node)) {
            const WspdPair& pr = w.pair(id);
            bool hit = false;
            SeparatingPair cand{id, true};
            if (pr.a == node && hl.interval[pr.b].contains(q)) {
                hit = true;
                cand.p_in_a = true;
            } else if (pr.b == node && hl.interval[pr.a].contains(q)) {
                hit = true;
                cand.p_in_a = false;
            }
            if (hit) {
                require(!found || result.pair_id == cand.pair_id, errc::corrupt_structure,
                        "multiple pairs separate the same point pair");
                result = cand;
                found = true;
            }
        }
        node = (node == t.root()) ? kNoNode : t.parent(node);
    }
    require(found, errc::corrupt_structure,
            "no pair separates labels " + std::to_string(p) + "," + std::to_string(q));
    return result;
}

}  // namespace hpws
