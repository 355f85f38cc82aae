#pragma once

#include <concepts>
#include <cstdint>
#include <span>
#include <vector>

#include "hpws/error.hpp"
#include "hpws/quadtree.hpp"

namespace hpws {

using Label = std::uint32_t;

/// Rooted tree with points in the leaves; satisfied by CompressedQuadtree and
/// NetTree.
template <typename T>
concept DecompositionTree = requires(const T& t, NodeId a) {
    { t.root() } -> std::convertible_to<NodeId>;
    { t.parent(a) } -> std::convertible_to<NodeId>;
    { t.children(a) } -> std::convertible_to<std::span<const NodeId>>;
    { t.is_leaf(a) } -> std::convertible_to<bool>;
    { t.leaf_point(a) } -> std::convertible_to<PointId>;
    { t.node_count() } -> std::convertible_to<std::size_t>;
    { t.leaf_count() } -> std::convertible_to<std::size_t>;
};

struct LabelInterval {
    Label lo = 0;
    Label hi = 0;

    bool contains(Label x) const { return lo <= x && x <= hi; }
    Label width() const { return hi - lo + 1; }
    bool operator==(const LabelInterval&) const = default;
};

/// Heavy-child marks, representatives r(a), apexes h(v), and the heavy-first
/// DFS labelling. Leaf labels run 1..n; every node's leaf labels form a
/// contiguous interval whose minimum is its representative's label.
struct HeavyPathLabelling {
    std::vector<std::uint32_t> subtree_leaves;  // per node
    std::vector<NodeId> heavy_child;            // per node; kNoNode at leaves
    std::vector<NodeId> rep;                    // per node -> leaf node id
    std::vector<NodeId> apex;                   // per leaf node id -> shallowest node it represents
    std::vector<Label> leaf_label;              // per node; valid at leaves, 1..n
    std::vector<LabelInterval> interval;        // per node
    std::vector<NodeId> label_to_leaf;          // 1-based
    std::vector<PointId> label_to_point;        // 1-based
    std::vector<Label> point_to_label;          // per point id

    Label rep_label(NodeId a) const { return leaf_label[rep[a]]; }
    NodeId apex_of_label(Label v) const { return apex[label_to_leaf[v]]; }
    LabelInterval apex_interval(Label v) const { return interval[apex_of_label(v)]; }
    std::size_t leaf_count() const { return label_to_leaf.size() - 1; }
};

namespace detail {

template <DecompositionTree T>
std::vector<NodeId> preorder(const T& t) {
    std::vector<NodeId> order;
    order.reserve(t.node_count());
    std::vector<NodeId> stack{t.root()};
    while (!stack.empty()) {
        NodeId a = stack.back();
        stack.pop_back();
        order.push_back(a);
        auto cs = t.children(a);
        for (auto it = cs.rbegin(); it != cs.rend(); ++it) stack.push_back(*it);
    }
    return order;
}

}  // namespace detail

/// Marks heavy children (max leaf count, ties to the lowest child index) and
/// fills representatives and apexes. Single linear pass.
template <DecompositionTree T>
HeavyPathLabelling heavy_path_decompose(const T& t) {
    HeavyPathLabelling hl;
    std::size_t m = t.node_count();
    hl.subtree_leaves.assign(m, 0);
    hl.heavy_child.assign(m, kNoNode);
    hl.rep.assign(m, kNoNode);
    hl.apex.assign(m, kNoNode);

    std::vector<NodeId> order = detail::preorder(t);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        NodeId a = *it;
        if (t.is_leaf(a)) {
            hl.subtree_leaves[a] = 1;
            hl.rep[a] = a;
            continue;
        }
        std::uint32_t total = 0;
        NodeId heavy = kNoNode;
        std::uint32_t best = 0;
        for (NodeId c : t.children(a)) {
            total += hl.subtree_leaves[c];
            if (hl.subtree_leaves[c] > best) {
                best = hl.subtree_leaves[c];
                heavy = c;
            }
        }
        hl.subtree_leaves[a] = total;
        hl.heavy_child[a] = heavy;
        hl.rep[a] = hl.rep[heavy];
    }
    for (NodeId a : order) {
        if (a == t.root() || hl.rep[t.parent(a)] != hl.rep[a]) hl.apex[hl.rep[a]] = a;
    }
    return hl;
}

/// Heavy-first DFS labelling: the heavy child is visited first, remaining
/// children in stored order; leaves are numbered 1..n in visit order and node
/// intervals are the (min,max) over their subtree leaves.
template <DecompositionTree T>
void heavy_dfs_label(const T& t, HeavyPathLabelling& hl) {
    std::size_t m = t.node_count();
    std::size_t n = t.leaf_count();
    hl.leaf_label.assign(m, 0);
    hl.interval.assign(m, {});
    hl.label_to_leaf.assign(n + 1, kNoNode);
    hl.label_to_point.assign(n + 1, kNoPoint);

    std::vector<NodeId> stack{t.root()};
    std::vector<NodeId> visit_order;
    visit_order.reserve(m);
    Label next = 1;
    while (!stack.empty()) {
        NodeId a = stack.back();
        stack.pop_back();
        visit_order.push_back(a);
        if (t.is_leaf(a)) {
            hl.leaf_label[a] = next;
            hl.label_to_leaf[next] = a;
            hl.label_to_point[next] = t.leaf_point(a);
            ++next;
            continue;
        }
        auto cs = t.children(a);
        NodeId heavy = hl.heavy_child[a];
        for (auto it = cs.rbegin(); it != cs.rend(); ++it)
            if (*it != heavy) stack.push_back(*it);
        stack.push_back(heavy);
    }
    require(next == n + 1, errc::corrupt_structure, "leaf count mismatch in labelling");

    for (auto it = visit_order.rbegin(); it != visit_order.rend(); ++it) {
        NodeId a = *it;
        if (t.is_leaf(a)) {
            hl.interval[a] = {hl.leaf_label[a], hl.leaf_label[a]};
            continue;
        }
        Label lo = std::numeric_limits<Label>::max(), hi = 0;
        for (NodeId c : t.children(a)) {
            lo = std::min(lo, hl.interval[c].lo);
            hi = std::max(hi, hl.interval[c].hi);
        }
        hl.interval[a] = {lo, hi};
    }

    PointId np = 0;
    for (Label v = 1; v <= n; ++v) np = std::max(np, hl.label_to_point[v] + 1);
    hl.point_to_label.assign(np, 0);
    for (Label v = 1; v <= n; ++v) hl.point_to_label[hl.label_to_point[v]] = v;
}

template <DecompositionTree T>
HeavyPathLabelling heavy_path_labelling(const T& t) {
    HeavyPathLabelling hl = heavy_path_decompose(t);
    heavy_dfs_label(t, hl);
    return hl;
}

/// Number of light edges on the root-to-leaf path; at most lg n.
template <DecompositionTree T>
int light_depth(const T& t, const HeavyPathLabelling& hl, NodeId leaf) {
    require(leaf < t.node_count() && t.is_leaf(leaf), errc::invalid_argument, "not a leaf");
    int count = 0;
    NodeId a = leaf;
    while (a != t.root()) {
        NodeId p = t.parent(a);
        if (hl.heavy_child[p] != a) ++count;
        a = p;
    }
    return count;
}

}  // namespace hpws
