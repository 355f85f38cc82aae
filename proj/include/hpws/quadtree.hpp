#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "hpws/error.hpp"
#include "hpws/hypercube.hpp"
#include "hpws/points.hpp"

namespace hpws {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr PointId kNoPoint = std::numeric_limits<PointId>::max();

struct QuadtreeNode {
    NodeId parent = kNoNode;
    std::vector<NodeId> children;
    Hypercube cell_large;      // cell inherited from the parent split
    Hypercube cell_small;      // deepest cell still holding the whole subset
    PointId point = kNoPoint;  // leaves only
};

/// Compressed quadtree: single-child chains are contracted, so every internal
/// node has at least two children and leaves store exactly one point each.
class CompressedQuadtree {
public:
    /// Recursive split into 2^d sub-cells, compressing chains on the way down.
    /// Children are ordered by sub-cell index (binary expansion of which half
    /// per axis, lexicographic). Boundary points go to the upper half cell
    /// (cells closed below, open above; the root cube closed on all faces).
    static CompressedQuadtree build(const PointSet& pts, const Hypercube& root_cube) {
        require(!pts.empty(), errc::invalid_argument, "empty point set");
        require(root_cube.dimension() == pts.dimension(), errc::dimension_mismatch,
                "root cube dimension mismatch");
        pts.require_distinct();
        for (PointId i = 0; i < pts.size(); ++i)
            require(root_cube.contains(pts[i]), errc::outside_root_cube,
                    "point " + std::to_string(i) + " outside root cube");

        CompressedQuadtree t;
        t.dim_ = pts.dimension();
        t.leaf_count_ = pts.size();

        std::vector<PointId> all(pts.size());
        for (PointId i = 0; i < pts.size(); ++i) all[i] = i;

        std::vector<Task> stack;
        t.root_ = t.make_node(pts, kNoNode, root_cube, all, stack);
        while (!stack.empty()) {
            Task task = std::move(stack.back());
            stack.pop_back();
            t.expand(pts, task.node, task.subset, stack);
        }
        return t;
    }

    NodeId root() const { return root_; }
    NodeId parent(NodeId a) const { return nodes_[a].parent; }
    std::span<const NodeId> children(NodeId a) const { return nodes_[a].children; }
    bool is_leaf(NodeId a) const { return nodes_[a].point != kNoPoint; }
    PointId leaf_point(NodeId a) const { return nodes_[a].point; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t leaf_count() const { return leaf_count_; }
    std::size_t dimension() const { return dim_; }
    const Hypercube& cell_small(NodeId a) const { return nodes_[a].cell_small; }
    const Hypercube& cell_large(NodeId a) const { return nodes_[a].cell_large; }

    /// Diagonal of C_S(a); 0 for leaves by convention.
    double cell_diagonal(NodeId a) const {
        require(a < nodes_.size(), errc::invalid_argument, "unknown node id");
        return is_leaf(a) ? 0.0 : nodes_[a].cell_small.diagonal();
    }

    std::string debug_dump() const {
        std::ostringstream out;
        out.precision(12);
        dump_rec(out, root_, 0);
        return out.str();
    }

private:
    static constexpr int kMaxChainDepth = 4096;

    struct Task {
        NodeId node;
        std::vector<PointId> subset;
    };

    std::size_t subcell_index(std::span<const double> p, const Hypercube& cell) const {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < dim_; ++k)
            idx |= std::size_t(p[k] >= cell.mid(k)) << (dim_ - 1 - k);
        return idx;
    }

    static Hypercube subcell(const Hypercube& cell, std::size_t idx, std::size_t dim) {
        Hypercube c{cell.lo, cell.side / 2};
        for (std::size_t k = 0; k < dim; ++k)
            if ((idx >> (dim - 1 - k)) & 1u) c.lo[k] += c.side;
        return c;
    }

    NodeId make_node(const PointSet& pts, NodeId parent, const Hypercube& entry_cell,
                     std::vector<PointId>& subset, std::vector<Task>& pending) {
        NodeId id = NodeId(nodes_.size());
        nodes_.push_back({});
        nodes_[id].parent = parent;
        nodes_[id].cell_large = entry_cell;
        if (subset.size() == 1) {
            nodes_[id].cell_small = entry_cell;
            nodes_[id].point = subset[0];
            return id;
        }
        nodes_[id].cell_small = chain_descend(pts, entry_cell, subset);
        pending.push_back({id, std::move(subset)});
        return id;
    }

    /// Walks single-occupied splits down from `cell` until the subset spans at
    /// least two sub-cells; iterative, so adversarially close points cannot
    /// blow the stack. Only the per-axis extremes are tracked.
    Hypercube chain_descend(const PointSet& pts, Hypercube cell,
                            std::span<const PointId> subset) const {
        std::vector<double> mn(pts[subset[0]].begin(), pts[subset[0]].end());
        std::vector<double> mx(mn);
        for (PointId i : subset.subspan(1)) {
            auto p = pts[i];
            for (std::size_t k = 0; k < dim_; ++k) {
                mn[k] = std::min(mn[k], p[k]);
                mx[k] = std::max(mx[k], p[k]);
            }
        }
        for (int depth = 0; depth < kMaxChainDepth; ++depth) {
            std::size_t idx = 0;
            bool split = false;
            for (std::size_t k = 0; k < dim_ && !split; ++k) {
                bool blo = mn[k] >= cell.mid(k);
                bool bhi = mx[k] >= cell.mid(k);
                if (blo != bhi) split = true;
                idx |= std::size_t(blo) << (dim_ - 1 - k);
            }
            if (split) return cell;
            cell = subcell(cell, idx, dim_);
        }
        fail(errc::corrupt_structure, "chain descent failed to separate points (duplicates?)");
    }

    void expand(const PointSet& pts, NodeId id, std::span<const PointId> subset,
                std::vector<Task>& stack) {
        const Hypercube cs = nodes_[id].cell_small;
        std::size_t buckets = std::size_t(1) << dim_;
        std::vector<std::vector<PointId>> parts(buckets);
        for (PointId i : subset) parts[subcell_index(pts[i], cs)].push_back(i);

        std::size_t occupied = 0;
        for (auto& part : parts) occupied += !part.empty();
        require(occupied >= 2, errc::corrupt_structure, "split produced a single occupied cell");

        // Children created in ascending sub-cell order; their expansion tasks
        // go onto the stack in reverse so they are processed in that order.
        std::vector<Task> pending;
        for (std::size_t idx = 0; idx < buckets; ++idx) {
            if (parts[idx].empty()) continue;
            Hypercube child_cell = subcell(cs, idx, dim_);
            NodeId child = make_node(pts, id, child_cell, parts[idx], pending);
            nodes_[id].children.push_back(child);
        }
        for (auto it = pending.rbegin(); it != pending.rend(); ++it)
            stack.push_back(std::move(*it));
    }

    void dump_rec(std::ostringstream& out, NodeId a, int depth) const {
        for (int i = 0; i < depth; ++i) out << "  ";
        const auto& n = nodes_[a];
        out << "node " << a << " cell=[";
        for (std::size_t k = 0; k < dim_; ++k) out << (k ? "," : "") << n.cell_small.lo[k];
        out << "]+" << n.cell_small.side << " l=" << cell_diagonal(a);
        if (is_leaf(a)) out << " point=" << n.point;
        out << '\n';
        for (NodeId c : n.children) dump_rec(out, c, depth + 1);
    }

    std::vector<QuadtreeNode> nodes_;
    NodeId root_ = kNoNode;
    std::size_t dim_ = 0;
    std::size_t leaf_count_ = 0;
};

}  // namespace hpws
