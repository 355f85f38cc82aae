#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "hpws/error.hpp"
#include "hpws/metric.hpp"
#include "hpws/points.hpp"
#include "hpws/quadtree.hpp"  // NodeId / kNoNode / kNoPoint

namespace hpws {

inline constexpr int kLeafLevel = std::numeric_limits<int>::min();

struct NetTreeParams {
    double tau = 11.0;
};

struct NetTreeNode {
    NodeId parent = kNoNode;
    std::vector<NodeId> children;
    int level = kLeafLevel;       // leaves stay at the sentinel
    PointId rep_hm = kNoPoint;    // construction-time representative
    PointId point = kNoPoint;     // leaves only
};

struct PropertyReport {
    std::vector<std::string> violations;
    bool pass() const { return violations.empty(); }
};

/// Hierarchy of nested nets over a doubling metric. Level-i net points are a
/// tau^i packing and cover of the level below; a point dropped at level i
/// hangs its chain under the nearest surviving net point. Nodes exist at the
/// levels where their representative absorbs other chains.
class NetTree {
public:
    static NetTree build(const PointSet& pts, const Metric& m, const NetTreeParams& params,
                         std::size_t n_override = 0) {
        std::size_t n = n_override ? n_override : pts.size();
        require(params.tau >= 11.0, errc::invalid_argument, "tau must be >= 11");
        require(n >= 1, errc::invalid_argument, "empty point set");
        if (m.is_euclidean())
            pts.require_distinct();

        NetTree t;
        t.params_ = params;
        t.n_ = n;
        if (n == 1) {
            t.nodes_.push_back({kNoNode, {}, kLeafLevel, 0, 0});
            t.root_ = 0;
            t.index();
            return t;
        }

        double dmin = std::numeric_limits<double>::infinity(), dmax = 0;
        for (PointId i = 0; i < n; ++i)
            for (PointId j = i + 1; j < n; ++j) {
                double d = m.distance(pts, i, j);
                require(d > 0, errc::duplicate_points, "distinct points at distance 0");
                dmin = std::min(dmin, d);
                dmax = std::max(dmax, d);
            }

        double tau = params.tau;
        int level_bot = int(std::floor(std::log(dmin) / std::log(tau))) - 1;
        int level_top = int(std::ceil(std::log(dmax) / std::log(tau))) + 2;

        struct Merge {
            int level;
            PointId target, source;
        };
        std::vector<Merge> merges;
        std::vector<PointId> net(n);
        for (PointId i = 0; i < n; ++i) net[i] = i;

        for (int lvl = level_bot + 1; net.size() > 1; ++lvl) {
            require(lvl <= level_top, errc::corrupt_structure, "net hierarchy failed to collapse");
            double radius = std::pow(tau, lvl);
            std::vector<PointId> kept;
            std::vector<PointId> dropped;
            for (PointId q : net) {
                bool ok = true;
                for (PointId r : kept)
                    if (m.distance(pts, q, r) < radius) {
                        ok = false;
                        break;
                    }
                (ok ? kept : dropped).push_back(q);
            }
            for (PointId q : dropped) {
                PointId best = kept[0];
                double bd = m.distance(pts, q, best);
                for (PointId r : kept) {
                    double d = m.distance(pts, q, r);
                    if (d < bd) {
                        bd = d;
                        best = r;
                    }
                }
                merges.push_back({lvl, best, q});
            }
            net = std::move(kept);
        }

        std::stable_sort(merges.begin(), merges.end(), [](const Merge& a, const Merge& b) {
            if (a.level != b.level) return a.level < b.level;
            if (a.target != b.target) return a.target < b.target;
            return a.source < b.source;
        });

        std::vector<NodeId> chain_top(n);
        for (PointId i = 0; i < n; ++i) {
            chain_top[i] = NodeId(t.nodes_.size());
            t.nodes_.push_back({kNoNode, {}, kLeafLevel, i, i});
        }
        for (std::size_t i = 0; i < merges.size();) {
            std::size_t j = i;
            while (j < merges.size() && merges[j].level == merges[i].level &&
                   merges[j].target == merges[i].target)
                ++j;
            PointId p = merges[i].target;
            NodeId v = NodeId(t.nodes_.size());
            t.nodes_.push_back({kNoNode, {}, merges[i].level, p, kNoPoint});
            t.attach(v, chain_top[p]);
            for (std::size_t k = i; k < j; ++k) t.attach(v, chain_top[merges[k].source]);
            chain_top[p] = v;
            i = j;
        }
        t.root_ = chain_top[net[0]];
        t.index();

        PropertyReport cov = verify_covering(t, pts, m);
        PropertyReport pack = verify_packing(t, pts, m);
        if (!cov.pass())
            fail(errc::property_violation, "net tree covering violated: " + cov.violations[0]);
        if (!pack.pass())
            fail(errc::property_violation, "net tree packing violated: " + pack.violations[0]);
        return t;
    }

    /// Unvalidated assembly, for tests that need deliberately broken trees.
    static NetTree unchecked(std::vector<NetTreeNode> nodes, NodeId root, NetTreeParams params,
                             std::size_t n) {
        NetTree t;
        t.nodes_ = std::move(nodes);
        t.root_ = root;
        t.params_ = params;
        t.n_ = n;
        t.index();
        return t;
    }

    NodeId root() const { return root_; }
    NodeId parent(NodeId a) const { return nodes_[a].parent; }
    std::span<const NodeId> children(NodeId a) const { return nodes_[a].children; }
    bool is_leaf(NodeId a) const { return nodes_[a].point != kNoPoint; }
    PointId leaf_point(NodeId a) const { return nodes_[a].point; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t leaf_count() const { return n_; }
    int level(NodeId a) const { return nodes_[a].level; }
    PointId rep_hm(NodeId a) const { return nodes_[a].rep_hm; }
    double tau() const { return params_.tau; }

    double tau_pow_level(NodeId a) const {
        return is_leaf(a) ? 0.0 : std::pow(params_.tau, nodes_[a].level);
    }

    /// Descendant leaf points of a, as a contiguous span.
    std::span<const PointId> subtree_points(NodeId a) const {
        return {subtree_leaves_.data() + range_[a].first, range_[a].second - range_[a].first};
    }

    bool subtree_contains(NodeId a, PointId x) const {
        std::size_t pos = point_pos_[x];
        return range_[a].first <= pos && pos < range_[a].second;
    }

    std::string debug_dump() const {
        std::ostringstream out;
        dump_rec(out, root_, 0);
        return out.str();
    }

    friend PropertyReport verify_covering(const NetTree& t, const PointSet& pts, const Metric& m);
    friend PropertyReport verify_packing(const NetTree& t, const PointSet& pts, const Metric& m);

private:
    void attach(NodeId parent, NodeId child) {
        nodes_[parent].children.push_back(child);
        nodes_[child].parent = parent;
    }

    void index() {
        range_.assign(nodes_.size(), {0, 0});
        subtree_leaves_.clear();
        point_pos_.assign(n_, 0);
        // Preorder; leaf points of any subtree end up contiguous.
        struct Frame {
            NodeId node;
            bool exit;
        };
        std::vector<Frame> stack{{root_, false}};
        while (!stack.empty()) {
            auto [a, exit] = stack.back();
            stack.pop_back();
            if (exit) {
                range_[a].second = subtree_leaves_.size();
                continue;
            }
            range_[a].first = subtree_leaves_.size();
            stack.push_back({a, true});
            if (is_leaf(a)) {
                point_pos_[nodes_[a].point] = subtree_leaves_.size();
                subtree_leaves_.push_back(nodes_[a].point);
                continue;
            }
            auto cs = children(a);
            for (auto it = cs.rbegin(); it != cs.rend(); ++it) stack.push_back({*it, false});
        }
    }

    void dump_rec(std::ostringstream& out, NodeId a, int depth) const {
        for (int i = 0; i < depth; ++i) out << "  ";
        out << "node " << a;
        if (is_leaf(a))
            out << " level=-inf point=" << nodes_[a].point;
        else
            out << " level=" << nodes_[a].level << " rep=" << nodes_[a].rep_hm;
        out << '\n';
        for (NodeId c : nodes_[a].children) dump_rec(out, c, depth + 1);
    }

    std::vector<NetTreeNode> nodes_;
    NodeId root_ = kNoNode;
    NetTreeParams params_;
    std::size_t n_ = 0;
    std::vector<std::pair<std::size_t, std::size_t>> range_;
    std::vector<PointId> subtree_leaves_;
    std::vector<std::size_t> point_pos_;
};

/// Covering property: S(a) lies in the ball around r(a) of radius
/// (2 tau / (tau - 1)) * tau^level(a).
inline PropertyReport verify_covering(const NetTree& t, const PointSet& pts, const Metric& m) {
    PropertyReport report;
    double tau = t.tau();
    double factor = 2 * tau / (tau - 1);
    for (NodeId a = 0; a < t.node_count(); ++a) {
        double radius = factor * t.tau_pow_level(a);
        PointId rep = t.rep_hm(a);
        for (PointId x : t.subtree_points(a)) {
            double d = m.distance(pts, rep, x);
            if (d > radius)
                report.violations.push_back("node " + std::to_string(a) + ": point " +
                                            std::to_string(x) + " at " + std::to_string(d) +
                                            " > covering radius " + std::to_string(radius));
        }
    }
    return report;
}

/// Packing property: every point within radius
/// ((tau - 5) / (2 (tau - 1))) * tau^(level(parent(a)) - 1) of r(a) must
/// already lie in S(a). Root excluded.
inline PropertyReport verify_packing(const NetTree& t, const PointSet& pts, const Metric& m) {
    PropertyReport report;
    double tau = t.tau();
    double factor = (tau - 5) / (2 * (tau - 1));
    std::size_t n = t.leaf_count();
    for (NodeId a = 0; a < t.node_count(); ++a) {
        if (a == t.root()) continue;
        double radius = factor * std::pow(tau, t.level(t.parent(a)) - 1);
        PointId rep = t.rep_hm(a);
        for (PointId x = 0; x < n; ++x) {
            if (m.distance(pts, rep, x) <= radius && !t.subtree_contains(a, x))
                report.violations.push_back("node " + std::to_string(a) + ": point " +
                                            std::to_string(x) + " inside packing radius " +
                                            std::to_string(radius) + " but outside subtree");
        }
    }
    return report;
}

/// Ancestor-level bound: diam S(a) <= (4 tau / (tau - 1)) * tau^(level(p^k(a)) - k).
inline double nettree_subtree_diameter_bound(const NetTree& t, NodeId a, int k) {
    require(k >= 0, errc::invalid_argument, "negative ancestor count");
    NodeId anc = a;
    for (int i = 0; i < k; ++i) {
        require(t.parent(anc) != kNoNode, errc::invalid_argument, "k exceeds depth");
        anc = t.parent(anc);
    }
    if (t.is_leaf(anc)) return 0.0;
    double tau = t.tau();
    return 4 * tau / (tau - 1) * std::pow(tau, t.level(anc) - k);
}

}  // namespace hpws
