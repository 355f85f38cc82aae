#include <catch2/catch_amalgamated.hpp>

#include "hpws/net_tree.hpp"
#include "hpws/random.hpp"
#include "hpws/verify.hpp"

using namespace hpws;

namespace {

PointSet line_points(std::initializer_list<double> xs) {
    PointSet pts(1);
    for (double x : xs) {
        double row[1] = {x};
        pts.add(row);
    }
    return pts;
}

}  // namespace

TEST_CASE("one point is a lone leaf at level -inf", "[nettree]") {
    PointSet pts = line_points({0.5});
    auto t = NetTree::build(pts, Metric::euclidean(), {11.0});
    CHECK(t.node_count() == 1);
    CHECK(t.is_leaf(t.root()));
    CHECK(t.level(t.root()) == kLeafLevel);
    CHECK(verify_covering(t, pts, Metric::euclidean()).pass());
    CHECK(verify_packing(t, pts, Metric::euclidean()).pass());
}

TEST_CASE("two points at distance one hang under a single root", "[nettree]") {
    PointSet pts = line_points({0.0, 1.0});
    auto t = NetTree::build(pts, Metric::euclidean(), {11.0});
    REQUIRE(t.children(t.root()).size() == 2);
    CHECK(t.is_leaf(t.children(t.root())[0]));
    CHECK(t.is_leaf(t.children(t.root())[1]));
    CHECK(t.rep_hm(t.root()) == 0);
    CHECK(verify_covering(t, pts, Metric::euclidean()).pass());
    CHECK(verify_packing(t, pts, Metric::euclidean()).pass());
}

TEST_CASE("tau below 11 is rejected", "[nettree]") {
    PointSet pts = line_points({0.0, 1.0});
    CHECK_THROWS_AS(NetTree::build(pts, Metric::euclidean(), {10.0}), Error);
}

TEST_CASE("a corrupted tree fails the property checks", "[nettree]") {
    // two clusters; claim point 3 under the wrong branch
    PointSet pts = line_points({0.0, 0.01, 1.0, 1.01});
    Metric m = Metric::euclidean();
    auto good = NetTree::build(pts, m, {11.0});
    REQUIRE(verify_covering(good, pts, m).pass());
    REQUIRE(verify_packing(good, pts, m).pass());

    std::vector<NetTreeNode> nodes(good.node_count());
    for (NodeId a = 0; a < good.node_count(); ++a) {
        nodes[a].parent = good.parent(a);
        nodes[a].children.assign(good.children(a).begin(), good.children(a).end());
        nodes[a].level = good.is_leaf(a) ? kLeafLevel : good.level(a);
        nodes[a].rep_hm = good.rep_hm(a);
        nodes[a].point = good.is_leaf(a) ? good.leaf_point(a) : kNoPoint;
    }
    // swap the points of a near leaf and a far leaf
    std::vector<NodeId> leaves;
    for (NodeId a = 0; a < good.node_count(); ++a)
        if (good.is_leaf(a)) leaves.push_back(a);
    NodeId l0 = 0, l3 = 0;
    for (NodeId a : leaves) {
        if (nodes[a].point == 0) l0 = a;
        if (nodes[a].point == 3) l3 = a;
    }
    std::swap(nodes[l0].point, nodes[l3].point);
    auto bad = NetTree::unchecked(std::move(nodes), good.root(), {11.0}, 4);
    bool covering_broken = !verify_covering(bad, pts, m).pass();
    bool packing_broken = !verify_packing(bad, pts, m).pass();
    CHECK((covering_broken || packing_broken));
}

TEST_CASE("subtree diameter bound", "[nettree]") {
    PointSet pts = line_points({0.0, 1.0});
    Metric m = Metric::euclidean();
    auto t = NetTree::build(pts, m, {11.0});
    NodeId leaf = t.children(t.root())[0];
    CHECK(nettree_subtree_diameter_bound(t, leaf, 0) == 0.0);
    CHECK(nettree_subtree_diameter_bound(t, leaf, 1) >= 1.0);
    CHECK_THROWS_AS(nettree_subtree_diameter_bound(t, t.root(), 5), Error);

    // the bound dominates the true diameter for every node and feasible k
    auto sweep = check_net_tree(t, pts, m);
    for (const Finding& f : sweep.findings) {
        INFO(f.name);
        CHECK(f.pass);
    }
}

TEST_CASE("properties hold across seeds, sizes, metrics and tau", "[nettree][property]") {
    for (double tau : {11.0, 16.0}) {
        for (auto [n, seed] : {std::pair{32u, 1u}, {128u, 2u}, {512u, 3u}}) {
            PointSet pts = random_point_set(n, 2, seed);
            Metric m = seed % 2 ? euclidean_as_matrix(pts) : manhattan_as_matrix(pts);
            auto t = NetTree::build(pts, m, {tau});
            VerifyReport r = check_net_tree(t, pts, m);
            for (const Finding& f : r.findings) {
                INFO("tau=" << tau << " n=" << n << " " << f.name << " " << f.detail);
                CHECK(f.pass);
            }
        }
    }
}

TEST_CASE("nested clusters give the tree depth and keep the properties",
          "[nettree][property]") {
    for (double tau : {11.0, 16.0}) {
        PointSet pts = clustered_point_set(200, 2, 42);
        Metric m = euclidean_as_matrix(pts);
        auto t = NetTree::build(pts, m, {tau});
        // several levels of internal structure, not a one-level star
        int max_depth = 0;
        for (NodeId a = 0; a < t.node_count(); ++a) {
            int depth = 0;
            for (NodeId x = a; t.parent(x) != kNoNode; x = t.parent(x)) ++depth;
            max_depth = std::max(max_depth, depth);
        }
        CHECK(max_depth >= 3);
        VerifyReport r = check_net_tree(t, pts, m);
        for (const Finding& f : r.findings) {
            INFO("tau=" << tau << " " << f.name << " " << f.detail);
            CHECK(f.pass);
        }
    }
}

TEST_CASE("a larger instance keeps the nested-net properties", "[nettree][slow]") {
    PointSet pts = random_point_set(1024, 3, 99);
    Metric m = Metric::euclidean();
    auto t = NetTree::build(pts, m, {11.0});
    CHECK(verify_covering(t, pts, m).pass());
    CHECK(verify_packing(t, pts, m).pass());
}

TEST_CASE("net tree build is deterministic", "[nettree]") {
    PointSet pts = random_point_set(64, 2, 5);
    auto t1 = NetTree::build(pts, Metric::euclidean(), {11.0});
    auto t2 = NetTree::build(pts, Metric::euclidean(), {11.0});
    CHECK(t1.debug_dump() == t2.debug_dump());
}
