#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hpws/harness.hpp"
#include "hpws/quadtree.hpp"
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

std::string signature(const CompressedQuadtree& t) { return t.debug_dump(); }

}  // namespace

TEST_CASE("single point gives a single leaf", "[quadtree]") {
    PointSet pts = line_points({0.5});
    auto t = CompressedQuadtree::build(pts, Hypercube{{0.0}, 1.0});
    CHECK(t.node_count() == 1);
    CHECK(t.is_leaf(t.root()));
    CHECK(t.leaf_point(t.root()) == 0);
    CHECK(t.cell_diagonal(t.root()) == 0.0);
}

TEST_CASE("two separated points compress the chain away", "[quadtree]") {
    PointSet pts = line_points({0.1, 0.9});
    auto t = CompressedQuadtree::build(pts, Hypercube{{0.0}, 1.0});
    REQUIRE(t.node_count() == 3);
    REQUIRE(t.children(t.root()).size() == 2);
    CHECK(t.is_leaf(t.children(t.root())[0]));
    CHECK(t.is_leaf(t.children(t.root())[1]));
    CHECK(t.cell_diagonal(t.root()) == 1.0);
}

TEST_CASE("lower-bound line instance reproduces the known cells", "[quadtree]") {
    double a = 1.0 / 32;  // s = 3
    auto inst = lower_bound_instance(3.0);
    auto t = CompressedQuadtree::build(inst.pts, inst.cube);

    NodeId r = t.root();
    CHECK(t.cell_diagonal(r) == 1.0);
    REQUIRE(t.children(r).size() == 2);
    NodeId na = t.children(r)[0], nb = t.children(r)[1];

    CHECK(t.cell_small(na).lo[0] == 0.0);
    CHECK(t.cell_small(na).side == 8 * a);
    CHECK(t.cell_diagonal(na) == 0.25);
    CHECK(t.cell_small(nb).lo[0] == 1 - 8 * a);
    CHECK(t.cell_small(nb).side == 8 * a);

    REQUIRE(t.children(na).size() == 2);
    NodeId nc = t.children(na)[0], nd = t.children(na)[1];
    CHECK(t.cell_small(nc).lo[0] == 0.0);
    CHECK(t.cell_small(nc).side == 4 * a);
    CHECK(t.cell_small(nd).lo[0] == 4 * a);
    CHECK(t.cell_small(nd).side == 4 * a);
    CHECK(t.children(nc).size() == 2);
    CHECK(t.children(nd).size() == 2);

    REQUIRE(t.children(nb).size() == 2);
    NodeId ne = t.children(nb)[0], nf = t.children(nb)[1];
    CHECK(t.cell_small(ne).lo[0] == 1 - 8 * a);
    CHECK(t.cell_small(ne).side == 4 * a);
    CHECK(t.cell_small(nf).lo[0] == 1 - 4 * a);
    CHECK(t.cell_small(nf).side == 4 * a);

    // 7 internal nodes + 8 leaves
    CHECK(t.node_count() == 15);
    CHECK(t.leaf_count() == 8);
}

TEST_CASE("build rejects bad inputs", "[quadtree]") {
    PointSet outside = line_points({0.5, 1.5});
    CHECK_THROWS_AS(CompressedQuadtree::build(outside, Hypercube{{0.0}, 1.0}), Error);

    PointSet dup(2);
    double row[2] = {0.5, 0.5};
    dup.add(row);
    dup.add(row);
    CHECK_THROWS_AS(CompressedQuadtree::build(dup, smallest_enclosing_hypercube(dup)), Error);
}

TEST_CASE("adversarially close points stay inside the chain guard", "[quadtree]") {
    PointSet pts = line_points({0.30000000000001, 0.30000000000002, 0.9});
    auto t = CompressedQuadtree::build(pts, Hypercube{{0.0}, 1.0});
    CHECK(t.leaf_count() == 3);
    VerifyReport r = check_quadtree(t, pts, Metric::euclidean());
    INFO(signature(t));
    CHECK(r.pass());
}

TEST_CASE("structural invariants hold on random sets", "[quadtree][property]") {
    Metric m = Metric::euclidean();
    for (std::uint64_t seed : {11u, 22u, 33u}) {
        for (std::size_t dim : {1u, 2u, 3u}) {
            PointSet pts = random_point_set(120, dim, seed * 10 + dim);
            auto t = CompressedQuadtree::build(pts, smallest_enclosing_hypercube(pts));
            VerifyReport r = check_quadtree(t, pts, m);
            for (const Finding& f : r.findings) {
                INFO(f.name << " " << f.detail);
                CHECK(f.pass);
            }
        }
    }
}

TEST_CASE("builds are deterministic", "[quadtree][property]") {
    PointSet pts = random_point_set(200, 2, 77);
    auto t1 = CompressedQuadtree::build(pts, smallest_enclosing_hypercube(pts));
    auto t2 = CompressedQuadtree::build(pts, smallest_enclosing_hypercube(pts));
    CHECK(signature(t1) == signature(t2));
}
