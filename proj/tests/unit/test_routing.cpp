#include <catch2/catch_amalgamated.hpp>

#include "hpws/harness.hpp"
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

EuclideanBuild four_point_build() {
    return build_euclidean(line_points({1.0 / 64, 3.0 / 64, 33.0 / 64, 35.0 / 64}), 4.0,
                           Hypercube{{0.0}, 1.0});
}

const RoutingEntry* entry_for(const RoutingTable& t, Label v) {
    for (const RoutingEntry& e : t.entries)
        if (e.x_v == v) return &e;
    return nullptr;
}

}  // namespace

TEST_CASE("two-point tables carry the three labels", "[routing]") {
    auto b = build_euclidean(line_points({0.25, 0.75}), 4.0);
    REQUIRE(b.tables.size() == 3);
    REQUIRE(b.tables[1].entries.size() == 1);
    REQUIRE(b.tables[2].entries.size() == 1);
    // at 1: neighbor 2 is a singleton side whose apex is the leaf itself
    CHECK(b.tables[1].entries[0] == RoutingEntry{2, 2, 2});
    // at 2: neighbor 1 represents the root, so its apex interval spans 1..2
    CHECK(b.tables[2].entries[0] == RoutingEntry{1, 1, 2});
}

TEST_CASE("four-point instance routes by hand", "[routing]") {
    auto b = four_point_build();

    // ascending away from label 2, then descending across and down
    StepResult s1 = route_step(2, 4, b.tables[2]);
    CHECK(s1.next == 1);
    CHECK_FALSE(s1.descending);
    StepResult s2 = route_step(1, 4, b.tables[1]);
    CHECK(s2.next == 3);
    CHECK(s2.descending);
    StepResult s3 = route_step(3, 4, b.tables[3]);
    CHECK(s3.next == 4);
    CHECK(s3.descending);

    auto rt = route(b.tables, 2, 4);
    CHECK(rt.vertices == std::vector<Label>{2, 1, 3, 4});
    CHECK(rt.descending == std::vector<bool>{false, true, true});

    auto self = route(b.tables, 3, 3);
    CHECK(self.vertices == std::vector<Label>{3});
    CHECK(self.hops() == 0);
}

TEST_CASE("route_step is memoryless and pure", "[routing]") {
    auto b = four_point_build();
    StepResult a = route_step(2, 4, b.tables[2]);
    StepResult c = route_step(2, 4, b.tables[2]);
    CHECK(a.next == c.next);
    CHECK(a.descending == c.descending);
    CHECK_THROWS_AS(route_step(2, 2, b.tables[2]), Error);
    CHECK_THROWS_AS(route_step(3, 4, b.tables[2]), Error);  // wrong table
}

TEST_CASE("lower-bound instance: tables and routes under first-child ties", "[routing]") {
    auto inst = lower_bound_instance(3.0);
    auto b = build_euclidean(std::move(inst.pts), 3.0, inst.cube);

    // cross edges join the sub-cell representatives 1,3 and 5,7
    const RoutingEntry* e17 = entry_for(b.tables[1], 7);
    REQUIRE(e17 != nullptr);
    CHECK(e17->y_b == 8);  // the [7,8] sub-cell block
    CHECK(e17->y_h == 8);

    auto rt = route(b.tables, 4, 5);
    CHECK(rt.vertices == std::vector<Label>{4, 3, 5});
    CHECK(rt.descending == std::vector<bool>{false, true});

    auto direct = route(b.tables, 1, 5);
    CHECK(direct.vertices == std::vector<Label>{1, 5});
}

TEST_CASE("exhaustive delivery, phases and bounds on random instances",
          "[routing][property]") {
    for (auto [n, s] : {std::pair{64, 3.0}, {128, 4.0}, {100, 2.5}}) {
        PointSet pts = random_point_set(n, 2, 40 + n);
        auto b = build_euclidean(std::move(pts), s);
        RatioReport rep;
        VerifyReport checks = check_routing(b, euclidean_bounds(s), &rep);
        checks.merge(check_phases(b));
        checks.merge(check_uniqueness(b.tables));
        for (const Finding& f : checks.findings) {
            INFO("n=" << n << " s=" << s << " " << f.name << " " << f.detail);
            CHECK(f.pass);
        }
        CHECK(rep.max_routed_hops <= hop_bound(n));
    }
}

TEST_CASE("corrupted tables surface as routing failures", "[routing]") {
    auto b = four_point_build();
    auto tables = b.tables;
    // break the descending interval at vertex 1 so 4 is claimed by both sides
    for (RoutingEntry& e : tables[1].entries)
        if (e.x_v == 2) e.y_b = 4;
    VerifyReport r = check_uniqueness(tables);
    bool desc_unique = true;
    for (const Finding& f : r.findings)
        if (f.name == "descending-candidate-uniqueness") desc_unique = f.pass;
    CHECK_FALSE(desc_unique);

    // cut the ascent from vertex 2 and the step has no candidate
    auto broken = b.tables;
    broken[2].entries[0].y_h = 1;
    try {
        route(broken, 2, 4);
        FAIL("expected routing failure");
    } catch (const Error& e) {
        CHECK(e.code() == errc::routing_failure);
    }
}

TEST_CASE("packed tables measure (3 deg + 1) ceil(lg n) bits and round-trip",
          "[routing][tables]") {
    PointSet pts = random_point_set(80, 2, 123);
    auto b = build_euclidean(std::move(pts), 4.0);
    std::size_t n = b.labelling.leaf_count();
    std::size_t width = ceil_log2(n);
    CHECK(width == 7);
    std::size_t total = 0;
    for (Label u = 1; u <= n; ++u) {
        PackedTable packed = pack_routing_table(b.tables[u], n);
        REQUIRE(packed.bits == (3 * b.graph.degree(u) + 1) * width);
        REQUIRE(unpack_routing_table(packed, n, b.graph.degree(u)) == b.tables[u]);
        total += packed.bits;
    }
    std::size_t expected = 0;
    for (Label u = 1; u <= n; ++u) expected += (3 * b.graph.degree(u) + 1) * width;
    CHECK(total == expected);
}
