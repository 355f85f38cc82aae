#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "hpws/cli.hpp"

using namespace hpws;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "hpws_cli_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) { return io::read_text(p); }

}  // namespace

TEST_CASE("build writes the full artifact set and a stats line", "[cli]") {
    RunConfig cfg;
    cfg.n = 40;
    cfg.seed = 9;
    cfg.out_dir = fresh_dir("build40");
    BuildStats st = cmd_build(cfg);
    CHECK(st.n == 40);
    CHECK(st.edges == st.pairs);
    CHECK(st.line().find("n=40") != std::string::npos);
    for (const char* f : {"spanner.json", "tables.csv", "wspd.csv", "labels.csv", "spanner.dot"})
        CHECK(fs::exists(cfg.out_dir / f));

    io::SpannerFile file = io::load_spanner(cfg.out_dir / "spanner.json");
    CHECK(file.n == 40);
    CHECK(file.seed == 9);
    CHECK(file.edges.size() == st.edges);
}

TEST_CASE("two-point file produces a single edge", "[cli]") {
    fs::path dir = fresh_dir("two_points");
    {
        std::ofstream out(dir / "pts.csv");
        out << "0.1,0.1\n0.9,0.7\n";
    }
    RunConfig cfg;
    cfg.input = dir / "pts.csv";
    cfg.out_dir = dir / "out";
    BuildStats st = cmd_build(cfg);
    CHECK(st.n == 2);
    CHECK(st.edges == 1);
}

TEST_CASE("repeat builds with one seed are byte-identical", "[cli][determinism]") {
    RunConfig cfg;
    cfg.n = 120;
    cfg.seed = 31337;
    cfg.out_dir = fresh_dir("det_a");
    cmd_build(cfg);
    RunConfig cfg2 = cfg;
    cfg2.out_dir = fresh_dir("det_b");
    cmd_build(cfg2);
    for (const char* f : {"spanner.json", "tables.csv", "wspd.csv", "labels.csv", "spanner.dot"})
        CHECK(slurp(cfg.out_dir / f) == slurp(cfg2.out_dir / f));
}

TEST_CASE("route replays the file-backed tables", "[cli]") {
    RunConfig cfg;
    cfg.lowerbound = true;
    cfg.s = 3.0;
    cfg.out_dir = fresh_dir("route_lb");
    cmd_build(cfg);

    RouteTrace self = cmd_route(cfg, 1, 1);
    CHECK(self.hops.empty());
    CHECK(self.vertices == std::vector<Label>{1});

    RouteTrace t = cmd_route(cfg, 4, 5);
    CHECK(t.vertices.front() == 4);
    CHECK(t.vertices.back() == 5);
    CHECK(t.hops.size() <= std::size_t(hop_bound(8)));
    CHECK(t.text().find("total_hops=") != std::string::npos);

    CHECK_THROWS_AS(cmd_route(cfg, 0, 5), Error);
    CHECK_THROWS_AS(cmd_route(cfg, 1, 9), Error);
}

TEST_CASE("verify passes on generated instances", "[cli]") {
    RunConfig cfg;
    cfg.n = 64;
    cfg.seed = 2;
    for (double s : {2.5, 4.0, 8.0}) {
        cfg.s = s;
        VerifyReport r = cmd_verify(cfg);
        INFO("s=" << s);
        CHECK(r.pass());
    }
    io::json j = verify_report_json(cmd_verify(cfg), cfg);
    CHECK(j["pass"].get<bool>());
    CHECK(j["checks"].is_array());
}

TEST_CASE("verify defaults to the built-in instance", "[cli]") {
    RunConfig cfg;  // no input, no generator size
    VerifyReport r = cmd_verify(cfg);
    CHECK(r.pass());
}

TEST_CASE("verify on a doubling matrix instance", "[cli]") {
    fs::path dir = fresh_dir("matrix_verify");
    PointSet pts = random_point_set(32, 2, 4);
    Metric m = euclidean_as_matrix(pts);
    save_metric_matrix(m, dir / "m.txt");
    save_points_csv(pts, dir / "pts.csv");
    RunConfig cfg;
    cfg.input = dir / "pts.csv";
    cfg.metric_spec = "matrix:" + (dir / "m.txt").string();
    cfg.s = 4.0;
    cfg.tau = 11.0;
    VerifyReport r = cmd_verify(cfg);
    for (const Finding& f : r.findings) {
        INFO(f.name << " " << f.detail);
        CHECK(f.pass);
    }
}

TEST_CASE("verify flags deliberately corrupted table files", "[cli]") {
    RunConfig cfg;
    cfg.n = 24;
    cfg.seed = 6;
    cfg.out_dir = fresh_dir("corrupt");
    cmd_build(cfg);

    // widen one descending interval so two entries claim the same label
    std::string csv = slurp(cfg.out_dir / "tables.csv");
    {
        std::ofstream out(cfg.out_dir / "tables.csv", std::ios::binary);
        std::istringstream in(csv);
        std::string line;
        std::getline(in, line);
        out << line << '\n';  // header
        bool patched = false;
        while (std::getline(in, line)) {
            if (!patched && !line.empty()) {
                auto c1 = line.find(',');
                auto c2 = line.find(',', c1 + 1);
                line = line.substr(0, c2) + ",24,24";
                patched = true;
            }
            out << line << '\n';
        }
    }
    VerifyReport r = verify_files(cfg.out_dir);
    CHECK_FALSE(r.pass());
    bool named = false;
    for (const Finding& f : r.findings)
        if (!f.pass && (f.name == "descending-candidate-uniqueness" ||
                        f.name == "routing-budget-and-delivery" ||
                        f.name == "ascending-candidate-nesting"))
            named = true;
    CHECK(named);
}

TEST_CASE("bench rows respect the closed-form bounds", "[cli][bench]") {
    RunConfig cfg;
    cfg.n = 96;
    cfg.seed = 12;
    std::string csv = cmd_bench(cfg, "s");
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);  // header
    int rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++rows;
        double n, d, s, pairs, edges, max_spanning, max_routing;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%lf", &n, &d, &s, &pairs,
                            &edges, &max_spanning, &max_routing) == 7);
        CHECK(max_spanning <= euclidean_spanning_bound(s) + 1e-9);
        CHECK(max_routing <= euclidean_routing_bound(s) + 1e-9);
    }
    CHECK(rows == 6);

    std::string tau_csv = cmd_bench(cfg, "tau");
    std::istringstream tin(tau_csv);
    std::getline(tin, line);
    while (std::getline(tin, line)) {
        if (line.empty()) continue;
        double n, tau, s, pairs, edges, max_spanning, max_routing;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%lf", &n, &tau, &s, &pairs,
                            &edges, &max_spanning, &max_routing) == 7);
        CHECK(max_routing <= doubling_routing_bound(s, tau) + 1e-9);
    }

    CHECK_THROWS_AS(cmd_bench(cfg, "bogus"), Error);
}
