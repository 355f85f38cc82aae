// Command-line front end: build / route / verify / bench.
//
// Exit codes: 0 success, 1 invariant violation, 2 usage or I/O error.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hpws/hpws.hpp"

namespace {

int exit_code_for(const hpws::Error& e) {
    switch (e.code()) {
        case hpws::errc::invalid_argument:
        case hpws::errc::io_error:
        case hpws::errc::dimension_mismatch:
            return 2;
        default:
            return 1;
    }
}

void add_common(CLI::App* app, hpws::RunConfig& cfg, std::string& metric) {
    app->add_option("--s", cfg.s, "separation ratio (> 2)");
    app->add_option("--tau", cfg.tau, "net-tree base (>= 11), matrix metrics only");
    app->add_option("--n", cfg.n, "generator: number of points");
    app->add_option("--dim", cfg.dim, "generator: dimension");
    app->add_option("--seed", cfg.seed, "generator seed, recorded in outputs");
    app->add_option("--input", cfg.input, "points CSV file");
    app->add_option("--metric", metric, "euclidean | matrix:<path>");
    app->add_flag("--lowerbound", cfg.lowerbound, "use the built-in 8-point line instance");
    app->add_option("--eps", cfg.eps, "lower-bound perturbation, 0 <= eps < alpha");
    app->add_option("--out", cfg.out_dir, "output directory");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"heavy path WSPD spanners with compact memoryless routing"};
    app.require_subcommand(1);

    hpws::RunConfig cfg;
    std::string metric = "euclidean";
    std::string sweep = "s";
    std::string in_dir;
    std::uint32_t route_p = 0, route_q = 0;

    CLI::App* build = app.add_subcommand("build", "construct spanner + routing tables");
    add_common(build, cfg, metric);

    CLI::App* route = app.add_subcommand("route", "route between two labels using built files");
    add_common(route, cfg, metric);
    route->add_option("p", route_p, "source label")->required();
    route->add_option("q", route_q, "destination label")->required();

    CLI::App* verify = app.add_subcommand("verify", "run the invariant suites");
    add_common(verify, cfg, metric);
    verify->add_option("--in", in_dir, "verify table files from a build directory");

    CLI::App* bench = app.add_subcommand("bench", "parameter sweeps, CSV to stdout");
    add_common(bench, cfg, metric);
    bench->add_option("--sweep", sweep, "s | n | tau");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    cfg.metric_spec = metric;
    try {
        if (build->parsed()) {
            hpws::BuildStats st = hpws::cmd_build(cfg);
            std::cout << st.line() << '\n';
        } else if (route->parsed()) {
            hpws::RouteTrace trace = hpws::cmd_route(cfg, route_p, route_q);
            std::cout << trace.text();
        } else if (verify->parsed()) {
            hpws::VerifyReport report = hpws::cmd_verify(cfg, in_dir);
            std::cout << hpws::verify_report_json(report, cfg).dump(2) << '\n';
            return report.pass() ? 0 : 1;
        } else if (bench->parsed()) {
            std::cout << hpws::cmd_bench(cfg, sweep);
        }
    } catch (const hpws::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
