#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "knn/engine.hpp"
#include "knn/errors.hpp"
#include "knn/io.hpp"
#include "knn/oracle.hpp"

namespace {

struct CliOptions {
    std::string mode;
    std::string input;
    std::string output;
    std::string distance = "hellinger";
    std::string format = "text";
    std::uint32_t k = 100;
    std::uint32_t lanes = 1;
    std::uint32_t gsize = 0;
    std::uint32_t bsize = knn::kDefaultBsize;
    std::uint32_t c1 = knn::kDefaultC1;
    std::uint32_t c2 = knn::kDefaultC2;
    std::uint32_t bufsize = knn::kDefaultBufSize;
    std::uint32_t workers = 1;
    std::uint32_t n = 0;
    std::uint32_t d = 0;
    std::uint64_t seed = 1;
    std::vector<std::uint32_t> lane_counts;
};

knn::EngineOptions engine_options(const CliOptions& cli) {
    knn::EngineOptions opt;
    opt.k = cli.k;
    opt.n_lanes = cli.lanes;
    opt.gsize = cli.gsize;
    opt.bsize = cli.bsize;
    opt.c1 = cli.c1;
    opt.c2 = cli.c2;
    opt.buf_size = cli.bufsize;
    opt.workers = cli.workers;
    return opt;
}

void require(bool ok, const std::string& message) {
    if (!ok) throw knn::ConfigError(message);
}

void write_output(std::span<const knn::NeighborList> lists, const CliOptions& cli) {
    if (cli.format == "binary") {
        knn::write_neighbors_binary(lists, cli.output);
    } else {
        knn::write_neighbors_text(lists, cli.output);
    }
    std::printf("wrote %s (%s)\n", cli.output.c_str(), cli.format.c_str());
}

// First few rows where the two result sets disagree, empty when equal.
std::vector<std::string> diff_lists(const std::vector<knn::NeighborList>& a,
                                    const std::vector<knn::NeighborList>& b) {
    std::vector<std::string> diffs;
    if (a.size() != b.size()) {
        diffs.push_back("row counts differ: " + std::to_string(a.size()) + " vs " +
                        std::to_string(b.size()));
        return diffs;
    }
    for (std::size_t i = 0; i < a.size() && diffs.size() < 5; ++i) {
        if (a[i].query != b[i].query) {
            diffs.push_back("row " + std::to_string(i) + ": query ids differ");
            continue;
        }
        if (a[i].neighbors.size() != b[i].neighbors.size()) {
            diffs.push_back("query " + std::to_string(a[i].query) + ": lengths " +
                            std::to_string(a[i].neighbors.size()) + " vs " +
                            std::to_string(b[i].neighbors.size()));
            continue;
        }
        for (std::size_t j = 0; j < a[i].neighbors.size(); ++j) {
            if (!(a[i].neighbors[j] == b[i].neighbors[j])) {
                char buf[160];
                std::snprintf(buf, sizeof buf,
                              "query %u rank %zu: (%u, %.9g) vs (%u, %.9g)", a[i].query, j,
                              a[i].neighbors[j].index, double(a[i].neighbors[j].distance),
                              b[i].neighbors[j].index, double(b[i].neighbors[j].distance));
                diffs.push_back(buf);
                break;
            }
        }
    }
    return diffs;
}

int run_generate(const CliOptions& cli) {
    require(!cli.output.empty(), "generate needs --output");
    require(cli.n >= 2, "generate needs --n of at least 2");
    require(cli.d >= 1, "generate needs --d of at least 1");
    const knn::Dataset ds = knn::generate_dataset(cli.n, cli.d, cli.seed);
    knn::save_dataset(ds, cli.output);
    std::printf("wrote %s: n=%u d=%u seed=%llu\n", cli.output.c_str(), ds.size(), ds.dim(),
                static_cast<unsigned long long>(cli.seed));
    return 0;
}

int run_solve(const CliOptions& cli) {
    require(!cli.input.empty(), "run needs --input");
    require(!cli.output.empty(), "run needs --output");
    require(cli.format == "text" || cli.format == "binary",
            "--format must be text or binary");
    const knn::CumulativeDistance& f = knn::distance_by_name(cli.distance);
    const knn::Dataset ds = knn::load_dataset(cli.input);
    const knn::EngineResult result = knn::solve_knn(ds, f, engine_options(cli));
    std::printf("n=%u d=%u k=%u distance=%s\n", ds.size(), ds.dim(), cli.k,
                cli.distance.c_str());
    std::printf("plan: gsize=%u n_grids=%u bsize=%u c1=%u c2=%u lanes=%u workers=%u bufsize=%u\n",
                result.plan.gsize, result.plan.n_grids, result.plan.bsize, result.plan.c1,
                result.plan.c2, result.plan.n_lanes, cli.workers, cli.bufsize);
    std::printf("pairs=%llu seconds=%.3f\n",
                static_cast<unsigned long long>(result.pair_evaluations), result.seconds);
    write_output(result.lists, cli);
    return 0;
}

int run_verify(const CliOptions& cli) {
    require(!cli.input.empty(), "verify needs --input");
    const knn::CumulativeDistance& f = knn::distance_by_name(cli.distance);
    const knn::Dataset ds = knn::load_dataset(cli.input);
    const knn::EngineResult engine = knn::solve_knn(ds, f, engine_options(cli));
    const knn::OracleResult oracle = knn::brute_force_knn(ds, f, cli.k);
    const std::vector<std::string> diffs = diff_lists(engine.lists, oracle.lists);
    if (diffs.empty()) {
        std::printf("engine matches brute force on all %u rows (k=%u): PASS\n", ds.size(),
                    cli.k);
        return 0;
    }
    std::printf("engine disagrees with brute force: FAIL\n");
    for (const std::string& d : diffs) std::printf("  %s\n", d.c_str());
    return 1;
}

int run_bench(const CliOptions& cli) {
    require(!cli.input.empty(), "bench needs --input");
    const knn::CumulativeDistance& f = knn::distance_by_name(cli.distance);
    const knn::Dataset ds = knn::load_dataset(cli.input);
    std::vector<std::uint32_t> lane_counts = cli.lane_counts;
    if (lane_counts.empty()) lane_counts = {1, 2};

    std::printf("bench: n=%u d=%u k=%u distance=%s\n", ds.size(), ds.dim(), cli.k,
                cli.distance.c_str());
    const knn::OracleResult oracle = knn::brute_force_knn(ds, f, cli.k);

    struct Row {
        std::uint32_t lanes;
        double seconds;
    };
    std::vector<Row> rows;
    bool consistent = true;
    for (std::uint32_t lanes : lane_counts) {
        CliOptions run = cli;
        run.lanes = lanes;
        knn::solve_knn(ds, f, engine_options(run));  // warm-up
        const knn::EngineResult timed = knn::solve_knn(ds, f, engine_options(run));
        rows.push_back({lanes, timed.seconds});
        if (!diff_lists(timed.lists, oracle.lists).empty()) {
            consistent = false;
            std::printf("  lanes=%u output DIVERGES from brute force\n", lanes);
        }
    }

    std::printf("  %-12s %10s %9s %11s\n", "method", "seconds", "vs brute", "vs lanes=1");
    std::printf("  %-12s %10.3f %9.2f\n", "brute-force", oracle.seconds, 1.0);
    const double base = rows.empty() ? 0.0 : rows.front().seconds;
    for (const Row& r : rows) {
        char label[32];
        std::snprintf(label, sizeof label, "lanes=%u", r.lanes);
        std::printf("  %-12s %10.3f %9.2f %11.2f\n", label, r.seconds,
                    r.seconds > 0 ? oracle.seconds / r.seconds : 0.0,
                    r.seconds > 0 ? base / r.seconds : 0.0);
    }
    return consistent ? 0 : 1;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"Exact k-nearest-neighbor engine over tiled pairwise distances"};
    CliOptions cli;

    app.add_option("--mode", cli.mode, "generate | run | verify | bench")
        ->required()
        ->check(CLI::IsMember({"generate", "run", "verify", "bench"}));
    app.add_option("--input", cli.input, "dataset file to read");
    app.add_option("--output", cli.output, "file to write");
    app.add_option("--k", cli.k, "neighbors per query");
    app.add_option("--lanes", cli.lanes, "compute lanes (threads)");
    app.add_option("--gsize", cli.gsize, "grid side, 0 = auto");
    app.add_option("--bsize", cli.bsize, "rows per block");
    app.add_option("--c1", cli.c1, "columns staged per stripe");
    app.add_option("--c2", cli.c2, "coordinates per chunk");
    app.add_option("--bufsize", cli.bufsize, "candidate buffer length");
    app.add_option("--workers", cli.workers, "scan threads per lane");
    app.add_option("--distance", cli.distance, "distance functor name");
    app.add_option("--format", cli.format, "output format: text | binary")
        ->check(CLI::IsMember({"text", "binary"}));
    app.add_option("--seed", cli.seed, "generator seed");
    app.add_option("--n", cli.n, "vectors to generate");
    app.add_option("--d", cli.d, "dimension to generate");
    app.add_option("--lane-counts", cli.lane_counts, "bench lane counts")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (cli.mode == "generate") return run_generate(cli);
    if (cli.mode == "run") return run_solve(cli);
    if (cli.mode == "verify") return run_verify(cli);
    return run_bench(cli);
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const knn::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const knn::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const knn::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
