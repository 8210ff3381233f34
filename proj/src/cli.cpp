#include "kcenter/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kcenter/bounds.hpp"
#include "kcenter/dataset.hpp"
#include "kcenter/heuristic.hpp"
#include "kcenter/oracle.hpp"
#include "kcenter/parallel.hpp"
#include "kcenter/search.hpp"

namespace kcenter {

namespace {

using ordered_json = nlohmann::ordered_json;

struct InputSpec {
    std::string csv_path;
    bool has_header = false;
    std::string synthetic;  // "n=300,k=3,a=2,seed=7"
};

Dataset load_input(const InputSpec& in, std::string& source) {
    if (!in.csv_path.empty()) {
        source = in.csv_path;
        return load_csv(in.csv_path, in.has_header);
    }
    // synthetic spec: comma-separated key=value pairs
    std::size_t n = 0, clusters = 0, attrs = 0;
    std::uint64_t seed = 0;
    std::stringstream ss(in.synthetic);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("bad synthetic spec item: '" + item + "'");
        }
        const std::string key = item.substr(0, eq);
        const unsigned long long value = std::stoull(item.substr(eq + 1));
        if (key == "n") {
            n = value;
        } else if (key == "k") {
            clusters = value;
        } else if (key == "a") {
            attrs = value;
        } else if (key == "seed") {
            seed = value;
        } else {
            throw std::runtime_error("unknown synthetic spec key: '" + key + "'");
        }
    }
    if (n == 0 || clusters == 0 || attrs == 0) {
        throw std::runtime_error("synthetic spec needs n=, k=, a= (seed= optional)");
    }
    source = "synthetic:" + in.synthetic;
    return generate_gaussian(n, clusters, attrs, seed);
}

void write_report(const ordered_json& report, const std::string& out_path) {
    const std::string text = report.dump(2) + "\n";
    std::fputs(text.c_str(), stdout);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open report file: " + out_path);
        out << text;
    }
}

ordered_json dataset_meta(const std::string& source, const Dataset& d) {
    return ordered_json{{"source", source},
                        {"n_samples", d.n_samples()},
                        {"n_attrs", d.n_attrs()}};
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Exact K-center solver (centers on samples) with FFT baseline and brute-force oracle"};
    app.require_subcommand(1);

    InputSpec input;
    std::size_t k = 0;
    std::string out_path;
    std::size_t workers = 1;

    auto add_common = [&](CLI::App* cmd) {
        auto* csv = cmd->add_option("--csv", input.csv_path, "CSV dataset path");
        cmd->add_flag("--has-header", input.has_header, "skip the first CSV line");
        auto* syn = cmd->add_option("--synthetic", input.synthetic,
                                    "synthetic spec n=<N>,k=<clusters>,a=<attrs>,seed=<seed>");
        csv->excludes(syn);
        syn->excludes(csv);
        cmd->add_option("--k", k, "number of clusters")->required();
        cmd->add_option("--out", out_path, "write the report to this file as well");
        cmd->add_option("--workers", workers, "worker threads for per-sample scans");
    };

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "run the branch-and-bound solver");
    SolverConfig cfg;
    std::string trace_path;
    bool no_bt = false, no_assign = false, no_reduce = false, no_symmetry = false;
    add_common(solve_cmd);
    solve_cmd->add_option("--eps", cfg.epsilon_rel, "relative gap tolerance (default 0.001)");
    solve_cmd->add_option("--time-limit", cfg.time_limit_s, "wall clock limit in seconds");
    solve_cmd->add_option("--i-sr", cfg.i_sr, "sample reduction interval in iterations");
    solve_cmd->add_option("--ball-threshold", cfg.ball_threshold, "ball-based BT cap");
    solve_cmd->add_option("--fft-trials", cfg.fft_trials, "multistart trials for the root bound");
    solve_cmd->add_option("--seed", cfg.seed, "RNG seed");
    solve_cmd->add_option("--max-open-nodes", cfg.max_open_nodes, "hard open-node limit");
    solve_cmd->add_flag("--no-bt", no_bt, "disable assigned-sample bounds tightening");
    solve_cmd->add_flag("--no-assign", no_assign, "disable seeds and cluster assignment");
    solve_cmd->add_flag("--no-reduce", no_reduce, "disable redundancy flags and sample reduction");
    solve_cmd->add_flag("--no-symmetry", no_symmetry, "disable the symmetry-breaking chain");
    solve_cmd->add_option("--trace", trace_path,
                          "stream per-iteration lines: iter,beta,alpha,open_nodes,samples_active");

    // fft baseline
    auto* fft_cmd = app.add_subcommand("fft", "run the farthest-first-traversal baseline");
    std::size_t trials = 100;
    std::uint64_t fft_seed = 0;
    add_common(fft_cmd);
    fft_cmd->add_option("--trials", trials, "number of random starts");
    fft_cmd->add_option("--seed", fft_seed, "RNG seed");

    // brute-force oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive small-instance solver");
    std::uint64_t limit = 5'000'000;
    add_common(oracle_cmd);
    oracle_cmd->add_option("--limit", limit, "subset evaluation budget");

    try {
        app.parse(argc, const_cast<char**>(argv));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (input.csv_path.empty() && input.synthetic.empty()) {
            throw std::runtime_error("need exactly one input: --csv or --synthetic");
        }
        std::string source;
        const Dataset data = load_input(input, source);

        if (solve_cmd->parsed()) {
            cfg.enable_bt = !no_bt;
            cfg.enable_assign = !no_assign;
            cfg.enable_reduce = !no_reduce;
            cfg.enable_symmetry = !no_symmetry;
            cfg.workers = workers;

            std::ofstream trace_file;
            TraceSink sink;
            if (!trace_path.empty()) {
                trace_file.open(trace_path);
                if (!trace_file) throw std::runtime_error("cannot open trace file: " + trace_path);
                sink = [&trace_file](const TraceRow& row) {
                    char buf[128];
                    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%zu,%zu\n", row.iter,
                                  row.beta, row.alpha, row.open_nodes, row.samples_active);
                    trace_file << buf;
                };
            }

            const SolveReport rep = solve(data, k, cfg, sink);

            ordered_json j;
            j["mode"] = "solve";
            j["dataset"] = dataset_meta(source, data);
            j["k"] = k;
            j["ub"] = rep.ub;
            j["lb"] = rep.lb;
            j["gap_pct"] = rep.gap_pct;
            j["nodes"] = rep.nodes;
            j["wall_time_s"] = rep.wall_time_s;
            j["termination"] = to_string(rep.termination);
            j["incumbent"] = rep.incumbent;
            j["samples_remaining"] = rep.samples_remaining;
            j["seeds_found"] = rep.seeds_found;
            j["config"] = ordered_json{{"eps", cfg.epsilon_rel},
                                       {"time_limit_s", cfg.time_limit_s},
                                       {"i_sr", cfg.i_sr},
                                       {"ball_threshold", cfg.ball_threshold},
                                       {"fft_trials", cfg.fft_trials},
                                       {"bt", cfg.enable_bt},
                                       {"assign", cfg.enable_assign},
                                       {"reduce", cfg.enable_reduce},
                                       {"symmetry", cfg.enable_symmetry},
                                       {"seed", cfg.seed},
                                       {"workers", cfg.workers}};
            write_report(j, out_path);
            return rep.termination == Termination::time_limit ? 2 : 0;
        }

        if (fft_cmd->parsed()) {
            WorkerPool pool(workers);
            const auto t0 = std::chrono::steady_clock::now();
            const FftResult res = fft_multistart(data, k, trials, fft_seed, &pool);
            const double wall =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

            ordered_json j;
            j["mode"] = "fft";
            j["dataset"] = dataset_meta(source, data);
            j["k"] = k;
            j["ub"] = res.objective;
            j["lb"] = 0.0;
            j["gap_pct"] = gap_pct(res.objective, 0.0);
            j["nodes"] = 0;
            j["wall_time_s"] = wall;
            j["termination"] = "none";
            j["incumbent"] = res.centers.indices;
            j["config"] = ordered_json{{"trials", trials}, {"seed", fft_seed}, {"workers", workers}};
            write_report(j, out_path);
            return 0;
        }

        // oracle
        const auto t0 = std::chrono::steady_clock::now();
        const OracleResult res = brute_force(data, k, limit);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        ordered_json j;
        j["mode"] = "oracle";
        j["dataset"] = dataset_meta(source, data);
        j["k"] = k;
        j["ub"] = res.opt_value;
        j["lb"] = res.opt_value;
        j["gap_pct"] = 0.0;
        j["nodes"] = 0;
        j["wall_time_s"] = wall;
        j["termination"] = "none";
        j["incumbent"] = res.opt_centers;
        j["config"] = ordered_json{{"limit", limit}};
        write_report(j, out_path);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace kcenter
