// dyncover: generate update traces, replay them against the dynamic
// vertex-cover structure, benchmark, and run checked sweeps.

#include "dyncover/harness/generators.hpp"
#include "dyncover/harness/runner.hpp"
#include "dyncover/harness/trace.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>
#include <vector>

namespace {

using namespace dyncover;
using namespace dyncover::harness;

struct GenFlags {
    std::string kind = "random-churn";
    GenParams params;
};

void add_gen_flags(CLI::App* cmd, GenFlags& g) {
    cmd->add_option("--kind", g.kind, "random-churn | sliding-window | star-yoyo | insert-all-delete-all")
        ->capture_default_str();
    cmd->add_option("--n", g.params.n, "node count")->capture_default_str();
    cmd->add_option("--f", g.params.f, "max edge size")->capture_default_str();
    cmd->add_option("--updates", g.params.updates, "number of updates T")->capture_default_str();
    cmd->add_option("--seed", g.params.seed, "generator seed")->capture_default_str();
    cmd->add_option("--window", g.params.window, "sliding-window size (0 = n)")->capture_default_str();
    cmd->add_option("--edges", g.params.edges, "insert-all-delete-all edge count (0 = updates/2)")->capture_default_str();
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
}

Trace load_trace(const std::string& path) {
    if (path == "-") return parse_trace(std::cin);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_trace(in);
}

/// Runs fn(k) for k in [0, count) on up to `jobs` threads.
template <class Fn>
void parallel_for(std::size_t count, std::size_t jobs, Fn fn) {
    jobs = std::max<std::size_t>(1, std::min(jobs, count));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < jobs; ++t) {
        pool.emplace_back([&] {
            for (std::size_t k = next++; k < count; k = next++) fn(k);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dynamic approximate vertex cover / fractional matching harness"};
    app.require_subcommand(1);

    GenFlags gen;
    std::string gen_out = "-";
    auto* gen_cmd = app.add_subcommand("gen", "generate a trace");
    add_gen_flags(gen_cmd, gen);
    gen_cmd->add_option("--out", gen_out, "output path (- for stdout)");

    std::string run_trace;
    std::string run_check = "none";
    std::size_t run_oracle_every = 20;
    std::string run_out = "-";
    auto* run_cmd = app.add_subcommand("run", "replay a trace and emit metrics JSON");
    run_cmd->add_option("trace", run_trace, "trace file (- for stdin)")->required();
    run_cmd->add_option("--check", run_check, "none | light | full | differential")->capture_default_str();
    run_cmd->add_option("--oracle-every", run_oracle_every, "brute-force cover oracle period (n <= 16)")->capture_default_str();
    run_cmd->add_option("--out", run_out, "metrics path (- for stdout)");

    GenFlags bench;
    bench.kind = "sliding-window";
    bench.params.updates = 100000;
    bench.params.n = 1000;
    bench.params.f = 3;
    std::size_t bench_runs = 1;
    std::size_t bench_jobs = 1;
    std::string bench_check = "none";
    std::string bench_out = "-";
    auto* bench_cmd = app.add_subcommand("bench", "generate and replay traces, emit a JSON array of metrics");
    add_gen_flags(bench_cmd, bench);
    bench_cmd->add_option("--runs", bench_runs, "number of seeds (seed, seed+1, ...)")->capture_default_str();
    bench_cmd->add_option("--jobs", bench_jobs, "worker threads")->capture_default_str();
    bench_cmd->add_option("--check", bench_check, "none | light | full | differential")->capture_default_str();
    bench_cmd->add_option("--out", bench_out, "output path (- for stdout)");

    GenFlags chk;
    chk.params.n = 12;
    std::string chk_trace;
    std::size_t chk_runs = 20;
    std::size_t chk_jobs = 1;
    std::string chk_check = "full";
    std::size_t chk_oracle_every = 20;
    auto* check_cmd = app.add_subcommand("check", "run checked replays; exit non-zero on any violation");
    add_gen_flags(check_cmd, chk);
    check_cmd->add_option("trace", chk_trace, "trace file; when omitted, --runs traces are generated");
    check_cmd->add_option("--runs", chk_runs, "generated traces (seed, seed+1, ...)")->capture_default_str();
    check_cmd->add_option("--jobs", chk_jobs, "worker threads")->capture_default_str();
    check_cmd->add_option("--check", chk_check, "light | full | differential")->capture_default_str();
    check_cmd->add_option("--oracle-every", chk_oracle_every, "brute-force cover oracle period (n <= 16)")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen_cmd) {
            write_text(gen_out, emit_trace(generate(parse_gen_kind(gen.kind), gen.params)));
            return 0;
        }

        if (*run_cmd) {
            const Trace trace = load_trace(run_trace);
            RunOptions opt;
            opt.check = parse_check_mode(run_check);
            opt.oracle_every = run_oracle_every;
            const RunMetrics m = run(trace, opt);
            write_text(run_out, to_json(m).dump(2) + "\n");
            if (!m.ok) {
                std::cerr << "check failed: " << m.failure << '\n';
                return 1;
            }
            return 0;
        }

        if (*bench_cmd) {
            const GenKind kind = parse_gen_kind(bench.kind);
            RunOptions opt;
            opt.check = parse_check_mode(bench_check);
            std::vector<nlohmann::json> results(bench_runs);
            std::atomic<bool> all_ok{true};
            parallel_for(bench_runs, bench_jobs, [&](std::size_t k) {
                GenParams p = bench.params;
                p.seed += k;
                const RunMetrics m = run(generate(kind, p), opt);
                results[k] = to_json(m);
                results[k]["seed"] = p.seed;
                results[k]["kind"] = bench.kind;
                if (!m.ok) all_ok = false;
            });
            write_text(bench_out, nlohmann::json(results).dump(2) + "\n");
            return all_ok ? 0 : 1;
        }

        if (*check_cmd) {
            RunOptions opt;
            opt.check = parse_check_mode(chk_check);
            opt.oracle_every = chk_oracle_every;
            if (!chk_trace.empty()) {
                const RunMetrics m = run(load_trace(chk_trace), opt);
                std::cout << (m.ok ? "PASS " : "FAIL ") << chk_trace << " T=" << m.counters.T
                          << " checks=" << m.checks_passed << (m.ok ? "" : " : " + m.failure) << '\n';
                return m.ok ? 0 : 1;
            }
            const GenKind kind = parse_gen_kind(chk.kind);
            std::mutex io;
            std::atomic<std::size_t> failed{0};
            parallel_for(chk_runs, chk_jobs, [&](std::size_t k) {
                GenParams p = chk.params;
                p.seed += k;
                const RunMetrics m = run(generate(kind, p), opt);
                if (!m.ok) ++failed;
                std::lock_guard lock(io);
                std::cout << (m.ok ? "PASS " : "FAIL ") << chk.kind << " seed=" << p.seed << " T=" << m.counters.T
                          << " checks=" << m.checks_passed << (m.ok ? "" : " : " + m.failure) << '\n';
            });
            std::cout << (chk_runs - failed) << "/" << chk_runs << " traces passed\n";
            return failed == 0 ? 0 : 1;
        }
    } catch (const TraceParseError& e) {
        std::cerr << "trace error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
