// atspfw: solve ATSP instances and query the exact oracles.
//
//   atspfw solve FILE [--seed U64] [--initial-cycle "a1 ... an"] [--mode paper|guaranteed]
//                     [--oracle-compare] [--trace FILE] [--json] [--timings] [--each FILE...]
//   atspfw oracle FILE (--assignment | --tsp | --negcycle)
//
// Exit codes: 0 ok, 1 parse error, 2 infeasible, 3 internal invariant violation.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "atspfw/atspfw.hpp"
#include "report.hpp"

namespace {

using namespace atspfw;

enum Exit { ok = 0, parse_failure = 1, infeasible = 2, internal = 3 };

Cycle parse_cycle_labels(const std::string &text) {
    std::istringstream in(text);
    std::vector<Vertex> v;
    long long label = 0;
    while (in >> label) {
        if (label < 1) throw DimensionError("initial cycle labels are 1-based");
        v.push_back(static_cast<Vertex>(label - 1));
    }
    if (!in.eof()) throw DimensionError("initial cycle must be whitespace-separated integers");
    return Cycle(std::move(v));
}

struct SolveArgs {
    std::string file;
    std::vector<std::string> each;
    std::uint64_t seed = 0;
    std::string initial_cycle;
    std::string mode = "paper";
    bool oracle_compare = false;
    std::string trace_file;
    bool json = false;
    bool timings = false;
};

SolveOptions make_options(const SolveArgs &args) {
    SolveOptions opts;
    opts.seed = args.seed;
    opts.mode = args.mode == "guaranteed" ? AssignmentMode::guaranteed : AssignmentMode::paper;
    opts.oracle_compare = args.oracle_compare;
    if (!args.initial_cycle.empty()) opts.initial_cycle = parse_cycle_labels(args.initial_cycle);
    return opts;
}

cli::Json solve_one(const std::string &path, const SolveArgs &args, const Tracer &tracer) {
    return cli::report_json(run_solve(load_matrix(path), make_options(args), tracer), args.timings);
}

int run_solve_command(const SolveArgs &args) {
    std::vector<std::string> files;
    if (!args.file.empty()) files.push_back(args.file);
    files.insert(files.end(), args.each.begin(), args.each.end());
    if (files.empty()) throw CLI::RequiredError("FILE");

    TraceLevel level = trace_level_from_env();
    std::unique_ptr<std::ofstream> trace_out;
    std::ostream *trace_stream = &std::cerr;
    if (!args.trace_file.empty()) {
        trace_out = std::make_unique<std::ofstream>(args.trace_file);
        if (!*trace_out) throw Error("cannot write " + args.trace_file);
        trace_stream = trace_out.get();
        if (level == TraceLevel::off) level = TraceLevel::cycle;
    }
    const Tracer tracer(*trace_stream, level);

    if (args.json) {
        cli::Json out = cli::Json::array();
        for (const auto &f : files) {
            cli::Json j = solve_one(f, args, tracer);
            if (files.size() > 1) j = cli::Json{{"file", f}, {"report", j}};
            out.push_back(std::move(j));
        }
        std::cout << (files.size() == 1 ? out[0] : out).dump(2) << '\n';
        return ok;
    }
    for (std::size_t k = 0; k < files.size(); ++k) {
        if (files.size() > 1) std::cout << (k ? "---\n" : "") << "file: " << files[k] << '\n';
        std::cout << cli::to_text(solve_one(files[k], args, tracer));
    }
    return ok;
}

int run_oracle_command(const std::string &file, bool assignment, bool tsp, bool negcycle) {
    const CostMatrix m = load_matrix(file);
    if (assignment) {
        const auto [p, v] = exact_assignment(m);
        std::cout << "assignment_value: " << v << "\npermutation: " << p.to_string() << '\n';
    }
    if (tsp) {
        const auto [p, v] = held_karp_tsp(m);
        std::cout << "tsp_value: " << v << "\ntour: " << tour_sequence(p).to_string() << '\n';
    }
    if (negcycle) {
        const auto c = bellman_ford_negative_cycle(m.values());
        if (!c) {
            std::cout << "negative_cycle: none\n";
        } else {
            Cost total = 0;
            for (std::size_t k = 0; k < c->size(); ++k) total += m((*c)[k], c->next(k));
            std::cout << "negative_cycle: " << c->to_string() << "\nvalue: " << total.to_string() << '\n';
        }
    }
    return ok;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Asymmetric TSP solver with exact reference oracles"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto *solve_cmd = app.add_subcommand("solve", "Run the three-phase solver and print a report");
    solve_cmd->add_option("FILE", solve.file, "Matrix file");
    solve_cmd->add_option("--each", solve.each, "Further matrix files; one report per input, in order");
    solve_cmd->add_option("--seed", solve.seed, "Seed for the random starting tour");
    solve_cmd->add_option("--initial-cycle", solve.initial_cycle, "Starting tour as 1-based labels");
    solve_cmd->add_option("--mode", solve.mode, "paper or guaranteed")
        ->check(CLI::IsMember({"paper", "guaranteed"}));
    solve_cmd->add_flag("--oracle-compare", solve.oracle_compare, "Add exact assignment and TSP optima");
    solve_cmd->add_option("--trace", solve.trace_file, "Write the trace to this file");
    solve_cmd->add_flag("--json", solve.json, "Emit JSON instead of key/value text");
    solve_cmd->add_flag("--timings", solve.timings, "Include per-phase wall-clock times");

    std::string oracle_file;
    bool want_assignment = false, want_tsp = false, want_negcycle = false;
    auto *oracle_cmd = app.add_subcommand("oracle", "Exact reference computations");
    oracle_cmd->add_option("FILE", oracle_file, "Matrix file")->required();
    auto *g = oracle_cmd->add_option_group("query");
    g->add_flag("--assignment", want_assignment, "Minimum-value derangement");
    g->add_flag("--tsp", want_tsp, "Optimal tour (n <= 20)");
    g->add_flag("--negcycle", want_negcycle, "Some negative cycle of the matrix");
    g->require_option(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }

    try {
        if (*solve_cmd) return run_solve_command(solve);
        return run_oracle_command(oracle_file, want_assignment, want_tsp, want_negcycle);
    } catch (const CLI::Error &e) {
        return app.exit(e);
    } catch (const ParseError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return parse_failure;
    } catch (const DimensionError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return parse_failure;
    } catch (const InfeasibleError &e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return infeasible;
    } catch (const InfiniteAssignment &e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return infeasible;
    } catch (const InvariantViolation &e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return internal;
    } catch (const Error &e) {
        // unreadable file and similar input problems
        std::cerr << "error: " << e.what() << '\n';
        return parse_failure;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return internal;
    }
}
