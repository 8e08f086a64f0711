// qcard: reproduces the closed-form quantities of the three-card quantum
// guessing game, sweeps and optimizes the strategies, and runs seeded
// Monte Carlo checks. Exit codes: 0 success, 2 report tolerance breach,
// 64 usage error.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

constexpr int kUsageExit = 64;

int emit(const std::string& body, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << body;
        return 0;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
        std::cerr << "qcard: cannot open output file '" << out_path << "'\n";
        return kUsageExit;
    }
    file << body;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    using qcard::cli::Format;

    CLI::App app{"three-card quantum guessing game: reproduction and simulation toolkit"};
    app.require_subcommand(1);

    std::string format_name = "text";
    std::string out_path;
    std::string actor;
    std::string from_text, to_text;
    std::string alpha_text;
    std::string choice_name = "III";
    int strategy = 1;
    int steps = 0;
    int restarts = 100;
    int shards = 1;
    long long trials = 1000000;
    std::uint64_t seed = 1;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", format_name, "output format: json, csv or text")
            ->check(CLI::IsMember({"json", "csv", "text"}));
        cmd->add_option("--out", out_path, "write the document to this path instead of stdout");
    };
    auto add_seed = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "random seed (QCARD_SEED overrides the default)")
            ->envname("QCARD_SEED");
    };

    CLI::App* report = app.add_subcommand("report", "compute and check every headline value");
    add_common(report);

    CLI::App* sweep = app.add_subcommand("sweep", "tabulate Alice's curve over an angle range");
    add_common(sweep);
    sweep->add_option("--actor", actor, "actor to sweep (alice)")
        ->default_val("alice")
        ->check(CLI::IsMember({"alice"}));
    sweep->add_option("--strategy", strategy, "Alice strategy 1, 2 or 3")
        ->check(CLI::IsMember({1, 2, 3}));
    sweep->add_option("--from", from_text, "range start (radians or pi literal)")->required();
    sweep->add_option("--to", to_text, "range end (radians or pi literal)")->required();
    sweep->add_option("--steps", steps, "number of rows (>= 2)")->required();

    CLI::App* optimize = app.add_subcommand("optimize", "optimize a strategy");
    add_common(optimize);
    add_seed(optimize);
    optimize->add_option("--actor", actor, "alice, bob-collective or bob-frame")
        ->required()
        ->check(CLI::IsMember({"alice", "bob-collective", "bob-frame"}));
    optimize->add_option("--strategy", strategy, "Alice strategy 1, 2 or 3")
        ->check(CLI::IsMember({1, 2, 3}));
    optimize->add_option("--choice", choice_name, "guess choice for the fourth outcome: I, II, III");
    optimize->add_option("--restarts", restarts, "optimizer restarts")->check(CLI::PositiveNumber);

    CLI::App* simulate = app.add_subcommand("simulate", "seeded Monte Carlo estimate");
    add_common(simulate);
    add_seed(simulate);
    simulate->add_option("--actor", actor, "alice, bob-separate or bob-collective")
        ->required()
        ->check(CLI::IsMember({"alice", "bob-separate", "bob-collective"}));
    simulate->add_option("--strategy", strategy, "Alice strategy 1, 2 or 3")
        ->check(CLI::IsMember({1, 2, 3}));
    simulate->add_option("--alpha", alpha_text, "measurement angle (radians or pi literal)");
    simulate->add_option("--choice", choice_name, "guess choice for bob-collective");
    simulate->add_option("--trials", trials, "number of trials")->check(CLI::PositiveNumber);
    simulate->add_option("--shards", shards, "parallel shards (each owns a derived stream)")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageExit;
    }

    try {
        const Format format = qcard::cli::parse_format(format_name);

        if (report->parsed()) {
            auto doc = qcard::cli::build_report();
            int rc = emit(qcard::cli::render_report(doc, format), out_path);
            if (rc != 0) return rc;
            int code = qcard::cli::report_exit_code(doc);
            if (code != 0) {
                std::cerr << "qcard report: tolerance breach in:";
                for (const auto& name : qcard::cli::failing_names(doc)) std::cerr << " " << name;
                std::cerr << "\n";
            }
            return code;
        }
        if (sweep->parsed()) {
            double from = qcard::cli::parse_angle(from_text);
            double to = qcard::cli::parse_angle(to_text);
            auto doc = qcard::cli::build_sweep(strategy, from, to, steps);
            return emit(qcard::cli::render_sweep(doc, format), out_path);
        }
        if (optimize->parsed()) {
            qcard::cli::OptimizeDoc doc;
            if (actor == "alice")
                doc = qcard::cli::run_optimize_alice(strategy);
            else if (actor == "bob-collective")
                doc = qcard::cli::run_optimize_collective(qcard::cli::parse_choice(choice_name),
                                                          restarts, seed);
            else
                doc = qcard::cli::run_optimize_frame(restarts, seed);
            return emit(qcard::cli::render_optimize(doc, format), out_path);
        }
        if (simulate->parsed()) {
            double alpha = alpha_text.empty() ? qcard::cli::parse_angle("pi/12")
                                              : qcard::cli::parse_angle(alpha_text);
            auto doc = qcard::cli::run_simulate(actor, strategy, alpha,
                                                qcard::cli::parse_choice(choice_name), trials,
                                                seed, shards);
            return emit(qcard::cli::render_simulate(doc, format), out_path);
        }
    } catch (const qcard::cli::UsageError& e) {
        std::cerr << "qcard: " << e.what() << "\n";
        return kUsageExit;
    } catch (const std::invalid_argument& e) {
        std::cerr << "qcard: " << e.what() << "\n";
        return kUsageExit;
    }
    return 0;
}
