// Command implementations behind the qcard CLI: document builders for
// report / sweep / optimize / simulate plus the three output renderers
// (json, csv, text). Kept out of main.cpp so the pieces are unit-testable.

#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcard/engine.hpp"

namespace qcard::cli {

inline constexpr const char* kSchema = "qcard/1";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Format { json, csv, text };

Format parse_format(const std::string& text);

/// Radians, with a "pi" literal convenience: "pi", "-pi", "pi/12", "-pi/6",
/// or any plain decimal. Throws UsageError.
double parse_angle(const std::string& text);

bob_collective::GuessChoice parse_choice(const std::string& text);
std::string choice_name(bob_collective::GuessChoice choice);

// ---- report ----------------------------------------------------------------

struct CheckEntry {
    std::string name;
    std::string method;  // closed-form | enumeration | simulation | construction | ordering
    double value = 0.0;
    double reference = 0.0;
    double tolerance = 0.0;
    double deviation = 0.0;
    bool pass = false;
};

struct ReportDoc {
    double alice_alpha_star = 0.0;
    double p_alice = 0.0;
    double alice_alpha_star_mirror = 0.0;
    double p_alice_mirror = 0.0;
    double entropy_argmin_alpha = 0.0;
    double p1 = 0.0, p2 = 0.0, p12 = 0.0, p21 = 0.0, p_sep = 0.0;
    double p_sep_enumeration = 0.0;
    double p_sep_discrepancy = 0.0;
    double p_bob_combined = 0.0;
    double p_bob_combined_closed_form = 0.0;
    double collective_gram_residual = 0.0;
    bool dominance = false;
    std::vector<CheckEntry> checks;
};

ReportDoc build_report();
bool all_pass(const ReportDoc& doc);
std::vector<std::string> failing_names(const ReportDoc& doc);
int report_exit_code(const ReportDoc& doc);  // 0, or 2 on any tolerance breach
std::string render_report(const ReportDoc& doc, Format format);

// ---- sweep -----------------------------------------------------------------

struct SweepRow {
    double alpha = 0.0;
    double probability = 0.0;
    double entropy = 0.0;
    bool in_domain = false;
};

struct SweepDoc {
    int strategy = 1;
    std::vector<SweepRow> rows;
};

/// Throws UsageError on an empty/reversed range, out-of-domain bounds or
/// steps < 2.
SweepDoc build_sweep(int strategy, double from, double to, int steps);
std::string render_sweep(const SweepDoc& doc, Format format);

// ---- optimize ----------------------------------------------------------------

struct OptimizeDoc {
    std::string actor;  // alice | bob-collective | bob-frame
    int strategy = 0;
    std::string choice;
    int restarts = 0;
    std::uint64_t seed = 0;
    double alpha_star = 0.0;
    double p_star = 0.0;
    int failed_restarts = 0;
    int restarts_at_optimum = 0;
    std::vector<std::array<double, 4>> coefficients;  // a, b, c (bob-collective)
    std::vector<std::array<double, 4>> basis;         // frame vectors (bob-frame)
    std::vector<int> guesses;                         // bob-frame
};

OptimizeDoc run_optimize_alice(int strategy);
OptimizeDoc run_optimize_collective(bob_collective::GuessChoice choice, int restarts,
                                    std::uint64_t seed);
OptimizeDoc run_optimize_frame(int restarts, std::uint64_t seed);
std::string render_optimize(const OptimizeDoc& doc, Format format);

// ---- simulate ----------------------------------------------------------------

struct SimulateDoc {
    std::string actor;  // alice | bob-separate | bob-collective
    int strategy = 0;
    double alpha = 0.0;
    std::string choice;
    long long trials = 0;
    std::uint64_t seed = 0;
    int shards = 0;
    engine::SimulationReport report;
};

/// Builds the strategy for the actor (alice: strategy + alpha; bob-separate:
/// the standard protocol at the given first angle; bob-collective: the
/// optimal coefficients with the given choice) and runs the simulation.
SimulateDoc run_simulate(const std::string& actor, int strategy, double alpha,
                         bob_collective::GuessChoice choice, long long trials,
                         std::uint64_t seed, int shards);
std::string render_simulate(const SimulateDoc& doc, Format format);

}  // namespace qcard::cli
