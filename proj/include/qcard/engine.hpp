// Strategy-agnostic exact enumeration and seeded Monte Carlo simulation of
// the full game. The exact path is the universal oracle for every closed
// form in the library; the simulation is reproducible bit-for-bit per
// (strategy, config), with shard streams derived from the seed.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <variant>

#include "qcard/alice.hpp"
#include "qcard/bob_collective.hpp"
#include "qcard/bob_separate.hpp"

namespace qcard::engine {

/// Alice with an explicit guess distribution per measurement outcome
/// (rows: spin-up, spin-down; columns: cards 1..3).
struct AliceSpec {
    double alpha = 0.0;
    std::array<std::array<double, 3>, 2> guess = {{{1, 0, 0}, {0, 0, 1}}};

    static AliceSpec from_strategy(alice::Strategy s, double alpha);
};

struct BobSeparateSpec {
    bob_separate::SequentialProtocol protocol = bob_separate::SequentialProtocol::standard();
};

struct BobCollectiveSpec {
    bob_collective::CoefficientSet coeffs = bob_collective::optimal_coefficients();
    bob_collective::GuessChoice choice = bob_collective::GuessChoice::random_of_three;
};

using StrategySpec = std::variant<AliceSpec, BobSeparateSpec, BobCollectiveSpec>;

struct SimulationConfig {
    long long trials = 1;
    std::uint64_t seed = 1;
    int shards = 1;
};

struct SimulationReport {
    double estimate = 0.0;
    double std_error = 0.0;
    long long trials = 0;
    std::optional<double> exact_reference;
    std::optional<double> z_score;
};

/// Exact success probability: (1/6) sum over deals, measurement branches
/// weighted by Born probabilities, randomized guesses credited fractionally.
double exact_success(const StrategySpec& strategy);

/// Seeded Monte Carlo estimate. Shards own independent derived streams and
/// merge deterministically; identical (strategy, config) reruns are
/// bit-identical. Estimates may differ across shard counts.
SimulationReport simulate(const StrategySpec& strategy, const SimulationConfig& config);

}  // namespace qcard::engine
