#include "qcard/engine.hpp"

#include <cmath>
#include <functional>
#include <future>
#include <stdexcept>
#include <vector>

#include "qcard/game.hpp"
#include "qcard/rng.hpp"

namespace qcard::engine {

using game::CardLabel;
using game::Deal;
using linalg::Ket;

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

void validate_distribution(const std::array<double, 3>& row, const char* msg) {
    double sum = 0.0;
    for (double w : row) {
        require(w >= -1e-12, msg);
        sum += w;
    }
    require(std::abs(sum - 1.0) < 1e-9, msg);
}

std::array<int, 2> other_two(int g) {
    switch (g) {
        case 1: return {2, 3};
        case 2: return {1, 3};
        case 3: return {1, 2};
    }
    throw std::invalid_argument("label must be 1, 2 or 3");
}

// ---- exact enumeration ----------------------------------------------------

double exact_alice(const AliceSpec& spec) {
    alice::AliceAngle angle{spec.alpha};  // range check
    for (const auto& row : spec.guess)
        validate_distribution(row, "AliceSpec: guess rows must be distributions");

    const auto& cards = game::card_states();
    Ket up{{std::cos(angle.value), std::sin(angle.value)}};
    Ket down{{-std::sin(angle.value), std::cos(angle.value)}};

    double success = 0.0;
    for (const Deal& deal : game::all_deals()) {
        const Ket& card = cards.state(deal.alice);
        const double p_up = std::norm(linalg::inner(up, card));
        const double p_down = std::norm(linalg::inner(down, card));
        const auto correct = static_cast<size_t>(deal.alice.value - 1);
        success += deal.probability * (p_up * spec.guess[0][correct] +
                                       p_down * spec.guess[1][correct]);
    }
    return success;
}

// ---- simulation tables -----------------------------------------------------

struct AliceTables {
    std::array<double, 3> p_up;  // per card
    std::array<std::array<double, 3>, 2> guess;
};

AliceTables alice_tables(const AliceSpec& spec) {
    alice::AliceAngle angle{spec.alpha};
    for (const auto& row : spec.guess)
        validate_distribution(row, "AliceSpec: guess rows must be distributions");
    const auto& cards = game::card_states();
    Ket up{{std::cos(angle.value), std::sin(angle.value)}};
    AliceTables t{};
    for (int c = 1; c <= 3; ++c)
        t.p_up[static_cast<size_t>(c - 1)] =
            std::norm(linalg::inner(up, cards.state(CardLabel{c})));
    t.guess = spec.guess;
    return t;
}

struct SeparateTables {
    bob_separate::SequentialProtocol protocol;
    std::array<double, 3> p_up_first;              // stage 1, per first card
    std::array<std::array<int, 2>, 3> pair_labels; // per first guess
    std::array<std::array<double, 3>, 3> q_first;  // [g1-1][b2-1]: P(outcome -> pair[0])
};

SeparateTables separate_tables(const BobSeparateSpec& spec) {
    const auto& cards = game::card_states();
    SeparateTables t{spec.protocol, {}, {}, {}};
    Ket up{{std::cos(spec.protocol.first_angle), std::sin(spec.protocol.first_angle)}};
    for (int c = 1; c <= 3; ++c)
        t.p_up_first[static_cast<size_t>(c - 1)] =
            std::norm(linalg::inner(up, cards.state(CardLabel{c})));
    for (int g = 1; g <= 3; ++g) {
        auto pair = other_two(g);
        t.pair_labels[static_cast<size_t>(g - 1)] = pair;
        auto meas = bob_separate::helstrom_measurement(cards.state(CardLabel{pair[0]}),
                                                       cards.state(CardLabel{pair[1]}));
        for (int b2 = 1; b2 <= 3; ++b2)
            t.q_first[static_cast<size_t>(g - 1)][static_cast<size_t>(b2 - 1)] = std::real(
                linalg::expectation(meas.toward_u, cards.state(CardLabel{b2})));
    }
    return t;
}

struct CollectiveTables {
    std::array<std::array<double, 4>, 6> outcome_probs;  // per deal
    std::array<std::array<double, 3>, 4> guess;
};

CollectiveTables collective_tables(const BobCollectiveSpec& spec) {
    auto basis = bob_collective::build_basis(spec.coeffs, spec.choice);
    CollectiveTables t{{}, basis.guess_map};
    const auto& deals = game::all_deals();
    for (size_t d = 0; d < 6; ++d) {
        Ket state = game::bob_pair_state(deals[d]);
        for (size_t k = 0; k < 4; ++k)
            t.outcome_probs[d][k] = std::norm(linalg::inner(basis.phi[k], state));
    }
    return t;
}

// ---- per-trial samplers ----------------------------------------------------

int sample_deal(rng::SplitMix64& gen) {
    int d = static_cast<int>(gen.uniform() * 6.0);
    return d < 6 ? d : 5;
}

bool trial_alice(const AliceTables& t, const Deal& deal, rng::SplitMix64& gen) {
    const auto card = static_cast<size_t>(deal.alice.value - 1);
    const int outcome = gen.uniform() < t.p_up[card] ? 0 : 1;
    const int guess = gen.categorical(t.guess[static_cast<size_t>(outcome)]) + 1;
    return guess == deal.alice.value;
}

bool trial_separate(const SeparateTables& t, const Deal& deal, rng::SplitMix64& gen) {
    int g1;
    if (t.protocol.first_stage == bob_separate::FirstStage::oracle_first_card) {
        g1 = deal.bob_first.value;
    } else {
        const auto b1 = static_cast<size_t>(deal.bob_first.value - 1);
        const int outcome = gen.uniform() < t.p_up_first[b1] ? 0 : 1;
        g1 = gen.categorical(t.protocol.first_guess[static_cast<size_t>(outcome)]) + 1;
    }

    int g2;
    if (t.protocol.second_stage == bob_separate::SecondStage::uniform_random) {
        g2 = static_cast<int>(gen.uniform() * 3.0) + 1;
        if (g2 > 3) g2 = 3;
    } else {
        const auto gi = static_cast<size_t>(g1 - 1);
        const auto b2 = static_cast<size_t>(deal.bob_second.value - 1);
        g2 = gen.uniform() < t.q_first[gi][b2] ? t.pair_labels[gi][0] : t.pair_labels[gi][1];
    }

    int final_guess;
    if (g1 == g2) {
        auto rest = other_two(g1);
        final_guess = gen.uniform() < 0.5 ? rest[0] : rest[1];
    } else {
        final_guess = 6 - g1 - g2;
    }
    return final_guess == deal.alice.value;
}

bool trial_collective(const CollectiveTables& t, const Deal& deal, size_t deal_index,
                      rng::SplitMix64& gen) {
    const int outcome = gen.categorical(t.outcome_probs[deal_index]);
    const int guess = gen.categorical(t.guess[static_cast<size_t>(outcome)]) + 1;
    return guess == deal.alice.value;
}

}  // namespace

AliceSpec AliceSpec::from_strategy(alice::Strategy s, double alpha) {
    return {alpha, alice::guess_distribution(s)};
}

double exact_success(const StrategySpec& strategy) {
    return std::visit(
        [](const auto& spec) -> double {
            using T = std::decay_t<decltype(spec)>;
            if constexpr (std::is_same_v<T, AliceSpec>) {
                return exact_alice(spec);
            } else if constexpr (std::is_same_v<T, BobSeparateSpec>) {
                return bob_separate::enumerate_sequential(spec.protocol);
            } else {
                return bob_collective::success_combined(spec.coeffs, spec.choice);
            }
        },
        strategy);
}

SimulationReport simulate(const StrategySpec& strategy, const SimulationConfig& config) {
    require(config.trials >= 1, "SimulationConfig: trials must be >= 1");
    require(config.shards >= 1, "SimulationConfig: shards must be >= 1");
    require(config.shards <= config.trials, "SimulationConfig: shards must be <= trials");

    const auto& deals = game::all_deals();

    // one trial function, closed over precomputed tables
    std::function<bool(const Deal&, size_t, rng::SplitMix64&)> run_trial;
    if (const auto* a = std::get_if<AliceSpec>(&strategy)) {
        run_trial = [t = alice_tables(*a)](const Deal& d, size_t, rng::SplitMix64& g) {
            return trial_alice(t, d, g);
        };
    } else if (const auto* s = std::get_if<BobSeparateSpec>(&strategy)) {
        run_trial = [t = separate_tables(*s)](const Deal& d, size_t, rng::SplitMix64& g) {
            return trial_separate(t, d, g);
        };
    } else {
        const auto& c = std::get<BobCollectiveSpec>(strategy);
        run_trial = [t = collective_tables(c)](const Deal& d, size_t di, rng::SplitMix64& g) {
            return trial_collective(t, d, di, g);
        };
    }

    auto run_shard = [&](int shard, long long n) -> long long {
        rng::SplitMix64 gen(rng::derive_stream(config.seed, static_cast<std::uint64_t>(shard)));
        long long hits = 0;
        for (long long i = 0; i < n; ++i) {
            const auto d = static_cast<size_t>(sample_deal(gen));
            if (run_trial(deals[d], d, gen)) ++hits;
        }
        return hits;
    };

    const long long base = config.trials / config.shards;
    const long long rem = config.trials % config.shards;
    auto shard_trials = [&](int i) { return base + (i < rem ? 1 : 0); };

    long long successes = 0;
    if (config.shards == 1) {
        successes = run_shard(0, config.trials);
    } else {
        std::vector<std::future<long long>> futures;
        futures.reserve(static_cast<size_t>(config.shards));
        for (int i = 0; i < config.shards; ++i)
            futures.push_back(std::async(std::launch::async, run_shard, i, shard_trials(i)));
        for (auto& f : futures) successes += f.get();  // fixed merge order
    }

    SimulationReport rep;
    rep.trials = config.trials;
    rep.estimate = static_cast<double>(successes) / static_cast<double>(config.trials);
    rep.std_error =
        std::sqrt(rep.estimate * (1.0 - rep.estimate) / static_cast<double>(config.trials));
    rep.exact_reference = exact_success(strategy);
    if (rep.std_error > 0.0)
        rep.z_score = (rep.estimate - *rep.exact_reference) / rep.std_error;
    return rep;
}

}  // namespace qcard::engine
