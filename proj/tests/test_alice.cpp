#include <doctest.h>

#include <cmath>

#include "qcard/alice.hpp"
#include "qcard/engine.hpp"
#include "qcard/game.hpp"
#include "test_util.hpp"

using namespace qcard;
using alice::AliceAngle;
using alice::Outcome;
using alice::Strategy;
using linalg::Ket;

namespace {

constexpr double kPi = test::kPi;

double random_alpha(rng::SplitMix64& gen) { return (2.0 * gen.uniform() - 1.0) * kPi / 6.0; }

// independent entropy oracle: the fully expanded four-term sum for the
// first strategy, with 0 log 0 = 0
double entropy_expansion_strategy1(double a) {
    auto term = [](double p, double arg) { return p > 0.0 && arg > 0.0 ? -p * std::log2(arg) : 0.0; };
    double c2 = std::cos(a) * std::cos(a);
    double s2 = std::sin(a + kPi / 3.0) * std::sin(a + kPi / 3.0);
    double out = 0.0;
    out += term(c2 / 3.0, 2.0 * c2 / 3.0);
    out += term(0.5 - c2 / 3.0, 1.0 - 2.0 * c2 / 3.0);
    out += term(s2 / 3.0, 2.0 * s2 / 3.0);
    out += term(0.5 - s2 / 3.0, 1.0 - 2.0 * s2 / 3.0);
    return out;
}

}  // namespace

TEST_CASE("AliceAngle enforces its range; strategy domains are soft flags") {
    CHECK_NOTHROW(AliceAngle{kPi / 6.0});
    CHECK_NOTHROW(AliceAngle{-kPi / 6.0});
    CHECK_THROWS_AS(AliceAngle{0.6}, std::invalid_argument);
    CHECK_THROWS_AS(AliceAngle{-0.6}, std::invalid_argument);

    CHECK(alice::in_domain(Strategy::guess3_on_down, AliceAngle{0.1}));
    CHECK_FALSE(alice::in_domain(Strategy::guess3_on_down, AliceAngle{-0.1}));
    CHECK(alice::in_domain(Strategy::guess2_on_down, AliceAngle{-0.1}));
    CHECK(alice::in_domain(Strategy::random23_on_down, AliceAngle{0.0}));
    CHECK_FALSE(alice::in_domain(Strategy::random23_on_down, AliceAngle{0.1}));

    // evaluation outside the intended domain still works
    CHECK_NOTHROW((void)alice::success_probability(AliceAngle{-0.1}, Strategy::guess3_on_down));
}

TEST_CASE("outcome_probs: 1/2 regardless of the angle") {
    auto [up0, down0] = alice::outcome_probs(AliceAngle{0.0});
    CHECK(std::abs(up0 - 0.5) < 1e-15);
    CHECK(std::abs(down0 - 0.5) < 1e-15);

    auto [up, down] = alice::outcome_probs(AliceAngle{kPi / 12.0});
    CHECK(std::abs(up - 0.5) < 1e-15);
    CHECK(std::abs(up + down - 1.0) < 1e-15);

    rng::SplitMix64 gen(21);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        auto [pu, pd] = alice::outcome_probs(AliceAngle{random_alpha(gen)});
        worst = std::max({worst, std::abs(pu - 0.5), std::abs(pd - 0.5)});
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("posterior: table values at theta = 0 and completeness") {
    auto up = alice::posterior(AliceAngle{0.0}, Outcome::up);
    CHECK(std::abs(up[0] - 2.0 / 3.0) < 1e-15);
    CHECK(std::abs(up[1] - 1.0 / 6.0) < 1e-15);
    CHECK(std::abs(up[2] - 1.0 / 6.0) < 1e-15);

    auto down = alice::posterior(AliceAngle{0.0}, Outcome::down);
    CHECK(std::abs(down[0]) < 1e-15);
    CHECK(std::abs(down[1] - 0.5) < 1e-15);
    CHECK(std::abs(down[2] - 0.5) < 1e-15);

    rng::SplitMix64 gen(22);
    for (int i = 0; i < 100; ++i) {
        AliceAngle a{random_alpha(gen)};
        for (Outcome r : {Outcome::up, Outcome::down}) {
            auto post = alice::posterior(a, r);
            CHECK(std::abs(post[0] + post[1] + post[2] - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("posterior agrees with the Born-rule computation") {
    const auto& cards = game::card_states();
    rng::SplitMix64 gen(23);
    for (int i = 0; i < 100; ++i) {
        double a = random_alpha(gen);
        Ket up{{std::cos(a), std::sin(a)}};
        Ket down{{-std::sin(a), std::cos(a)}};
        auto post_up = alice::posterior(AliceAngle{a}, Outcome::up);
        auto post_down = alice::posterior(AliceAngle{a}, Outcome::down);
        for (int c = 0; c < 3; ++c) {
            const Ket& card = cards.states[static_cast<size_t>(c)];
            // P(i|r) = (1/3) P(r|i) / P(r) with P(r) = 1/2
            CHECK(std::abs(post_up[static_cast<size_t>(c)] -
                           2.0 / 3.0 * std::norm(linalg::inner(up, card))) < 1e-12);
            CHECK(std::abs(post_down[static_cast<size_t>(c)] -
                           2.0 / 3.0 * std::norm(linalg::inner(down, card))) < 1e-12);
        }
    }
}

TEST_CASE("posterior is Bayes-consistent with the uniform prior") {
    rng::SplitMix64 gen(24);
    for (int i = 0; i < 100; ++i) {
        AliceAngle a{random_alpha(gen)};
        auto [pu, pd] = alice::outcome_probs(a);
        auto up = alice::posterior(a, Outcome::up);
        auto down = alice::posterior(a, Outcome::down);
        for (int c = 0; c < 3; ++c)
            CHECK(std::abs(pu * up[static_cast<size_t>(c)] + pd * down[static_cast<size_t>(c)] -
                           1.0 / 3.0) < 1e-12);
    }
}

TEST_CASE("success_probability: the three optimum values") {
    const double p_star = (2.0 + std::sqrt(3.0)) / 6.0;
    CHECK(std::abs(alice::success_probability(AliceAngle{kPi / 12.0}, Strategy::guess3_on_down) -
                   p_star) < 1e-12);
    CHECK(std::abs(alice::success_probability(AliceAngle{-kPi / 12.0}, Strategy::guess2_on_down) -
                   p_star) < 1e-12);
    CHECK(std::abs(alice::success_probability(AliceAngle{0.0}, Strategy::random23_on_down) -
                   7.0 / 12.0) < 1e-12);

    // the random spin-down strategy is strictly worse than the optimum
    CHECK(alice::success_probability(AliceAngle{0.0}, Strategy::random23_on_down) <
          p_star - 1e-3);
}

TEST_CASE("closed forms agree with the exact game enumeration") {
    rng::SplitMix64 gen(25);
    for (int i = 0; i < 100; ++i) {
        double a = random_alpha(gen);
        for (Strategy s : {Strategy::guess3_on_down, Strategy::guess2_on_down,
                           Strategy::random23_on_down}) {
            double closed = alice::success_probability(AliceAngle{a}, s);
            double exact = engine::exact_success(engine::AliceSpec::from_strategy(s, a));
            CHECK(std::abs(closed - exact) < 1e-12);
        }
    }
}

TEST_CASE("shannon_entropy: expansion oracle, nonnegativity, argmin") {
    rng::SplitMix64 gen(26);
    CHECK(std::abs(alice::shannon_entropy(AliceAngle{kPi / 12.0}, Strategy::guess3_on_down) -
                   entropy_expansion_strategy1(kPi / 12.0)) < 1e-12);
    for (int i = 0; i < 50; ++i) {
        double a = random_alpha(gen);
        CHECK(std::abs(alice::shannon_entropy(AliceAngle{a}, Strategy::guess3_on_down) -
                       entropy_expansion_strategy1(a)) < 1e-12);
        for (Strategy s : {Strategy::guess3_on_down, Strategy::guess2_on_down,
                           Strategy::random23_on_down})
            CHECK(alice::shannon_entropy(AliceAngle{a}, s) >= 0.0);
    }

    auto minimum = alice::entropy_argmin(Strategy::guess3_on_down, 1e-5);
    CHECK(std::abs(minimum.alpha - kPi / 12.0) < 1e-4);

    // the entropy argmin and the probability argmax coincide
    auto opt = alice::optimize_alice(Strategy::guess3_on_down);
    CHECK(std::abs(minimum.alpha - opt.alpha_star) < 1e-4);
}

TEST_CASE("optimize_alice: optima of all three strategies") {
    const double p_star = (2.0 + std::sqrt(3.0)) / 6.0;

    auto opt1 = alice::optimize_alice(Strategy::guess3_on_down);
    CHECK(std::abs(opt1.alpha_star - kPi / 12.0) < 1e-6);
    CHECK(std::abs(opt1.p_star - p_star) < 1e-9);

    auto opt2 = alice::optimize_alice(Strategy::guess2_on_down);
    CHECK(std::abs(opt2.alpha_star + kPi / 12.0) < 1e-6);
    CHECK(std::abs(opt2.p_star - p_star) < 1e-9);

    auto opt3 = alice::optimize_alice(Strategy::random23_on_down);
    CHECK(opt3.alpha_star == 0.0);
    CHECK(std::abs(opt3.p_star - 7.0 / 12.0) < 1e-12);

    CHECK_THROWS_AS((void)alice::optimize_alice(Strategy::guess3_on_down, -1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)alice::optimize_alice(Strategy::guess3_on_down, 1.0, 1e-9),
                    std::invalid_argument);  // grid wider than the domain
}
