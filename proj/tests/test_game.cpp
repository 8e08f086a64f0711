#include <doctest.h>

#include <cmath>

#include "qcard/game.hpp"
#include "test_util.hpp"

using namespace qcard;
using game::CardLabel;
using linalg::cplx;
using linalg::Ket;
using linalg::Operator;

TEST_CASE("card_states: exact coordinates and mutual overlaps") {
    const auto& cards = game::card_states();
    const double h = std::sqrt(3.0) / 2.0;
    CHECK(test::max_abs_diff(cards.states[0], Ket{{1.0, 0.0}}) == 0.0);
    CHECK(test::max_abs_diff(cards.states[1], Ket{{0.5, h}}) == 0.0);
    CHECK(test::max_abs_diff(cards.states[2], Ket{{-0.5, h}}) == 0.0);

    for (int i = 1; i <= 3; ++i)
        for (int j = i + 1; j <= 3; ++j) {
            double overlap = std::abs(
                linalg::inner(cards.state(CardLabel{i}), cards.state(CardLabel{j})));
            CHECK(std::abs(overlap - 0.5) < 1e-12);
        }
}

TEST_CASE("all_deals: six ordered permutations at probability 1/6") {
    const auto& deals = game::all_deals();
    CHECK(deals.size() == 6);

    double total = 0.0;
    for (const auto& d : deals) {
        total += d.probability;
        CHECK(d.probability == 1.0 / 6.0);
        CHECK(d.alice.value + d.bob_first.value + d.bob_second.value == 6);
        CHECK(d.alice != d.bob_first);
        CHECK(d.bob_first != d.bob_second);
    }
    CHECK(std::abs(total - 1.0) < 1e-15);

    // deterministic order: sorted by (alice, bob_first)
    for (size_t i = 1; i < deals.size(); ++i) {
        auto key = [](const game::Deal& d) { return d.alice.value * 10 + d.bob_first.value; };
        CHECK(key(deals[i - 1]) < key(deals[i]));
    }

    // alice = 1 comes with Bob pair {2,3} in both orders
    CHECK(deals[0].bob_first.value == 2);
    CHECK(deals[0].bob_second.value == 3);
    CHECK(deals[1].bob_first.value == 3);
    CHECK(deals[1].bob_second.value == 2);
}

TEST_CASE("composite_rho: density operator with the documented spectrum") {
    Operator rho = game::composite_rho();
    CHECK(std::abs(linalg::trace(rho) - cplx{1.0}) < 1e-12);
    CHECK(linalg::is_density(rho).ok);

    CHECK(test::max_abs_diff(linalg::partial_trace(rho, linalg::Subsystem::first, {2, 4}),
                             cplx{0.5} * Operator::identity(2)) < 1e-12);

    // numerical rank by the eigen-solver oracle: the six deal vectors span
    // only five dimensions (spectrum {1/4, 3/16 x4, 0 x3})
    auto eigs = linalg::hermitian_eigenvalues(rho);
    int rank = 0;
    for (double e : eigs)
        if (e > 1e-10) ++rank;
    CHECK(rank == 5);
}

TEST_CASE("composite_rho is invariant under swapping Bob's tensor factors") {
    Operator rho = game::composite_rho();
    // index (a, b1, b2) -> a*4 + b1*2 + b2; the swap exchanges b1 and b2
    auto swapped = [](int idx) {
        int a = idx >> 2, b1 = (idx >> 1) & 1, b2 = idx & 1;
        return (a << 2) | (b2 << 1) | b1;
    };
    double worst = 0.0;
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c)
            worst = std::max(worst, std::abs(rho.at(r, c) - rho.at(swapped(r), swapped(c))));
    CHECK(worst < 1e-12);
}

TEST_CASE("rho_A and rho_B: reduced operators") {
    CHECK(test::max_abs_diff(game::rho_A(), cplx{0.5} * Operator::identity(2)) < 1e-12);

    Operator rho_b = game::rho_B();
    CHECK(std::abs(linalg::trace(rho_b) - cplx{1.0}) < 1e-12);
    CHECK(linalg::is_density(rho_b).ok);

    // equals the equal mixture of the six ordered pair projectors
    Operator mix(4);
    for (const auto& deal : game::all_deals()) {
        Ket pair = game::bob_pair_state(deal);
        mix = mix + cplx{1.0 / 6.0} * linalg::outer(pair, pair);
    }
    CHECK(test::max_abs_diff(rho_b, mix) < 1e-12);
}

TEST_CASE("Z3 symmetry: rotated ensemble leaves rho_A unchanged") {
    const auto& cards = game::card_states();
    Operator rotated_avg(2);
    for (const auto& state : cards.states) {
        Ket r = test::rotate_bloch_y(state, 2.0 * test::kPi / 3.0);
        rotated_avg = rotated_avg + cplx{1.0 / 3.0} * linalg::outer(r, r);
    }
    CHECK(test::max_abs_diff(rotated_avg, game::rho_A()) < 1e-12);
}

TEST_CASE("infer_alice: the complement map") {
    CHECK(game::infer_alice(CardLabel{2}, CardLabel{3}) == CardLabel{1});
    CHECK(game::infer_alice(CardLabel{1}, CardLabel{2}) == CardLabel{3});
    CHECK(game::infer_alice(CardLabel{3}, CardLabel{1}) == CardLabel{2});

    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b) {
            if (a == b) continue;
            CHECK(game::infer_alice(CardLabel{a}, CardLabel{b}) ==
                  game::infer_alice(CardLabel{b}, CardLabel{a}));
        }

    CHECK_THROWS_AS((void)game::infer_alice(CardLabel{2}, CardLabel{2}), std::invalid_argument);
    CHECK_THROWS_AS(CardLabel{4}, std::invalid_argument);
    CHECK_THROWS_AS(CardLabel{0}, std::invalid_argument);
}
