#include "qcard/game.hpp"

#include <cmath>
#include <stdexcept>

namespace qcard::game {

using linalg::cplx;
using linalg::Ket;
using linalg::Operator;

CardLabel::CardLabel(int v) : value(v) {
    if (v < 1 || v > 3) throw std::invalid_argument("CardLabel: index must be 1, 2 or 3");
}

const CardTriple& card_states() {
    static const CardTriple triple = [] {
        const double h = std::sqrt(3.0) / 2.0;
        return CardTriple{{Ket{{cplx{1.0}, cplx{0.0}}},
                           Ket{{cplx{0.5}, cplx{h}}},
                           Ket{{cplx{-0.5}, cplx{h}}}}};
    }();
    return triple;
}

const std::array<Deal, 6>& all_deals() {
    static const std::array<Deal, 6> deals = {{
        {CardLabel{1}, CardLabel{2}, CardLabel{3}, 1.0 / 6.0},
        {CardLabel{1}, CardLabel{3}, CardLabel{2}, 1.0 / 6.0},
        {CardLabel{2}, CardLabel{1}, CardLabel{3}, 1.0 / 6.0},
        {CardLabel{2}, CardLabel{3}, CardLabel{1}, 1.0 / 6.0},
        {CardLabel{3}, CardLabel{1}, CardLabel{2}, 1.0 / 6.0},
        {CardLabel{3}, CardLabel{2}, CardLabel{1}, 1.0 / 6.0},
    }};
    return deals;
}

Ket bob_pair_state(const Deal& deal) {
    const CardTriple& cards = card_states();
    return linalg::tensor(cards.state(deal.bob_first), cards.state(deal.bob_second));
}

Operator composite_rho() {
    const CardTriple& cards = card_states();
    Operator rho(8);
    for (const Deal& deal : all_deals()) {
        Ket joint = linalg::tensor(cards.state(deal.alice), bob_pair_state(deal));
        rho = rho + cplx{deal.probability} * linalg::outer(joint, joint);
    }
    return rho;
}

Operator rho_A() {
    return linalg::partial_trace(composite_rho(), linalg::Subsystem::first, {2, 4});
}

Operator rho_B() {
    return linalg::partial_trace(composite_rho(), linalg::Subsystem::second, {2, 4});
}

CardLabel infer_alice(CardLabel first, CardLabel second) {
    if (first == second)
        throw std::invalid_argument("infer_alice: Bob's two cards must differ");
    return CardLabel{6 - first.value - second.value};
}

}  // namespace qcard::game
