// The card ensemble: three non-orthogonal qubit preparations, the six
// equiprobable deals, the composite/reduced density operators and the
// complement map from Bob's pair to Alice's card.

#pragma once

#include <array>

#include "qcard/linalg.hpp"

namespace qcard::game {

struct CardLabel {
    int value;  // 1, 2 or 3
    explicit CardLabel(int v);
    friend bool operator==(CardLabel a, CardLabel b) { return a.value == b.value; }
    friend bool operator!=(CardLabel a, CardLabel b) { return a.value != b.value; }
};

struct CardTriple {
    std::array<linalg::Ket, 3> states;
    const linalg::Ket& state(CardLabel label) const {
        return states[static_cast<size_t>(label.value - 1)];
    }
};

struct Deal {
    CardLabel alice;
    CardLabel bob_first;
    CardLabel bob_second;
    double probability;
};

/// (1,0), (1/2, sqrt3/2), (-1/2, sqrt3/2): pairwise overlap magnitude 1/2.
const CardTriple& card_states();

/// All six ordered deals, probability 1/6 each, sorted by (alice, bob_first).
const std::array<Deal, 6>& all_deals();

/// |psi_b1 psi_b2>, Bob's first card as the first tensor factor.
linalg::Ket bob_pair_state(const Deal& deal);

/// Equal mixture of the six deal projectors on the 8-dim Alice (x) Bob space.
linalg::Operator composite_rho();

linalg::Operator rho_A();  // dim 2, equals I/2
linalg::Operator rho_B();  // dim 4

/// The unique label that is in neither argument.
CardLabel infer_alice(CardLabel first, CardLabel second);

}  // namespace qcard::game
