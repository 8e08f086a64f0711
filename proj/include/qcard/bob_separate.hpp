// Bob's one-card-at-a-time protocol: the factorized closed-form success
// probabilities (P1, P2, P12, P21, P_sep) and an exact enumeration of the
// fully specified sequential protocol that checks them independently.

#pragma once

#include <array>

#include "qcard/linalg.hpp"

namespace qcard::bob_separate {

/// Minimum-error success probability for discriminating two pure states
/// with prior prior_u on u: (1 + sqrt(1 - 4 p (1-p) |<u|v>|^2)) / 2.
double helstrom_pair(const linalg::Ket& u, const linalg::Ket& v, double prior_u);

/// The optimal two-outcome projective measurement for equiprobable {u, v}:
/// projectors onto the +/- eigenvectors of (|u><u| - |v><v|) / 2.
struct HelstromMeasurement {
    linalg::Operator toward_u = linalg::Operator(2);  // outcome that favors u
    linalg::Operator toward_v = linalg::Operator(2);
};
HelstromMeasurement helstrom_measurement(const linalg::Ket& u, const linalg::Ket& v);

enum class FirstStage {
    measure,           // Stern-Gerlach on Bob's first card, then guess
    oracle_first_card  // diagnostic: first guess always equals the first card
};

enum class SecondStage {
    helstrom,       // discriminate the two labels not guessed first
    uniform_random  // diagnostic: second guess uniform over all three labels
};

/// The sequential protocol. The first measurement direction is a free angle
/// (radians, unrestricted) so relabeled variants of the protocol remain
/// expressible; the default reuses Alice's optimal rule at pi/12.
/// first_guess[outcome][label-1] is the guess distribution per outcome
/// (row 0 = spin-up, row 1 = spin-down).
struct SequentialProtocol {
    FirstStage first_stage = FirstStage::measure;
    double first_angle = 0.0;
    std::array<std::array<double, 3>, 2> first_guess = {{{1, 0, 0}, {0, 0, 1}}};
    SecondStage second_stage = SecondStage::helstrom;

    static SequentialProtocol standard();  // measure at pi/12, Helstrom second stage
};

struct SeparateReport {
    double p1 = 0.0;
    double p2 = 0.0;
    double p12 = 0.0;
    double p21 = 0.0;
    double p_sep = 0.0;
    double enumeration_p_sep = 0.0;  // NaN when only formulas were evaluated
    double discrepancy = 0.0;        // enumeration - p_sep
};

/// The factorized closed forms only: P1 = (2+sqrt3)/6, P2 = (2+sqrt3)/4,
/// P12 = P1 P2, P21 = (1-P1)/4, P_sep = P12 + P21. Enumeration fields NaN.
SeparateReport factorized_formulas();

/// Exact success probability of the protocol: sums Born probabilities over
/// all six deals, both first-stage outcomes and both second-stage outcomes;
/// randomized guesses are credited fractionally. No independence assumption.
double enumerate_sequential(const SequentialProtocol& protocol);

/// Formulas plus the enumeration of the given protocol and their difference.
SeparateReport evaluate(const SequentialProtocol& protocol = SequentialProtocol::standard());

}  // namespace qcard::bob_separate
