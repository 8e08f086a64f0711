// Alice's single-qubit strategy: a Stern-Gerlach measurement along
// (cos a, sin a), the conditional probability table, three guessing rules,
// the success probability, its Shannon entropy, and the angle optimum.

#pragma once

#include <array>
#include <utility>

#include "qcard/linalg.hpp"

namespace qcard::alice {

/// Measurement angle in radians, restricted to [-pi/6, pi/6]; the card
/// ensemble is invariant under 2pi/3 Bloch rotations, so wider angles are
/// redundant relabelings.
struct AliceAngle {
    double value;
    explicit AliceAngle(double radians);
};

/// Spin-up always guesses card 1; the variants differ on spin-down.
enum class Strategy {
    guess3_on_down = 1,   // intended for 0 < alpha <= pi/6
    guess2_on_down = 2,   // intended for -pi/6 <= alpha < 0
    random23_on_down = 3  // intended for alpha = 0
};

Strategy strategy_from_index(int index);
int strategy_index(Strategy s);

/// Whether alpha lies in the strategy's intended domain. Evaluation outside
/// the domain is permitted everywhere; this is a reporting flag only.
bool in_domain(Strategy s, AliceAngle alpha);

enum class Outcome { up = 0, down = 1 };

/// Born probabilities (p_up, p_down) of the measurement on rho_A.
/// Both equal 1/2 for every angle since rho_A = I/2.
std::pair<double, double> outcome_probs(AliceAngle alpha);

/// P(card i | outcome): (2/3)cos^2 of (a, a - pi/3, a + pi/3) for spin-up,
/// the sin^2 row for spin-down.
std::array<double, 3> posterior(AliceAngle alpha, Outcome outcome);

/// Guess distribution over the three cards, rows indexed by Outcome.
std::array<std::array<double, 3>, 2> guess_distribution(Strategy s);

double success_probability(AliceAngle alpha, Strategy s);

/// Shannon entropy (bits) of the per-outcome success/failure variable:
/// sum_r P(r) H2(P(success|r)).
double shannon_entropy(AliceAngle alpha, Strategy s);

struct Optimum {
    double alpha_star;
    double p_star;
};

/// Grid scan over the strategy's domain followed by golden-section
/// refinement of the success probability.
Optimum optimize_alice(Strategy s, double grid_step = 1e-4, double refine_tol = 1e-9);

struct EntropyMinimum {
    double alpha;
    double entropy;
};

/// Grid argmin of the entropy over the strategy's domain (no refinement;
/// resolution = grid_step).
EntropyMinimum entropy_argmin(Strategy s, double grid_step = 1e-5);

}  // namespace qcard::alice
