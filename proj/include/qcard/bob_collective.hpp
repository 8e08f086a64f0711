// Bob's collective measurement on the 4-dim two-card space: the auxiliary
// orthonormal bases, the coefficient-parameterized measuring basis
// {phi1..phi4}, the success functional with its closed polynomial form,
// constrained optimization over the coefficients, and an unstructured
// full-frame optimizer used as an independent check.

#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qcard/linalg.hpp"

namespace qcard::bob_collective {

/// Three orthonormal bases of the two-card space. Basis k is adapted to one
/// ordered pair family: element 1 is the symmetric combination of the pair
/// states (both orders), element 2 the antisymmetric one, elements 3 and 4
/// fixed combinations of the doubled states |psi_i psi_i>.
struct AuxBases {
    std::array<linalg::Ket, 4> a_basis;  // |A_1..A_4>, pair {psi1, psi2}
    std::array<linalg::Ket, 4> b_basis;  // |B_1..B_4>, pair {psi2, psi3}
    std::array<linalg::Ket, 4> c_basis;  // |C_1..C_4>, pair {psi3, psi1}
};
const AuxBases& aux_bases();

/// Real expansion coefficients of phi1/phi2/phi3 in the A/B/C bases.
struct CoefficientSet {
    std::array<double, 4> a;
    std::array<double, 4> b;
    std::array<double, 4> c;
};

/// The known optimum: a1=b1=c1=(4+sqrt2)/sqrt30, a4=b4=-c4=(2-sqrt2)/sqrt15,
/// all other entries zero. Reaches (3+sqrt2)/6.
CoefficientSet optimal_coefficients();

/// A random exactly-valid coefficient set (orthonormal triple), derived
/// deterministically from the seed.
CoefficientSet random_coefficients(std::uint64_t seed);

/// What Bob guesses when the fourth (complement) outcome fires.
enum class GuessChoice {
    fixed_card = 1,      // I:   always guess card 3
    random_of_two = 2,   // II:  uniform over cards {3, 1}
    random_of_three = 3  // III: uniform over all three cards
};

/// Orthonormal measuring basis plus the per-outcome guess distributions
/// (guess_map[k][label-1]). Outcomes 1..3 guess cards 3, 1, 2; outcome 4
/// follows the GuessChoice.
struct CollectiveBasis {
    std::array<linalg::Ket, 4> phi;
    std::array<std::array<double, 3>, 4> guess_map;
    double gram_residual;  // max |<phi_i|phi_j> - delta_ij|
};

/// Raised when the requested phi1..phi3 are not orthogonal to working
/// precision; carries the offending pair and its overlap.
struct ConstraintError : std::runtime_error {
    int i, j;
    double residual;
    ConstraintError(int i_, int j_, double residual_);
};

/// Builds phi1..phi3 from the coefficients (re-normalized internally),
/// projects them to the nearest orthonormal triple, and completes phi4 as
/// the canonical orthogonal complement.
CollectiveBasis build_basis(const CoefficientSet& coeffs,
                            GuessChoice choice = GuessChoice::random_of_three);

/// Success probability of an arbitrary orthonormal frame under arbitrary
/// per-outcome guess distributions: sum over the six deals of the Born
/// weight of each outcome times the guess rule's correctness probability.
double evaluate_frame(const std::array<linalg::Ket, 4>& frame,
                      const std::array<std::array<double, 3>, 4>& guess_map);

/// Same frame evaluation with the per-outcome posterior-maximizing guess;
/// returns the value and the chosen labels.
struct BestGuessResult {
    double value;
    std::array<int, 4> guesses;  // labels 1..3
};
BestGuessResult evaluate_frame_best_guess(const std::array<linalg::Ket, 4>& frame);

/// Success probability of the built basis: exact Born-rule enumeration over
/// all deals and outcomes (the authoritative route for every choice).
double success_combined(const CoefficientSet& coeffs, GuessChoice choice);

/// The closed polynomial form of the choice-III success probability:
/// 1/3 + (2/15)(a1^2+b1^2+c1^2) - (1/12)(a3^2+b3^2+c3^2)
///     - (1/20)(a4^2+b4^2+c4^2) + (1/30)(a1 a4 + b1 b4 - c1 c4).
/// Cross-check only; success_combined's enumeration is authoritative.
double success_combined_closed_form(const CoefficientSet& coeffs);

struct CollectiveOptimum {
    CoefficientSet coeffs{};
    double p_star = 0.0;
    int failed_restarts = 0;
    std::vector<double> restart_values;  // best value of each restart
};

/// Multi-restart simplex ascent over the constraint manifold (unit vectors
/// plus cross-orthogonality, handled by penalty + polar polishing). The
/// reported coefficients are feasible and sign-canonicalized (x1 >= 0).
CollectiveOptimum optimize_collective(GuessChoice choice, int restarts, std::uint64_t seed);

struct FrameOptimum {
    std::array<linalg::Ket, 4> basis = {linalg::Ket(4), linalg::Ket(4), linalg::Ket(4),
                                        linalg::Ket(4)};
    std::array<int, 4> guesses = {1, 1, 1, 1};
    double p_star = 0.0;
    int failed_restarts = 0;
};

/// Optimizes over all real orthonormal 4-frames (six planar rotation
/// angles) with the posterior-maximizing guess per outcome. Independent of
/// the coefficient ansatz; used to check that the structured optimum is not
/// an artifact of the parameterization.
FrameOptimum optimize_full_frame(int restarts, std::uint64_t seed);

/// Frame spanned by applying the six Givens rotations (01,02,03,12,13,23)
/// to the computational basis. Exposed for tests.
std::array<linalg::Ket, 4> frame_from_angles(const std::array<double, 6>& angles);

}  // namespace qcard::bob_collective
