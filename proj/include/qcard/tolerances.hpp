// Central tolerance record. Every numeric gate used by the library, the
// CLI report command and the acceptance suite references these constants.

#pragma once

namespace qcard::tol {

// state / operator predicates
inline constexpr double kNorm = 1e-12;         // |<v|v> - 1| for normalized kets
inline constexpr double kHermiticity = 1e-12;  // max |M - M^dag| entry
inline constexpr double kTrace = 1e-12;        // |tr(M) - 1|
inline constexpr double kPsdFloor = 1e-10;     // eigenvalues >= -kPsdFloor
inline constexpr double kOrthonormal = 1e-10;  // Gram residual for orthonormal sets

// collective-basis construction
inline constexpr double kCoeffNormPre = 1e-6;    // accepted input normalization slack
inline constexpr double kCrossOrthoPre = 1e-6;   // accepted input cross-orthogonality slack
inline constexpr double kCoeffNorm = 1e-9;       // a valid CoefficientSet
inline constexpr double kBasisGram = 1e-9;       // built basis Gram residual

// optimization / reproduction gates
inline constexpr double kAliceAlpha = 1e-6;      // |alpha* - pi/12|
inline constexpr double kAliceValue = 1e-9;      // |P* - (2+sqrt3)/6|
inline constexpr double kEntropyArgmin = 1e-4;   // entropy route vs pi/12
inline constexpr double kCollectiveValue = 1e-9; // value at the known optimum
inline constexpr double kOptimizerGap = 1e-6;    // optimizer shortfall from the optimum
inline constexpr double kSeparateEnum = 2e-2;    // enumeration vs factorized sequential value
inline constexpr double kOracle = 1e-10;         // closed form vs exact enumeration
inline constexpr double kExact = 1e-12;          // two algebraically equal routes
inline constexpr double kClosedForm = 1e-14;     // surd arithmetic vs reference constants

// simulation
inline constexpr double kZScore = 5.0;           // |z| bound for Monte Carlo checks

}  // namespace qcard::tol
