// Shared test helpers: random kets, operator diffs, the 2pi/3 card rotation.

#pragma once

#include <cmath>
#include <numbers>

#include "qcard/linalg.hpp"
#include "qcard/rng.hpp"

namespace qcard::test {

inline constexpr double kPi = std::numbers::pi;

inline double max_abs_diff(const linalg::Operator& a, const linalg::Operator& b) {
    double worst = 0.0;
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c)
            worst = std::max(worst, std::abs(a.at(r, c) - b.at(r, c)));
    return worst;
}

inline double max_abs_diff(const linalg::Ket& a, const linalg::Ket& b) {
    double worst = 0.0;
    for (int i = 0; i < a.dim(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

inline linalg::Ket random_ket(rng::SplitMix64& gen, int dim, bool complex_amplitudes = true) {
    std::vector<linalg::cplx> amps(static_cast<size_t>(dim));
    for (auto& a : amps) {
        double re = 2.0 * gen.uniform() - 1.0;
        double im = complex_amplitudes ? 2.0 * gen.uniform() - 1.0 : 0.0;
        a = {re, im};
    }
    return linalg::Ket{amps};
}

inline linalg::Ket random_unit_ket(rng::SplitMix64& gen, int dim,
                                   bool complex_amplitudes = true) {
    while (true) {
        linalg::Ket k = random_ket(gen, dim, complex_amplitudes);
        if (k.norm() > 1e-3) return k.normalized();
    }
}

/// Rotation about Y by the given Bloch angle: in the real ZX-plane qubit
/// coordinates this is a plane rotation by half the angle.
inline linalg::Ket rotate_bloch_y(const linalg::Ket& k, double bloch_angle) {
    const double half = bloch_angle / 2.0;
    const linalg::cplx c{std::cos(half)}, s{std::sin(half)};
    return linalg::Ket{{c * k[0] - s * k[1], s * k[0] + c * k[1]}};
}

}  // namespace qcard::test
