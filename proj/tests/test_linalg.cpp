#include <doctest.h>

#include <cmath>

#include "qcard/bob_collective.hpp"
#include "qcard/game.hpp"
#include "qcard/linalg.hpp"
#include "test_util.hpp"

using namespace qcard;
using linalg::cplx;
using linalg::Ket;
using linalg::Operator;

TEST_CASE("inner: card overlaps and conjugation") {
    const auto& cards = game::card_states();
    const Ket& psi1 = cards.states[0];
    const Ket& psi2 = cards.states[1];
    const Ket& psi3 = cards.states[2];

    CHECK(std::abs(linalg::inner(psi1, psi1) - cplx{1.0}) < 1e-15);
    CHECK(std::abs(linalg::inner(psi2, psi3) - cplx{0.5}) < 1e-15);
    CHECK(std::abs(linalg::inner(psi1, psi3) - cplx{-0.5}) < 1e-15);

    // conjugation acts on the first argument
    Ket i_ket{{cplx{0.0, 1.0}, cplx{0.0}}};
    CHECK(std::abs(linalg::inner(i_ket, psi1) - cplx{0.0, -1.0}) < 1e-15);
    CHECK(std::abs(linalg::inner(psi1, i_ket) - cplx{0.0, 1.0}) < 1e-15);

    CHECK_THROWS_AS((void)linalg::inner(psi1, Ket(4)), std::invalid_argument);
}

TEST_CASE("tensor: ordering, norms and unsupported dimensions") {
    const auto& cards = game::card_states();
    const Ket& psi1 = cards.states[0];
    const Ket& psi2 = cards.states[1];

    CHECK(std::abs(linalg::tensor(psi1, psi1)[0] - cplx{1.0}) < 1e-15);

    // first-argument-major: |e1 e0> sits at index 1*2+0
    Ket e0 = Ket::basis(2, 0), e1 = Ket::basis(2, 1);
    Ket t = linalg::tensor(e1, e0);
    CHECK(std::abs(t[2] - cplx{1.0}) < 1e-15);
    CHECK(std::abs(t[0]) < 1e-15);

    CHECK(std::abs(linalg::inner(linalg::tensor(psi1, psi2), linalg::tensor(psi2, psi1)) -
                   cplx{0.25}) < 1e-15);

    rng::SplitMix64 gen(11);
    for (int i = 0; i < 100; ++i) {
        Ket u = test::random_unit_ket(gen, 2);
        Ket v = test::random_unit_ket(gen, 2);
        CHECK(std::abs(linalg::tensor(u, v).norm() - 1.0) < 1e-12);
    }

    CHECK_THROWS_AS((void)linalg::tensor(Ket(4), Ket(4)), std::invalid_argument);
    CHECK_THROWS_AS((void)linalg::tensor(Ket(8), Ket(2)), std::invalid_argument);
}

TEST_CASE("tensor-overlap factorization (randomized)") {
    rng::SplitMix64 gen(12);
    for (int i = 0; i < 300; ++i) {
        Ket u = test::random_ket(gen, 2), v = test::random_ket(gen, 2);
        Ket x = test::random_ket(gen, 2), y = test::random_ket(gen, 2);
        cplx lhs = linalg::inner(linalg::tensor(u, v), linalg::tensor(x, y));
        cplx rhs = linalg::inner(u, x) * linalg::inner(v, y);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("outer: projector entries and traces") {
    const auto& cards = game::card_states();
    Operator p1 = linalg::outer(cards.states[0], cards.states[0]);
    CHECK(std::abs(p1.at(0, 0) - cplx{1.0}) < 1e-15);
    CHECK(std::abs(p1.at(0, 1)) < 1e-15);
    CHECK(std::abs(p1.at(1, 0)) < 1e-15);
    CHECK(std::abs(p1.at(1, 1)) < 1e-15);

    CHECK(std::abs(linalg::outer(cards.states[1], cards.states[1]).at(0, 0) - cplx{0.25}) <
          1e-15);

    rng::SplitMix64 gen(13);
    for (int i = 0; i < 50; ++i) {
        Ket u = test::random_unit_ket(gen, 4);
        CHECK(std::abs(linalg::trace(linalg::outer(u, u)) - cplx{1.0}) < 1e-13);
    }

    CHECK_THROWS_AS((void)linalg::outer(Ket(2), Ket(4)), std::invalid_argument);
}

TEST_CASE("partial_trace: reduced states of the composite") {
    Operator rho = game::composite_rho();
    Operator reduced = linalg::partial_trace(rho, linalg::Subsystem::first, {2, 4});
    Operator half_identity = cplx{0.5} * Operator::identity(2);
    CHECK(test::max_abs_diff(reduced, half_identity) < 1e-12);

    // trace preservation
    CHECK(std::abs(linalg::trace(reduced) - linalg::trace(rho)) < 1e-12);
    Operator reduced_b = linalg::partial_trace(rho, linalg::Subsystem::second, {2, 4});
    CHECK(std::abs(linalg::trace(reduced_b) - cplx{1.0}) < 1e-12);

    CHECK_THROWS_AS((void)linalg::partial_trace(rho, linalg::Subsystem::first, {2, 2}),
                    std::invalid_argument);
}

TEST_CASE("partial_trace of a product projector returns the kept factor") {
    const auto& cards = game::card_states();
    Ket prod = linalg::tensor(cards.states[0], cards.states[1]);
    Operator proj = linalg::outer(prod, prod);
    CHECK(test::max_abs_diff(
              linalg::partial_trace(proj, linalg::Subsystem::second, {2, 2}),
              linalg::outer(cards.states[1], cards.states[1])) < 1e-12);
    CHECK(test::max_abs_diff(
              linalg::partial_trace(proj, linalg::Subsystem::first, {2, 2}),
              linalg::outer(cards.states[0], cards.states[0])) < 1e-12);

    rng::SplitMix64 gen(14);
    for (int i = 0; i < 100; ++i) {
        Ket u = test::random_unit_ket(gen, 2);
        Ket v = test::random_unit_ket(gen, 2);
        Ket p = linalg::tensor(u, v);
        Operator m = linalg::outer(p, p);
        CHECK(test::max_abs_diff(linalg::partial_trace(m, linalg::Subsystem::first, {2, 2}),
                                 linalg::outer(u, u)) < 1e-12);
        CHECK(test::max_abs_diff(linalg::partial_trace(m, linalg::Subsystem::second, {2, 2}),
                                 linalg::outer(v, v)) < 1e-12);
    }
}

TEST_CASE("gram_schmidt: fixed cases and the sign convention") {
    // already orthonormal input is returned unchanged
    std::vector<Ket> basis = {Ket::basis(2, 0), Ket::basis(2, 1)};
    auto out = linalg::gram_schmidt(basis);
    CHECK(test::max_abs_diff(out[0], basis[0]) < 1e-15);
    CHECK(test::max_abs_diff(out[1], basis[1]) < 1e-15);

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    auto forced = linalg::gram_schmidt({Ket::basis(2, 0), Ket{{inv_sqrt2, inv_sqrt2}}});
    CHECK(test::max_abs_diff(forced[1], Ket::basis(2, 1)) < 1e-14);

    // sign convention: largest-magnitude coordinate made real positive
    auto flipped = linalg::gram_schmidt({cplx{-1.0} * Ket::basis(2, 0)});
    CHECK(test::max_abs_diff(flipped[0], Ket::basis(2, 0)) < 1e-15);

    try {
        (void)linalg::gram_schmidt({Ket::basis(2, 0), Ket{{cplx{1.0}, cplx{1e-13}}}});
        FAIL("expected DegeneracyError");
    } catch (const linalg::DegeneracyError& e) {
        CHECK(e.index == 1);
    }
}

TEST_CASE("gram_schmidt: random inputs produce identity Gram matrices") {
    rng::SplitMix64 gen(15);
    for (int round = 0; round < 1000; ++round) {
        int dim = round % 2 == 0 ? 2 : 4;
        size_t count = static_cast<size_t>(dim == 2 ? 2 : 3);
        std::vector<Ket> vs;
        for (size_t i = 0; i < count; ++i) vs.push_back(test::random_ket(gen, dim));
        std::vector<Ket> ortho;
        try {
            ortho = linalg::gram_schmidt(vs);
        } catch (const linalg::DegeneracyError&) {
            continue;  // random degeneracy: not this property's concern
        }
        for (size_t i = 0; i < ortho.size(); ++i)
            for (size_t j = 0; j < ortho.size(); ++j) {
                cplx expected = i == j ? cplx{1.0} : cplx{0.0};
                CHECK(std::abs(linalg::inner(ortho[i], ortho[j]) - expected) < 1e-10);
            }
    }
}

TEST_CASE("gram_schmidt completes the fourth basis vector") {
    auto basis = bob_collective::build_basis(bob_collective::optimal_coefficients());
    std::vector<Ket> three = {basis.phi[0], basis.phi[1], basis.phi[2]};

    // some computational basis vectors lie in the span; the first that does
    // not completes the frame
    bool completed_ok = false;
    for (int j = 0; j < 4 && !completed_ok; ++j) {
        std::vector<Ket> candidate = three;
        candidate.push_back(Ket::basis(4, j));
        try {
            auto completed = linalg::gram_schmidt(candidate);
            CHECK(std::abs(completed[3].norm() - 1.0) < 1e-10);
            for (int k = 0; k < 3; ++k)
                CHECK(std::abs(linalg::inner(completed[3], three[static_cast<size_t>(k)])) <
                      1e-10);
            completed_ok = true;
        } catch (const linalg::DegeneracyError& e) {
            CHECK(e.index == 3);
        }
    }
    CHECK(completed_ok);
}

TEST_CASE("is_density: composite and reduced states pass, defects are reported") {
    CHECK(linalg::is_density(game::composite_rho()).ok);
    CHECK(linalg::is_density(game::rho_B()).ok);

    Operator bad(2);
    double scale = 1.0 / (1.0 - 1e-4);
    bad.at(0, 0) = scale;
    bad.at(1, 1) = -1e-4 * scale;
    auto rep = linalg::is_density(bad);
    CHECK_FALSE(rep.ok);
    CHECK(rep.worst == "psd");
    CHECK(rep.min_eigenvalue < -1e-5);

    Operator skew(2);
    skew.at(0, 0) = 0.5;
    skew.at(1, 1) = 0.5;
    skew.at(0, 1) = cplx{0.0, 0.4};
    skew.at(1, 0) = cplx{0.0, 0.4};  // not Hermitian: M(1,0) should be -0.4i
    CHECK_FALSE(linalg::is_density(skew).ok);
    CHECK(linalg::is_density(skew).worst == "hermiticity");
}

TEST_CASE("is_density accepts random convex mixtures of projectors") {
    rng::SplitMix64 gen(16);
    for (int round = 0; round < 200; ++round) {
        int dim = round % 2 == 0 ? 2 : 4;
        Operator mix(dim);
        std::array<double, 3> w = {gen.uniform(), gen.uniform(), gen.uniform()};
        double total = w[0] + w[1] + w[2];
        for (double& x : w) x /= total;
        for (double weight : w) {
            Ket u = test::random_unit_ket(gen, dim);
            mix = mix + cplx{weight} * linalg::outer(u, u);
        }
        CHECK(linalg::is_density(mix, 1e-10).ok);
    }
}

TEST_CASE("hermitian_eigenvalues: ascending spectrum") {
    Operator d(2);
    d.at(0, 0) = 2.0;
    d.at(1, 1) = 1.0;
    auto eigs = linalg::hermitian_eigenvalues(d);
    CHECK(std::abs(eigs[0] - 1.0) < 1e-14);
    CHECK(std::abs(eigs[1] - 2.0) < 1e-14);
}
