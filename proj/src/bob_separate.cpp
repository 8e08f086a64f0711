#include "qcard/bob_separate.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "qcard/game.hpp"

namespace qcard::bob_separate {

using game::CardLabel;
using game::Deal;
using linalg::cplx;
using linalg::Ket;
using linalg::Operator;

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// the two labels != g, ascending
std::array<int, 2> other_two(int g) {
    switch (g) {
        case 1: return {2, 3};
        case 2: return {1, 3};
        case 3: return {1, 2};
    }
    throw std::invalid_argument("label must be 1, 2 or 3");
}

void validate(const SequentialProtocol& p) {
    for (const auto& row : p.first_guess) {
        double sum = 0.0;
        for (double w : row) {
            require(w >= -1e-12, "SequentialProtocol: negative guess weight");
            sum += w;
        }
        require(std::abs(sum - 1.0) < 1e-9, "SequentialProtocol: guess row must sum to 1");
    }
}

}  // namespace

double helstrom_pair(const Ket& u, const Ket& v, double prior_u) {
    require(u.dim() == 2 && v.dim() == 2, "helstrom_pair: states must be qubits");
    require(u.is_normalized(1e-9) && v.is_normalized(1e-9),
            "helstrom_pair: states must be normalized");
    require(prior_u >= 0.0 && prior_u <= 1.0, "helstrom_pair: prior outside [0, 1]");
    double overlap_sq = std::norm(linalg::inner(u, v));
    double discr = 1.0 - 4.0 * prior_u * (1.0 - prior_u) * overlap_sq;
    return 0.5 * (1.0 + std::sqrt(std::max(0.0, discr)));
}

HelstromMeasurement helstrom_measurement(const Ket& u, const Ket& v) {
    require(u.dim() == 2 && v.dim() == 2, "helstrom_measurement: states must be qubits");
    require(u.is_normalized(1e-9) && v.is_normalized(1e-9),
            "helstrom_measurement: states must be normalized");
    require(std::norm(linalg::inner(u, v)) < 1.0 - 1e-12,
            "helstrom_measurement: states must be distinguishable");

    Operator diff = cplx{0.5} * (linalg::outer(u, u) - linalg::outer(v, v));
    Eigen::Matrix2cd d;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) d(r, c) = diff.at(r, c);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(d);
    // eigenvalues ascending: column 1 carries the positive eigenvalue
    Ket plus{{solver.eigenvectors()(0, 1), solver.eigenvectors()(1, 1)}};
    Operator toward_u = linalg::outer(plus, plus);
    Operator toward_v = Operator::identity(2) - toward_u;
    return {toward_u, toward_v};
}

SequentialProtocol SequentialProtocol::standard() {
    SequentialProtocol p;
    p.first_angle = kPi / 12.0;
    return p;
}

SeparateReport factorized_formulas() {
    SeparateReport rep;
    const double s3 = std::sqrt(3.0);
    rep.p1 = (2.0 + s3) / 6.0;
    rep.p2 = (2.0 + s3) / 4.0;
    rep.p12 = rep.p1 * rep.p2;
    rep.p21 = (1.0 - rep.p1) * 0.5 * 0.5;
    rep.p_sep = rep.p12 + rep.p21;
    rep.enumeration_p_sep = std::numeric_limits<double>::quiet_NaN();
    rep.discrepancy = std::numeric_limits<double>::quiet_NaN();
    return rep;
}

double enumerate_sequential(const SequentialProtocol& protocol) {
    validate(protocol);
    const auto& cards = game::card_states();

    // second-stage Helstrom measurement for each possible first guess
    struct PairMeasurement {
        std::array<int, 2> labels;
        HelstromMeasurement meas;
    };
    std::array<PairMeasurement, 3> second;
    for (int g = 1; g <= 3; ++g) {
        auto pair = other_two(g);
        second[static_cast<size_t>(g - 1)] = {
            pair, helstrom_measurement(cards.state(CardLabel{pair[0]}),
                                       cards.state(CardLabel{pair[1]}))};
    }

    double success = 0.0;
    for (const Deal& deal : game::all_deals()) {
        const Ket& first_card = cards.state(deal.bob_first);
        const Ket& second_card = cards.state(deal.bob_second);

        // distribution over the first guess
        std::array<double, 3> first_weight = {0.0, 0.0, 0.0};
        if (protocol.first_stage == FirstStage::oracle_first_card) {
            first_weight[static_cast<size_t>(deal.bob_first.value - 1)] = 1.0;
        } else {
            Ket up{{std::cos(protocol.first_angle), std::sin(protocol.first_angle)}};
            Ket down{{-std::sin(protocol.first_angle), std::cos(protocol.first_angle)}};
            const double q_up = std::norm(linalg::inner(up, first_card));
            const double q_down = std::norm(linalg::inner(down, first_card));
            for (int g = 0; g < 3; ++g) {
                first_weight[static_cast<size_t>(g)] =
                    q_up * protocol.first_guess[0][static_cast<size_t>(g)] +
                    q_down * protocol.first_guess[1][static_cast<size_t>(g)];
            }
        }

        auto settle = [&](int g1, int g2, double weight) {
            if (weight <= 0.0) return;
            if (g1 == g2) {
                // collision: final answer uniform over the two labels != g1
                for (int h : other_two(g1))
                    if (h == deal.alice.value) success += deal.probability * weight * 0.5;
                return;
            }
            CardLabel final_guess = game::infer_alice(CardLabel{g1}, CardLabel{g2});
            if (final_guess == deal.alice) success += deal.probability * weight;
        };

        for (int g1 = 1; g1 <= 3; ++g1) {
            double w1 = first_weight[static_cast<size_t>(g1 - 1)];
            if (w1 <= 0.0) continue;
            if (protocol.second_stage == SecondStage::uniform_random) {
                for (int g2 = 1; g2 <= 3; ++g2) settle(g1, g2, w1 / 3.0);
                continue;
            }
            const PairMeasurement& pm = second[static_cast<size_t>(g1 - 1)];
            double q_first = std::real(linalg::expectation(pm.meas.toward_u, second_card));
            double q_second = std::real(linalg::expectation(pm.meas.toward_v, second_card));
            settle(g1, pm.labels[0], w1 * q_first);
            settle(g1, pm.labels[1], w1 * q_second);
        }
    }
    return success;
}

SeparateReport evaluate(const SequentialProtocol& protocol) {
    SeparateReport rep = factorized_formulas();
    rep.enumeration_p_sep = enumerate_sequential(protocol);
    rep.discrepancy = rep.enumeration_p_sep - rep.p_sep;
    return rep;
}

}  // namespace qcard::bob_separate
