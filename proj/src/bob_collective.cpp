#include "qcard/bob_collective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

#include "qcard/game.hpp"
#include "qcard/rng.hpp"
#include "nelder_mead.hpp"

namespace qcard::bob_collective {

using linalg::cplx;
using linalg::Ket;

namespace {

using RVec4 = std::array<double, 4>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double dot(const RVec4& u, const RVec4& v) {
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2] + u[3] * v[3];
}

double norm(const RVec4& u) { return std::sqrt(dot(u, u)); }

RVec4 real_of(const Ket& k) {
    RVec4 out{};
    for (int i = 0; i < 4; ++i) out[static_cast<size_t>(i)] = std::real(k[i]);
    return out;
}

Ket ket_of(const RVec4& v) {
    return Ket{{cplx{v[0]}, cplx{v[1]}, cplx{v[2]}, cplx{v[3]}}};
}

// Everything in this module is real: precomputed real coordinates of the
// three auxiliary bases and of the six deal states.
struct Tables {
    std::array<std::array<RVec4, 4>, 3> bases;  // A, B, C
    std::array<RVec4, 6> deal_states;
    std::array<int, 6> alice_label;
};

const Tables& tables() {
    static const Tables t = [] {
        Tables out;
        const AuxBases& aux = aux_bases();
        for (int i = 0; i < 4; ++i) {
            out.bases[0][static_cast<size_t>(i)] = real_of(aux.a_basis[static_cast<size_t>(i)]);
            out.bases[1][static_cast<size_t>(i)] = real_of(aux.b_basis[static_cast<size_t>(i)]);
            out.bases[2][static_cast<size_t>(i)] = real_of(aux.c_basis[static_cast<size_t>(i)]);
        }
        const auto& deals = game::all_deals();
        for (size_t d = 0; d < 6; ++d) {
            out.deal_states[d] = real_of(game::bob_pair_state(deals[d]));
            out.alice_label[d] = deals[d].alice.value;
        }
        return out;
    }();
    return t;
}

std::array<std::array<double, 3>, 4> guess_rows(GuessChoice choice) {
    std::array<std::array<double, 3>, 4> rows = {{
        {0.0, 0.0, 1.0},  // outcome phi1 -> card 3
        {1.0, 0.0, 0.0},  // outcome phi2 -> card 1
        {0.0, 1.0, 0.0},  // outcome phi3 -> card 2
        {0.0, 0.0, 0.0},
    }};
    switch (choice) {
        case GuessChoice::fixed_card: rows[3] = {0.0, 0.0, 1.0}; break;
        case GuessChoice::random_of_two: rows[3] = {0.5, 0.0, 0.5}; break;
        case GuessChoice::random_of_three: rows[3] = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}; break;
    }
    return rows;
}

double evaluate_real_frame(const std::array<RVec4, 4>& frame,
                           const std::array<std::array<double, 3>, 4>& guess) {
    const Tables& t = tables();
    double success = 0.0;
    for (size_t d = 0; d < 6; ++d) {
        const int correct = t.alice_label[d] - 1;
        for (size_t k = 0; k < 4; ++k) {
            double amp = dot(t.deal_states[d], frame[k]);
            success += amp * amp * guess[k][static_cast<size_t>(correct)] / 6.0;
        }
    }
    return success;
}

// per-outcome success mass w[k][i] = sum over deals with Alice card i+1
std::array<std::array<double, 3>, 4> outcome_weights(const std::array<RVec4, 4>& frame) {
    const Tables& t = tables();
    std::array<std::array<double, 3>, 4> w{};
    for (size_t d = 0; d < 6; ++d)
        for (size_t k = 0; k < 4; ++k) {
            double amp = dot(t.deal_states[d], frame[k]);
            w[k][static_cast<size_t>(t.alice_label[d] - 1)] += amp * amp / 6.0;
        }
    return w;
}

// sign flip so the largest-magnitude component (first among ties) is positive
RVec4 canonical_sign(RVec4 v) {
    size_t k = 0;
    for (size_t i = 1; i < 4; ++i)
        if (std::abs(v[i]) > std::abs(v[k])) k = i;
    if (v[k] < 0.0)
        for (double& x : v) x = -x;
    return v;
}

// generalized cross product: the unit vector orthogonal to u, v, w
RVec4 orthogonal_complement(const RVec4& u, const RVec4& v, const RVec4& w) {
    auto det3 = [](double a0, double a1, double a2, double b0, double b1, double b2,
                   double c0, double c1, double c2) {
        return a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) + a2 * (b0 * c1 - b1 * c0);
    };
    RVec4 x{};
    for (size_t drop = 0; drop < 4; ++drop) {
        std::array<double, 3> uu{}, vv{}, ww{};
        size_t j = 0;
        for (size_t c = 0; c < 4; ++c) {
            if (c == drop) continue;
            uu[j] = u[c];
            vv[j] = v[c];
            ww[j] = w[c];
            ++j;
        }
        double minor = det3(uu[0], uu[1], uu[2], vv[0], vv[1], vv[2], ww[0], ww[1], ww[2]);
        x[drop] = (drop % 2 == 0) ? minor : -minor;
    }
    double n = norm(x);
    if (n < 1e-12)
        throw std::invalid_argument("orthogonal complement: input triple is degenerate");
    for (double& e : x) e /= n;
    return canonical_sign(x);
}

// nearest orthonormal triple (polar projection of the 4x3 column matrix)
std::array<RVec4, 3> polish_triple(const std::array<RVec4, 3>& phi) {
    Eigen::Matrix<double, 4, 3> v;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 3; ++c) v(r, c) = phi[static_cast<size_t>(c)][static_cast<size_t>(r)];
    Eigen::Matrix3d gram = v.transpose() * v;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(gram);
    if (solver.eigenvalues()(0) < 1e-12)
        throw std::invalid_argument("polish: triple is numerically rank deficient");
    Eigen::Vector3d inv_sqrt = solver.eigenvalues().cwiseSqrt().cwiseInverse();
    Eigen::Matrix3d w_inv_sqrt =
        solver.eigenvectors() * inv_sqrt.asDiagonal() * solver.eigenvectors().transpose();
    Eigen::Matrix<double, 4, 3> u = v * w_inv_sqrt;
    std::array<RVec4, 3> out{};
    for (int c = 0; c < 3; ++c)
        for (int r = 0; r < 4; ++r) out[static_cast<size_t>(c)][static_cast<size_t>(r)] = u(r, c);
    return out;
}

RVec4 combine(const std::array<RVec4, 4>& basis, const std::array<double, 4>& coeff) {
    RVec4 out{};
    for (size_t i = 0; i < 4; ++i)
        for (size_t r = 0; r < 4; ++r) out[r] += coeff[i] * basis[i][r];
    return out;
}

std::array<double, 4> coefficients_in(const std::array<RVec4, 4>& basis, const RVec4& v) {
    return {dot(basis[0], v), dot(basis[1], v), dot(basis[2], v), dot(basis[3], v)};
}

std::array<double, 4> normalized_coeff(const std::array<double, 4>& raw, const char* which) {
    double n2 = raw[0] * raw[0] + raw[1] * raw[1] + raw[2] * raw[2] + raw[3] * raw[3];
    if (std::abs(n2 - 1.0) > 2.0 * tol::kCoeffNormPre)
        throw std::invalid_argument(std::string("CoefficientSet: vector ") + which +
                                    " is not normalized");
    double n = std::sqrt(n2);
    return {raw[0] / n, raw[1] / n, raw[2] / n, raw[3] / n};
}

std::array<double, 4> canonical_coeff_sign(std::array<double, 4> x) {
    size_t lead = 0;
    while (lead < 4 && std::abs(x[lead]) < 1e-12) ++lead;
    if (lead < 4 && x[lead] < 0.0)
        for (double& e : x) e = -e;
    return x;
}

std::array<RVec4, 3> raw_triple(const CoefficientSet& coeffs) {
    const Tables& t = tables();
    return {combine(t.bases[0], normalized_coeff(coeffs.a, "a")),
            combine(t.bases[1], normalized_coeff(coeffs.b, "b")),
            combine(t.bases[2], normalized_coeff(coeffs.c, "c"))};
}

std::array<RVec4, 4> real_frame_of_basis(const CollectiveBasis& basis) {
    return {real_of(basis.phi[0]), real_of(basis.phi[1]), real_of(basis.phi[2]),
            real_of(basis.phi[3])};
}

double frame_gram_residual(const std::array<RVec4, 4>& f) {
    double worst = 0.0;
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j)
            worst = std::max(worst, std::abs(dot(f[i], f[j]) - (i == j ? 1.0 : 0.0)));
    return worst;
}

double gaussian(rng::SplitMix64& gen) {
    double u1 = std::max(gen.uniform(), 0x1.0p-60);
    double u2 = gen.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

// random orthonormal triple in R^4 (Gram-Schmidt of Gaussian vectors)
std::array<RVec4, 3> random_triple(rng::SplitMix64& gen) {
    while (true) {
        std::array<RVec4, 3> v{};
        for (auto& vec : v)
            for (double& x : vec) x = gaussian(gen);
        bool ok = true;
        for (size_t i = 0; i < 3 && ok; ++i) {
            for (size_t j = 0; j < i; ++j) {
                double proj = dot(v[j], v[i]);
                for (size_t r = 0; r < 4; ++r) v[i][r] -= proj * v[j][r];
            }
            double n = norm(v[i]);
            if (n < 1e-6) {
                ok = false;
                break;
            }
            for (double& x : v[i]) x /= n;
        }
        if (ok) return v;
    }
}

CoefficientSet coefficients_of_triple(const std::array<RVec4, 3>& f) {
    const Tables& t = tables();
    return {coefficients_in(t.bases[0], f[0]), coefficients_in(t.bases[1], f[1]),
            coefficients_in(t.bases[2], f[2])};
}

}  // namespace

const AuxBases& aux_bases() {
    static const AuxBases bases = [] {
        const auto& cards = game::card_states();
        auto pair = [&](int i, int j) {
            return linalg::tensor(cards.state(game::CardLabel{i}), cards.state(game::CardLabel{j}));
        };
        const Ket d11 = pair(1, 1), d22 = pair(2, 2), d33 = pair(3, 3);
        const cplx sym = std::sqrt(2.0 / 5.0);
        const cplx anti = std::sqrt(2.0 / 3.0);
        const cplx third = std::sqrt(2.0 / 5.0) / 3.0;

        auto quad = [&](const Ket& fwd, const Ket& rev, const Ket& da, const Ket& db,
                        const Ket& dc) {
            return std::array<Ket, 4>{
                sym * (fwd + rev),
                anti * (fwd - rev),
                anti * (da - db),
                third * (da + db + cplx{4.0} * dc),
            };
        };
        return AuxBases{
            quad(pair(1, 2), pair(2, 1), d11, d22, d33),
            quad(pair(2, 3), pair(3, 2), d22, d33, d11),
            quad(pair(3, 1), pair(1, 3), d33, d11, d22),
        };
    }();
    return bases;
}

CoefficientSet optimal_coefficients() {
    const double lead = (4.0 + std::sqrt(2.0)) / std::sqrt(30.0);
    const double tail = (2.0 - std::sqrt(2.0)) / std::sqrt(15.0);
    return {{lead, 0.0, 0.0, tail}, {lead, 0.0, 0.0, tail}, {lead, 0.0, 0.0, -tail}};
}

CoefficientSet random_coefficients(std::uint64_t seed) {
    rng::SplitMix64 gen(seed);
    return coefficients_of_triple(random_triple(gen));
}

ConstraintError::ConstraintError(int i_, int j_, double residual_)
    : std::runtime_error("collective basis: <phi" + std::to_string(i_) + "|phi" +
                         std::to_string(j_) + "> = " + std::to_string(residual_) +
                         " violates orthogonality"),
      i(i_),
      j(j_),
      residual(residual_) {}

CollectiveBasis build_basis(const CoefficientSet& coeffs, GuessChoice choice) {
    std::array<RVec4, 3> phi = raw_triple(coeffs);

    for (size_t i = 0; i < 3; ++i)
        for (size_t j = i + 1; j < 3; ++j) {
            double g = dot(phi[i], phi[j]);
            if (std::abs(g) > tol::kCrossOrthoPre)
                throw ConstraintError(static_cast<int>(i + 1), static_cast<int>(j + 1), g);
        }

    std::array<RVec4, 3> polished = polish_triple(phi);
    RVec4 phi4 = orthogonal_complement(polished[0], polished[1], polished[2]);

    std::array<RVec4, 4> frame = {polished[0], polished[1], polished[2], phi4};
    CollectiveBasis out{
        {ket_of(frame[0]), ket_of(frame[1]), ket_of(frame[2]), ket_of(frame[3])},
        guess_rows(choice),
        frame_gram_residual(frame)};
    return out;
}

double evaluate_frame(const std::array<Ket, 4>& frame,
                      const std::array<std::array<double, 3>, 4>& guess_map) {
    const auto& deals = game::all_deals();
    double success = 0.0;
    for (size_t d = 0; d < 6; ++d) {
        Ket state = game::bob_pair_state(deals[d]);
        const int correct = deals[d].alice.value - 1;
        for (size_t k = 0; k < 4; ++k) {
            double p = std::norm(linalg::inner(frame[k], state));
            success += deals[d].probability * p * guess_map[k][static_cast<size_t>(correct)];
        }
    }
    return success;
}

BestGuessResult evaluate_frame_best_guess(const std::array<Ket, 4>& frame) {
    std::array<RVec4, 4> f = {real_of(frame[0]), real_of(frame[1]), real_of(frame[2]),
                              real_of(frame[3])};
    auto w = outcome_weights(f);
    BestGuessResult out{0.0, {1, 1, 1, 1}};
    for (size_t k = 0; k < 4; ++k) {
        size_t best = 0;
        for (size_t i = 1; i < 3; ++i)
            if (w[k][i] > w[k][best]) best = i;
        out.guesses[k] = static_cast<int>(best + 1);
        out.value += w[k][best];
    }
    return out;
}

double success_combined(const CoefficientSet& coeffs, GuessChoice choice) {
    CollectiveBasis basis = build_basis(coeffs, choice);
    return evaluate_real_frame(real_frame_of_basis(basis), basis.guess_map);
}

double success_combined_closed_form(const CoefficientSet& coeffs) {
    const auto a = normalized_coeff(coeffs.a, "a");
    const auto b = normalized_coeff(coeffs.b, "b");
    const auto c = normalized_coeff(coeffs.c, "c");
    return 1.0 / 3.0 + (2.0 / 15.0) * (a[0] * a[0] + b[0] * b[0] + c[0] * c[0]) -
           (1.0 / 12.0) * (a[2] * a[2] + b[2] * b[2] + c[2] * c[2]) -
           (1.0 / 20.0) * (a[3] * a[3] + b[3] * b[3] + c[3] * c[3]) +
           (1.0 / 30.0) * (a[0] * a[3] + b[0] * b[3] - c[0] * c[3]);
}

namespace {

constexpr double kPenaltyWeight = 10.0;
constexpr double kBadObjective = 1e6;

// objective over the unconstrained 12-parameter chart; larger is better,
// returned negated for the minimizer
double chart_objective(const std::vector<double>& x,
                       const std::array<std::array<double, 3>, 4>& guess) {
    const Tables& t = tables();
    std::array<RVec4, 3> phi{};
    double penalty = 0.0;
    for (size_t v = 0; v < 3; ++v) {
        std::array<double, 4> raw{};
        for (size_t i = 0; i < 4; ++i) raw[i] = x[4 * v + i];
        double n = std::sqrt(raw[0] * raw[0] + raw[1] * raw[1] + raw[2] * raw[2] + raw[3] * raw[3]);
        if (n < 1e-8) return kBadObjective;
        for (double& e : raw) e /= n;
        phi[v] = combine(t.bases[v], raw);
    }
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = i + 1; j < 3; ++j) {
            double g = dot(phi[i], phi[j]);
            penalty += g * g;
        }
    try {
        std::array<RVec4, 3> polished = polish_triple(phi);
        RVec4 phi4 = orthogonal_complement(polished[0], polished[1], polished[2]);
        double value =
            evaluate_real_frame({polished[0], polished[1], polished[2], phi4}, guess);
        return -(value - kPenaltyWeight * penalty);
    } catch (const std::invalid_argument&) {
        return kBadObjective;
    }
}

}  // namespace

CollectiveOptimum optimize_collective(GuessChoice choice, int restarts, std::uint64_t seed) {
    if (restarts < 1) throw std::invalid_argument("optimize_collective: restarts must be >= 1");
    const auto guess = guess_rows(choice);
    auto objective = [&](const std::vector<double>& x) { return chart_objective(x, guess); };

    CollectiveOptimum best;
    best.p_star = -1.0;
    for (int r = 0; r < restarts; ++r) {
        rng::SplitMix64 gen(rng::derive_stream(seed, static_cast<std::uint64_t>(r)));
        std::array<RVec4, 3> start = random_triple(gen);
        CoefficientSet start_coeffs = coefficients_of_triple(start);
        std::vector<double> x0;
        x0.reserve(12);
        for (const auto& vec : {start_coeffs.a, start_coeffs.b, start_coeffs.c})
            for (double v : vec) x0.push_back(v);

        try {
            auto stage1 = detail::nelder_mead(objective, x0, 0.2, 1e-12, 6000);
            auto stage2 = detail::nelder_mead(objective, stage1.x, 0.02, 1e-13, 6000);

            // recover the feasible representative from the chart point
            std::array<RVec4, 3> phi{};
            const Tables& t = tables();
            for (size_t v = 0; v < 3; ++v) {
                std::array<double, 4> raw{};
                for (size_t i = 0; i < 4; ++i) raw[i] = stage2.x[4 * v + i];
                phi[v] = combine(t.bases[v], raw);
                double pn = norm(phi[v]);
                if (pn < 1e-8) throw std::invalid_argument("degenerate chart point");
                for (double& e : phi[v]) e /= pn;
            }
            std::array<RVec4, 3> polished = polish_triple(phi);
            CoefficientSet coeffs = coefficients_of_triple(polished);
            coeffs.a = canonical_coeff_sign(coeffs.a);
            coeffs.b = canonical_coeff_sign(coeffs.b);
            coeffs.c = canonical_coeff_sign(coeffs.c);
            double value = success_combined(coeffs, choice);
            best.restart_values.push_back(value);
            if (value > best.p_star) {
                best.p_star = value;
                best.coeffs = coeffs;
            }
        } catch (const std::exception&) {
            ++best.failed_restarts;
            best.restart_values.push_back(std::numeric_limits<double>::quiet_NaN());
        }
    }
    return best;
}

std::array<Ket, 4> frame_from_angles(const std::array<double, 6>& angles) {
    double m[4][4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    const std::array<std::pair<int, int>, 6> planes = {
        {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
    for (size_t k = 0; k < 6; ++k) {
        auto [p, q] = planes[k];
        double c = std::cos(angles[k]);
        double s = std::sin(angles[k]);
        for (int col = 0; col < 4; ++col) {
            double mp = m[p][col];
            double mq = m[q][col];
            m[p][col] = c * mp - s * mq;
            m[q][col] = s * mp + c * mq;
        }
    }
    std::array<Ket, 4> frame = {Ket(4), Ket(4), Ket(4), Ket(4)};
    for (int col = 0; col < 4; ++col) {
        RVec4 column = {m[0][col], m[1][col], m[2][col], m[3][col]};
        frame[static_cast<size_t>(col)] = ket_of(canonical_sign(column));
    }
    return frame;
}

FrameOptimum optimize_full_frame(int restarts, std::uint64_t seed) {
    if (restarts < 1) throw std::invalid_argument("optimize_full_frame: restarts must be >= 1");

    auto objective = [](const std::vector<double>& x) {
        std::array<double, 6> angles{};
        std::copy_n(x.begin(), 6, angles.begin());
        auto frame = frame_from_angles(angles);
        return -evaluate_frame_best_guess(frame).value;
    };

    FrameOptimum best;
    best.p_star = -1.0;
    for (int r = 0; r < restarts; ++r) {
        rng::SplitMix64 gen(rng::derive_stream(seed, static_cast<std::uint64_t>(r)));
        std::vector<double> x0(6);
        for (double& a : x0) a = kTwoPi * gen.uniform();
        try {
            auto stage1 = detail::nelder_mead(objective, x0, 0.5, 1e-13, 6000);
            auto stage2 = detail::nelder_mead(objective, stage1.x, 0.05, 1e-14, 6000);
            std::array<double, 6> angles{};
            std::copy_n(stage2.x.begin(), 6, angles.begin());
            auto frame = frame_from_angles(angles);
            BestGuessResult res = evaluate_frame_best_guess(frame);
            if (res.value > best.p_star) {
                best.p_star = res.value;
                best.basis = frame;
                best.guesses = res.guesses;
            }
        } catch (const std::exception&) {
            ++best.failed_restarts;
        }
    }
    return best;
}

}  // namespace qcard::bob_collective
