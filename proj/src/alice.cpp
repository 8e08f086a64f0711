#include "qcard/alice.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qcard/game.hpp"

namespace qcard::alice {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kThird = kPi / 3.0;
constexpr double kRangeSlack = 1e-12;

double binary_entropy(double p) {
    double out = 0.0;
    if (p > 0.0) out -= p * std::log2(p);
    if (p < 1.0) out -= (1.0 - p) * std::log2(1.0 - p);
    return out;
}

// golden-section minimum of f on [lo, hi]
template <typename F>
double golden_min(F&& f, double lo, double hi, double xtol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > xtol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

struct Domain {
    double lo;
    double hi;
    bool point;  // single-angle domain
};

Domain strategy_domain(Strategy s) {
    switch (s) {
        case Strategy::guess3_on_down: return {0.0, kPi / 6.0, false};   // (0, pi/6]
        case Strategy::guess2_on_down: return {-kPi / 6.0, 0.0, false};  // [-pi/6, 0)
        case Strategy::random23_on_down: return {0.0, 0.0, true};
    }
    throw std::invalid_argument("unknown strategy");
}

}  // namespace

AliceAngle::AliceAngle(double radians) : value(radians) {
    if (!(std::abs(radians) <= kPi / 6.0 + kRangeSlack))
        throw std::invalid_argument("AliceAngle: angle outside [-pi/6, pi/6]");
}

Strategy strategy_from_index(int index) {
    switch (index) {
        case 1: return Strategy::guess3_on_down;
        case 2: return Strategy::guess2_on_down;
        case 3: return Strategy::random23_on_down;
    }
    throw std::invalid_argument("strategy index must be 1, 2 or 3");
}

int strategy_index(Strategy s) { return static_cast<int>(s); }

bool in_domain(Strategy s, AliceAngle alpha) {
    switch (s) {
        case Strategy::guess3_on_down: return alpha.value > 0.0;
        case Strategy::guess2_on_down: return alpha.value < 0.0;
        case Strategy::random23_on_down: return alpha.value == 0.0;
    }
    return false;
}

std::pair<double, double> outcome_probs(AliceAngle alpha) {
    linalg::Ket direction{{std::cos(alpha.value), std::sin(alpha.value)}};
    double p_up = std::real(linalg::expectation(game::rho_A(), direction));
    return {p_up, 1.0 - p_up};
}

std::array<double, 3> posterior(AliceAngle alpha, Outcome outcome) {
    const double a = alpha.value;
    auto sq = [](double x) { return x * x; };
    if (outcome == Outcome::up)
        return {2.0 / 3.0 * sq(std::cos(a)), 2.0 / 3.0 * sq(std::cos(a - kThird)),
                2.0 / 3.0 * sq(std::cos(a + kThird))};
    return {2.0 / 3.0 * sq(std::sin(a)), 2.0 / 3.0 * sq(std::sin(a - kThird)),
            2.0 / 3.0 * sq(std::sin(a + kThird))};
}

std::array<std::array<double, 3>, 2> guess_distribution(Strategy s) {
    const std::array<double, 3> up = {1.0, 0.0, 0.0};
    switch (s) {
        case Strategy::guess3_on_down: return {up, {0.0, 0.0, 1.0}};
        case Strategy::guess2_on_down: return {up, {0.0, 1.0, 0.0}};
        case Strategy::random23_on_down: return {up, {0.0, 0.5, 0.5}};
    }
    throw std::invalid_argument("unknown strategy");
}

double success_probability(AliceAngle alpha, Strategy s) {
    const double a = alpha.value;
    auto sq = [](double x) { return x * x; };
    switch (s) {
        case Strategy::guess3_on_down:
            return (sq(std::cos(a)) + sq(std::sin(a + kThird))) / 3.0;
        case Strategy::guess2_on_down:
            return (sq(std::cos(a)) + sq(std::sin(a - kThird))) / 3.0;
        case Strategy::random23_on_down:
            return (sq(std::cos(a)) +
                    0.5 * (sq(std::sin(a + kThird)) + sq(std::sin(a - kThird)))) /
                   3.0;
    }
    throw std::invalid_argument("unknown strategy");
}

double shannon_entropy(AliceAngle alpha, Strategy s) {
    const auto guess = guess_distribution(s);
    double entropy = 0.0;
    for (Outcome r : {Outcome::up, Outcome::down}) {
        const auto post = posterior(alpha, r);
        double p_success = 0.0;
        for (int i = 0; i < 3; ++i) p_success += post[static_cast<size_t>(i)] *
                                                 guess[static_cast<size_t>(r)][static_cast<size_t>(i)];
        entropy += 0.5 * binary_entropy(p_success);
    }
    return entropy;
}

Optimum optimize_alice(Strategy s, double grid_step, double refine_tol) {
    if (grid_step <= 0.0 || refine_tol <= 0.0)
        throw std::invalid_argument("optimize_alice: grid_step and refine_tol must be positive");

    const Domain dom = strategy_domain(s);
    if (dom.point) {
        double p = success_probability(AliceAngle{dom.lo}, s);
        return {dom.lo, p};
    }

    // grid over the half-open domain; endpoints 0 are excluded
    std::vector<double> grid;
    for (double a = dom.lo == 0.0 ? grid_step : dom.lo;
         a <= dom.hi - (dom.hi == 0.0 ? grid_step : 0.0) + 1e-15; a += grid_step)
        grid.push_back(std::min(a, dom.hi == 0.0 ? -grid_step : dom.hi));
    if (grid.empty()) throw std::invalid_argument("optimize_alice: empty grid domain");

    double best_a = grid.front();
    double best_p = -1.0;
    for (double a : grid) {
        double p = success_probability(AliceAngle{a}, s);
        if (p > best_p) {
            best_p = p;
            best_a = a;
        }
    }

    double lo = std::max(dom.lo == 0.0 ? 1e-12 : dom.lo, best_a - grid_step);
    double hi = std::min(dom.hi == 0.0 ? -1e-12 : dom.hi, best_a + grid_step);
    auto neg = [&](double a) { return -success_probability(AliceAngle{a}, s); };
    double a_star = golden_min(neg, lo, hi, refine_tol);
    double p_star = success_probability(AliceAngle{a_star}, s);
    if (p_star < best_p) {  // refinement never loses to the grid
        a_star = best_a;
        p_star = best_p;
    }
    return {a_star, p_star};
}

EntropyMinimum entropy_argmin(Strategy s, double grid_step) {
    if (grid_step <= 0.0)
        throw std::invalid_argument("entropy_argmin: grid_step must be positive");

    const Domain dom = strategy_domain(s);
    if (dom.point) return {dom.lo, shannon_entropy(AliceAngle{dom.lo}, s)};

    double best_a = 0.0;
    double best_s = std::numeric_limits<double>::infinity();
    bool any = false;
    for (double a = dom.lo == 0.0 ? grid_step : dom.lo;
         a <= dom.hi - (dom.hi == 0.0 ? grid_step : 0.0) + 1e-15; a += grid_step) {
        double clipped = std::min(a, dom.hi == 0.0 ? -grid_step : dom.hi);
        double value = shannon_entropy(AliceAngle{clipped}, s);
        if (value < best_s) {
            best_s = value;
            best_a = clipped;
        }
        any = true;
    }
    if (!any) throw std::invalid_argument("entropy_argmin: empty grid domain");
    return {best_a, best_s};
}

}  // namespace qcard::alice
