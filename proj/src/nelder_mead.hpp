// Minimal Nelder-Mead simplex minimizer. Internal to the library; used by
// the measurement-basis optimizers, which have 6- and 12-dimensional smooth
// (piecewise-smooth for the best-guess objective) landscapes.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace qcard::detail {

struct NelderMeadResult {
    std::vector<double> x;
    double fmin = 0.0;
    int evals = 0;
};

inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    std::vector<double> x0, double step, double ftol,
                                    int max_evals) {
    const size_t n = x0.size();
    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

    std::vector<std::vector<double>> simplex(n + 1, x0);
    for (size_t i = 0; i < n; ++i) simplex[i + 1][i] += step;

    std::vector<double> fx(n + 1);
    int evals = 0;
    for (size_t i = 0; i <= n; ++i) fx[i] = (++evals, f(simplex[i]));

    std::vector<size_t> order(n + 1);
    while (evals < max_evals) {
        for (size_t i = 0; i <= n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return fx[a] < fx[b]; });

        if (std::abs(fx[order[n]] - fx[order[0]]) < ftol) break;

        const size_t worst = order[n];
        std::vector<double> centroid(n, 0.0);
        for (size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k] / static_cast<double>(n);
        }

        auto blend = [&](double t) {
            std::vector<double> out(n);
            for (size_t k = 0; k < n; ++k)
                out[k] = centroid[k] + t * (centroid[k] - simplex[worst][k]);
            return out;
        };

        std::vector<double> reflected = blend(alpha);
        double f_reflected = (++evals, f(reflected));

        if (f_reflected < fx[order[0]]) {
            std::vector<double> expanded = blend(gamma);
            double f_expanded = (++evals, f(expanded));
            if (f_expanded < f_reflected) {
                simplex[worst] = std::move(expanded);
                fx[worst] = f_expanded;
            } else {
                simplex[worst] = std::move(reflected);
                fx[worst] = f_reflected;
            }
            continue;
        }
        if (f_reflected < fx[order[n - 1]]) {
            simplex[worst] = std::move(reflected);
            fx[worst] = f_reflected;
            continue;
        }

        bool outside = f_reflected < fx[worst];
        std::vector<double> contracted = blend(outside ? rho : -rho);
        double f_contracted = (++evals, f(contracted));
        if (f_contracted < std::min(f_reflected, fx[worst])) {
            simplex[worst] = std::move(contracted);
            fx[worst] = f_contracted;
            continue;
        }

        // shrink toward the best vertex
        const std::vector<double>& best = simplex[order[0]];
        for (size_t i = 0; i <= n; ++i) {
            if (i == order[0]) continue;
            for (size_t k = 0; k < n; ++k)
                simplex[i][k] = best[k] + sigma * (simplex[i][k] - best[k]);
            fx[i] = (++evals, f(simplex[i]));
        }
    }

    size_t best = 0;
    for (size_t i = 1; i <= n; ++i)
        if (fx[i] < fx[best]) best = i;
    return {simplex[best], fx[best], evals};
}

}  // namespace qcard::detail
