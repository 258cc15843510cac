#include "v2vpl/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace v2vpl {

namespace {
constexpr double kLogSqrtTwoPi = 0.9189385332046727418;  // log(sqrt(2*pi))
constexpr double kInvSqrtTwo = 0.7071067811865475244;
}

double log_normal_upper_tail(double z) {
    if (z < 30.0) {
        return std::log(0.5 * std::erfc(z * kInvSqrtTwo));
    }
    // Q(z) = phi(z)/z * (1 - 1/z^2 + 3/z^4 - 15/z^6 + ...)
    const double z2 = z * z;
    double series = 1.0;
    double term = 1.0;
    for (int k = 1; k <= 5; ++k) {
        term *= -(2.0 * k - 1.0) / z2;
        series += term;
    }
    return -0.5 * z2 - kLogSqrtTwoPi - std::log(z) + std::log(series);
}

double draw_normal(Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    return normal(rng);
}

SimplexResult minimize_simplex(const std::function<double(const Eigen::VectorXd&)>& objective,
                               const Eigen::VectorXd& start, const Eigen::VectorXd& step,
                               const SimplexOptions& options) {
    const Eigen::Index n = start.size();
    std::vector<Eigen::VectorXd> vertex(static_cast<std::size_t>(n) + 1, start);
    for (Eigen::Index i = 0; i < n; ++i) vertex[static_cast<std::size_t>(i) + 1](i) += step(i);

    std::vector<double> value(vertex.size());
    for (std::size_t i = 0; i < vertex.size(); ++i) value[i] = objective(vertex[i]);

    std::vector<std::size_t> order(vertex.size());
    auto sort_vertices = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
    };

    auto spread_below_tolerance = [&] {
        for (Eigen::Index j = 0; j < n; ++j) {
            double lo = vertex[0](j), hi = vertex[0](j);
            for (std::size_t i = 1; i < vertex.size(); ++i) {
                lo = std::min(lo, vertex[i](j));
                hi = std::max(hi, vertex[i](j));
            }
            if (hi - lo >= options.tolerance) return false;
        }
        return true;
    };

    int iter = 0;
    bool converged = false;
    while (iter < options.max_iterations) {
        sort_vertices();
        if (spread_below_tolerance()) {
            converged = true;
            break;
        }
        ++iter;

        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[order.size() - 2];

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (std::size_t i = 0; i < order.size(); ++i)
            if (order[i] != worst) centroid += vertex[order[i]];
        centroid /= static_cast<double>(n);

        const Eigen::VectorXd reflected = centroid + (centroid - vertex[worst]);
        const double f_reflected = objective(reflected);

        if (f_reflected < value[best]) {
            const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - vertex[worst]);
            const double f_expanded = objective(expanded);
            if (f_expanded < f_reflected) {
                vertex[worst] = expanded;
                value[worst] = f_expanded;
            } else {
                vertex[worst] = reflected;
                value[worst] = f_reflected;
            }
            continue;
        }
        if (f_reflected < value[second_worst]) {
            vertex[worst] = reflected;
            value[worst] = f_reflected;
            continue;
        }

        bool shrink = false;
        if (f_reflected < value[worst]) {
            const Eigen::VectorXd outside = centroid + 0.5 * (centroid - vertex[worst]);
            const double f_outside = objective(outside);
            if (f_outside <= f_reflected) {
                vertex[worst] = outside;
                value[worst] = f_outside;
            } else {
                shrink = true;
            }
        } else {
            const Eigen::VectorXd inside = centroid - 0.5 * (centroid - vertex[worst]);
            const double f_inside = objective(inside);
            if (f_inside < value[worst]) {
                vertex[worst] = inside;
                value[worst] = f_inside;
            } else {
                shrink = true;
            }
        }

        if (shrink) {
            for (std::size_t i = 0; i < vertex.size(); ++i) {
                if (i == best) continue;
                vertex[i] = vertex[best] + 0.5 * (vertex[i] - vertex[best]);
                value[i] = objective(vertex[i]);
            }
        }
    }

    sort_vertices();
    return {vertex[order.front()], value[order.front()], converged, iter};
}

} // namespace v2vpl
