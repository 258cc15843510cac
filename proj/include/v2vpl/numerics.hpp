#pragma once

#include <functional>

#include <Eigen/Core>

#include "v2vpl/types.hpp"

namespace v2vpl {

/// log of the standard normal upper-tail probability log Q(z). Uses erfc up
/// to z = 30 and the tail asymptotic series beyond, so it stays finite and
/// accurate where 1 - Phi(z) would underflow.
double log_normal_upper_tail(double z);

/// One standard normal draw.
double draw_normal(Rng& rng);

struct SimplexOptions {
    int max_iterations = 10000;
    double tolerance = 1e-6;  // per-coordinate simplex spread
};

struct SimplexResult {
    Eigen::VectorXd x;
    double value = 0.0;
    bool converged = false;
    int iterations = 0;
};

/// Nelder-Mead minimization. The simplex starts at `start` with one vertex
/// displaced per coordinate by `step`; convergence is declared when the
/// vertex spread is below tolerance in every coordinate.
SimplexResult minimize_simplex(const std::function<double(const Eigen::VectorXd&)>& objective,
                               const Eigen::VectorXd& start, const Eigen::VectorXd& step,
                               const SimplexOptions& options = {});

} // namespace v2vpl
