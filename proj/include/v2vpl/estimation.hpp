#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "v2vpl/types.hpp"

namespace v2vpl {

/// One (distance, path loss) observation. A censored sample records only
/// that the true loss is at or above the censoring level; its path_loss_db
/// must equal that level.
struct Sample {
    double distance_m = 0.0;
    double path_loss_db = 0.0;
    bool censored = false;
};

struct FitResult {
    double a = 0.0;             // dB per decade
    double b = 0.0;             // dB at 10 m
    double c = 0.0;             // shadowing std, dB
    double log_likelihood = 0.0;
    int n_observed = 0;
    int n_censored = 0;
    bool converged = false;
    int iterations = 0;
};

struct OlsFit {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

/// Censored Gaussian log-likelihood of the AB model at the 10 m reference.
/// Observed samples contribute the normal log-density of their residual;
/// censored samples contribute the log upper-tail mass beyond the censoring
/// level. Throws std::domain_error for c <= 0 or an empty sample set, and
/// std::invalid_argument for censored samples away from the censoring level.
double log_likelihood(double a, double b, double c, std::span<const Sample> samples,
                      double censor_level_db);

/// Ordinary least squares of path loss on log10(d/10) over the observed
/// samples (censored ones are ignored). c is the residual standard deviation
/// with n-2 degrees of freedom, defined as 0 for n = 2. Throws
/// std::invalid_argument with fewer than two observed samples or fewer than
/// two distinct distances.
OlsFit fit_ols(std::span<const Sample> samples);

/// Maximum-likelihood fit of {a, b, c} with right-censoring at
/// censor_level_db. The likelihood is maximized over (a, b, log c) by a
/// derivative-free simplex search initialized from fit_ols unless an
/// explicit start is given; c is floored at 1e-3 dB. Samples are ordered
/// canonically before evaluation, so the result is invariant under
/// permutation of the input. Observed samples above the censoring level are
/// rejected as inconsistent.
FitResult fit_ml(std::span<const Sample> samples, double censor_level_db,
                 std::optional<std::array<double, 3>> init = std::nullopt);

} // namespace v2vpl
