#include "v2vpl/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "v2vpl/numerics.hpp"

namespace v2vpl {

namespace {

constexpr double kLogSqrtTwoPi = 0.9189385332046727418;
constexpr double kSigmaFloorDb = 1e-3;
constexpr double kCensorMatchTolerance = 1e-6;

double model_mean(double a, double b, double distance_m) {
    return a * std::log10(distance_m / 10.0) + b;
}

std::size_t count_distinct_distances(std::span<const double> sorted) {
    std::size_t distinct = sorted.empty() ? 0 : 1;
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] != sorted[i - 1]) ++distinct;
    return distinct;
}

} // namespace

double log_likelihood(double a, double b, double c, std::span<const Sample> samples,
                      double censor_level_db) {
    if (!(c > 0.0)) throw std::domain_error("log_likelihood: c must be > 0");
    if (samples.empty()) throw std::domain_error("log_likelihood: empty sample set");

    double ll = 0.0;
    for (const Sample& s : samples) {
        if (!(s.distance_m > 0.0))
            throw std::invalid_argument("log_likelihood: sample distance must be > 0");
        const double mean = model_mean(a, b, s.distance_m);
        if (s.censored) {
            if (std::abs(s.path_loss_db - censor_level_db) > kCensorMatchTolerance)
                throw std::invalid_argument(
                    "log_likelihood: censored sample must carry the censoring level");
            ll += log_normal_upper_tail((censor_level_db - mean) / c);
        } else {
            const double residual = s.path_loss_db - mean;
            ll += -std::log(c) - kLogSqrtTwoPi - residual * residual / (2.0 * c * c);
        }
    }
    return ll;
}

OlsFit fit_ols(std::span<const Sample> samples) {
    std::vector<double> d, y;
    for (const Sample& s : samples) {
        if (s.censored) continue;
        if (!(s.distance_m > 0.0))
            throw std::invalid_argument("fit_ols: sample distance must be > 0");
        d.push_back(s.distance_m);
        y.push_back(s.path_loss_db);
    }
    const std::size_t n = d.size();
    if (n < 2) throw std::invalid_argument("fit_ols: need at least 2 observed samples");

    std::vector<double> sorted = d;
    std::sort(sorted.begin(), sorted.end());
    if (count_distinct_distances(sorted) < 2)
        throw std::invalid_argument("fit_ols: degenerate design, all distances equal");

    Eigen::MatrixX2d design(static_cast<Eigen::Index>(n), 2);
    Eigen::VectorXd loss(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        design(static_cast<Eigen::Index>(i), 0) = std::log10(d[i] / 10.0);
        design(static_cast<Eigen::Index>(i), 1) = 1.0;
        loss(static_cast<Eigen::Index>(i)) = y[i];
    }

    const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(loss);
    double c = 0.0;
    if (n > 2) {
        const double ssr = (loss - design * coef).squaredNorm();
        c = std::sqrt(ssr / static_cast<double>(n - 2));
    }
    return {coef(0), coef(1), c};
}

FitResult fit_ml(std::span<const Sample> samples, double censor_level_db,
                 std::optional<std::array<double, 3>> init) {
    if (!std::isfinite(censor_level_db))
        throw std::invalid_argument("fit_ml: censor level must be finite");

    // Canonical ordering makes the fit exactly permutation-invariant.
    std::vector<Sample> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end(), [](const Sample& x, const Sample& y) {
        return std::tie(x.distance_m, x.path_loss_db, x.censored) <
               std::tie(y.distance_m, y.path_loss_db, y.censored);
    });

    std::vector<double> observed_distances;
    int n_observed = 0, n_censored = 0;
    for (const Sample& s : sorted) {
        if (!(s.distance_m > 0.0))
            throw std::invalid_argument("fit_ml: sample distance must be > 0");
        if (s.censored) {
            if (std::abs(s.path_loss_db - censor_level_db) > kCensorMatchTolerance)
                throw std::invalid_argument(
                    "fit_ml: censored sample must carry the censoring level");
            ++n_censored;
        } else {
            if (s.path_loss_db > censor_level_db + kCensorMatchTolerance)
                throw std::invalid_argument(
                    "fit_ml: observed sample above the censoring level is inconsistent");
            observed_distances.push_back(s.distance_m);
            ++n_observed;
        }
    }
    if (n_observed < 3) throw std::invalid_argument("fit_ml: need at least 3 observed samples");
    std::sort(observed_distances.begin(), observed_distances.end());
    if (count_distinct_distances(observed_distances) < 2)
        throw std::invalid_argument("fit_ml: observed samples must span 2 distinct distances");

    double a0, b0, c0;
    if (init) {
        a0 = (*init)[0];
        b0 = (*init)[1];
        c0 = std::max((*init)[2], kSigmaFloorDb);
    } else {
        const OlsFit ols = fit_ols(sorted);
        a0 = ols.a;
        b0 = ols.b;
        c0 = std::max(ols.c, kSigmaFloorDb);
    }

    const auto objective = [&](const Eigen::VectorXd& theta) {
        const double c = std::max(std::exp(theta(2)), kSigmaFloorDb);
        const double ll = log_likelihood(theta(0), theta(1), c, sorted, censor_level_db);
        return std::isfinite(ll) ? -ll : 1e300;
    };

    Eigen::Vector3d start(a0, b0, std::log(c0));
    Eigen::Vector3d step(1.0, 1.0, 0.5);
    // tighter than the 1e-6 convergence contract so parameter identities
    // (shift, rescale) hold to 1e-6 across independent fits
    SimplexOptions options;
    options.tolerance = 1e-8;
    const SimplexResult opt = minimize_simplex(objective, start, step, options);

    FitResult fit;
    fit.a = opt.x(0);
    fit.b = opt.x(1);
    fit.c = std::max(std::exp(opt.x(2)), kSigmaFloorDb);
    fit.log_likelihood = -opt.value;
    fit.n_observed = n_observed;
    fit.n_censored = n_censored;
    fit.converged = opt.converged;
    fit.iterations = opt.iterations;
    return fit;
}

} // namespace v2vpl
