#include "v2vpl/shadowing.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Core>

#include "v2vpl/numerics.hpp"

namespace v2vpl {

ShadowingProcess::ShadowingProcess(double sigma_db, double decorrelation_time_s,
                                   double step_interval_s, Rng& rng)
    : sigma_(sigma_db), t_d_(decorrelation_time_s), dt_(step_interval_s) {
    if (!(sigma_ >= 0.0)) throw std::invalid_argument("shadowing: sigma must be >= 0");
    if (!(t_d_ > 0.0)) throw std::invalid_argument("shadowing: decorrelation time must be > 0");
    if (!(dt_ > 0.0)) throw std::invalid_argument("shadowing: step interval must be > 0");
    rho_ = std::exp(-dt_ / t_d_);
    innovation_scale_ = std::sqrt(1.0 - rho_ * rho_) * sigma_;
    state_ = sigma_ > 0.0 ? sigma_ * draw_normal(rng) : 0.0;
}

double ShadowingProcess::step(Rng& rng) {
    if (sigma_ == 0.0) {
        state_ = 0.0;
        return state_;
    }
    state_ = rho_ * state_ + innovation_scale_ * draw_normal(rng);
    return state_;
}

DecorrelationEstimate estimate_decorrelation_time(std::span<const double> series_db, double dt_s,
                                                  std::size_t max_lag) {
    const std::size_t n = series_db.size();
    if (n < 10) throw std::invalid_argument("decorrelation estimate needs at least 10 samples");
    if (!(dt_s > 0.0)) throw std::invalid_argument("decorrelation estimate: dt must be > 0");
    if (max_lag == 0) max_lag = std::min<std::size_t>(n - 1, 5000);
    max_lag = std::min<std::size_t>(max_lag, n - 1);

    Eigen::Map<const Eigen::VectorXd> raw(series_db.data(), static_cast<Eigen::Index>(n));
    const Eigen::VectorXd x = raw.array() - raw.mean();

    const double r0 = x.squaredNorm() / static_cast<double>(n);
    if (r0 <= 0.0)
        throw UndefinedEstimateError("decorrelation estimate undefined for a constant series");

    const double threshold = std::exp(-1.0);
    double previous = 1.0;  // normalized r(0)
    for (std::size_t k = 1; k <= max_lag; ++k) {
        const Eigen::Index m = static_cast<Eigen::Index>(n - k);
        const double rk = x.head(m).dot(x.tail(m)) / static_cast<double>(n) / r0;
        if (rk < threshold) {
            const double fraction = (previous - threshold) / (previous - rk);
            const double crossing_lag = static_cast<double>(k - 1) + fraction;
            return {crossing_lag * dt_s, crossing_lag, n};
        }
        previous = rk;
    }
    throw NoCrossingError("autocorrelation never fell below 1/e within " +
                              std::to_string(max_lag) + " lags (last value " +
                              std::to_string(previous) + ")",
                          max_lag, previous);
}

namespace {

std::vector<DecorrelationEntry> build_decorrelation_table() {
    // Rows: v_rx 0/10/20 m/s; columns: v_rel 0/2/4 m/s.
    const std::optional<double> none = std::nullopt;
    std::vector<DecorrelationEntry> t;
    t.reserve(18);
    auto row = [&t](Mounting m, double v_rx, std::optional<double> c0, std::optional<double> c2,
                    std::optional<double> c4) {
        t.push_back({{m, v_rx, 0.0}, c0});
        t.push_back({{m, v_rx, 2.0}, c2});
        t.push_back({{m, v_rx, 4.0}, c4});
    };
    row(Mounting::Rooftop, 0.0, 14.57, none, 22.44);
    row(Mounting::Rooftop, 10.0, 1.09, 1.00, 4.91);
    row(Mounting::Rooftop, 20.0, 1.66, 2.64, 9.04);
    row(Mounting::Bumper, 0.0, 128.02, none, none);
    row(Mounting::Bumper, 10.0, 1.41, 2.21, 5.34);
    row(Mounting::Bumper, 20.0, 4.40, 4.37, 3.07);
    return t;
}

} // namespace

std::span<const DecorrelationEntry> decorrelation_entries() {
    static const std::vector<DecorrelationEntry> entries = build_decorrelation_table();
    return entries;
}

std::optional<double> decorrelation_time_lookup(const DecorrelationKey& key) {
    for (const DecorrelationEntry& e : decorrelation_entries())
        if (e.key == key) return e.t_d_s;
    throw std::domain_error("decorrelation time: key off the published speed grid (mounting "
                            "rooftop/bumper, v_rx in {0,10,20}, v_rel in {0,2,4})");
}

} // namespace v2vpl
