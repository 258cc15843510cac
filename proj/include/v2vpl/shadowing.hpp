#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>

#include "v2vpl/types.hpp"

namespace v2vpl {

/// Temporally correlated log-normal shadowing generator. The Gudmundson
/// exponential autocorrelation is realized as a first-order autoregression
/// with rho = exp(-dt/t_d), so the lag-t_d autocorrelation is exactly 1/e
/// and the stationary marginal is N(0, sigma).
class ShadowingProcess {
public:
    /// Draws the initial state from N(0, sigma). Throws std::invalid_argument
    /// unless sigma >= 0, t_d > 0 and dt > 0.
    ShadowingProcess(double sigma_db, double decorrelation_time_s, double step_interval_s, Rng& rng);

    /// Advances one step interval and returns the new shadowing value (dB).
    double step(Rng& rng);

    double state_db() const { return state_; }
    double rho() const { return rho_; }
    double sigma_db() const { return sigma_; }
    double decorrelation_time_s() const { return t_d_; }
    double step_interval_s() const { return dt_; }

private:
    double sigma_;
    double t_d_;
    double dt_;
    double rho_;
    double innovation_scale_;
    double state_;
};

/// Thrown when a series has zero variance and no autocorrelation exists.
class UndefinedEstimateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when the normalized autocorrelation never falls below 1/e within
/// the computed lags.
class NoCrossingError : public std::runtime_error {
public:
    NoCrossingError(std::string message, std::size_t largest_lag, double last_autocorrelation)
        : std::runtime_error(std::move(message)),
          largest_lag(largest_lag),
          last_autocorrelation(last_autocorrelation) {}

    std::size_t largest_lag;
    double last_autocorrelation;
};

struct DecorrelationEstimate {
    double t_d_s = 0.0;       // crossing_lag * dt
    double crossing_lag = 0.0; // fractional lag where autocorrelation first hits 1/e
    std::size_t n = 0;         // series length
};

/// Decorrelation time of a series: the series is mean-removed, the biased
/// normalized autocovariance r(k) is computed lag by lag, and the first
/// crossing below 1/e is located by linear interpolation between the
/// bracketing integer lags. max_lag = 0 picks min(n-1, 5000).
/// Requires n >= 10 and dt > 0.
DecorrelationEstimate estimate_decorrelation_time(std::span<const double> series_db, double dt_s,
                                                  std::size_t max_lag = 0);

/// Speed-class coordinates of a published decorrelation time. Speeds are
/// quantized: v_rx in {0, 10, 20} m/s, v_rel in {0, 2, 4} m/s, rooftop or
/// bumper mounts only.
struct DecorrelationKey {
    Mounting mounting{};
    double v_rx_mps = 0.0;
    double v_rel_mps = 0.0;

    friend auto operator<=>(const DecorrelationKey&, const DecorrelationKey&) = default;
};

struct DecorrelationEntry {
    DecorrelationKey key;
    std::optional<double> t_d_s;
};

std::span<const DecorrelationEntry> decorrelation_entries();

/// Published decorrelation time in seconds, or nullopt where the source
/// shows none. Off-grid keys throw std::domain_error; there is no
/// interpolation between speed classes.
std::optional<double> decorrelation_time_lookup(const DecorrelationKey& key);

} // namespace v2vpl
