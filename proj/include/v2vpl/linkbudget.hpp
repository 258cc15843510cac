#pragma once

#include <optional>
#include <string_view>

#include "v2vpl/types.hpp"

namespace v2vpl {

struct LinkBudget {
    double p_tx_dbm = 0.0;
    double g_tx_dbi = 0.0;
    double g_rx_dbi = 0.0;
    double cable_loss_db = 0.0;       // total, both ends
    double detection_threshold_dbm = 0.0;
    double rbw_hz = 10e3;             // informational
};

void validate(const LinkBudget& budget);

/// Maximum measurable path loss, i.e. the censoring level:
/// p_tx + g_tx + g_rx - cable_loss - detection_threshold.
double max_measurable_pl(const LinkBudget& budget);

/// Distance at which the mean path loss reaches max_pl_db. No shadowing
/// margin is applied; callers add mean + k*sigma themselves if they want
/// one. Throws std::domain_error for a non-positive slope.
double range_for_model(const PathLossModel& model, double max_pl_db);

/// Thermal noise floor at 290 K: -174 + 10*log10(rbw) + noise_figure.
double noise_floor(double rbw_hz, double noise_figure_db);

/// Campaign budgets: 7 dBm transmit power, 18.9 dB total cable loss,
/// -122.4 dBm detection threshold, 5 dBi omni / 19.5 dBi horn gains.
LinkBudget paper_omni_budget();
LinkBudget paper_directional_budget();

/// Preset by name: "paper-omni" or "paper-directional".
std::optional<LinkBudget> budget_preset(std::string_view name);

} // namespace v2vpl
