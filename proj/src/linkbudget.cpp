#include "v2vpl/linkbudget.hpp"

#include <cmath>

namespace v2vpl {

void validate(const LinkBudget& budget) {
    if (!(budget.rbw_hz > 0.0)) throw std::invalid_argument("link budget: rbw_hz must be > 0");
    if (!(budget.cable_loss_db >= 0.0))
        throw std::invalid_argument("link budget: cable_loss_db must be >= 0");
}

double max_measurable_pl(const LinkBudget& budget) {
    return budget.p_tx_dbm + budget.g_tx_dbi + budget.g_rx_dbi - budget.cable_loss_db -
           budget.detection_threshold_dbm;
}

double range_for_model(const PathLossModel& model, double max_pl_db) {
    if (!(model.a_slope > 0.0))
        throw std::domain_error("range_for_model: non-positive slope is not invertible");
    if (!std::isfinite(max_pl_db))
        throw std::domain_error("range_for_model: max path loss must be finite");
    return model.ref_distance_m * std::pow(10.0, (max_pl_db - model.b_bias) / model.a_slope);
}

double noise_floor(double rbw_hz, double noise_figure_db) {
    if (!(rbw_hz > 0.0)) throw std::domain_error("noise_floor: rbw must be > 0");
    return -174.0 + 10.0 * std::log10(rbw_hz) + noise_figure_db;
}

// The -122.4 dBm detection threshold is campaign calibration backed out of
// the published 120.5 / 149.5 dB censoring levels; both budgets share it.
LinkBudget paper_omni_budget() {
    return {7.0, 5.0, 5.0, 18.9, -122.4, 10e3};
}

LinkBudget paper_directional_budget() {
    return {7.0, 19.5, 19.5, 18.9, -122.4, 10e3};
}

std::optional<LinkBudget> budget_preset(std::string_view name) {
    if (name == "paper-omni") return paper_omni_budget();
    if (name == "paper-directional") return paper_directional_budget();
    return std::nullopt;
}

} // namespace v2vpl
