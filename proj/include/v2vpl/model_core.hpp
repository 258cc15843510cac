#pragma once

#include <optional>
#include <span>

#include "v2vpl/types.hpp"

namespace v2vpl {

/// A path-loss figure plus a flag telling whether the queried distance lies
/// inside the model's validity range. Models without a validity range are
/// valid everywhere. Out-of-range evaluation is a success with the flag
/// cleared, never a silent value and never an error.
struct PathLossValue {
    double loss_db = 0.0;
    bool within_validity = true;
};

bool within_validity(const PathLossModel& model, double distance_m);

/// Mean path loss at a distance: a_slope*log10(d/ref) + b_bias.
/// Throws std::domain_error for d <= 0.
PathLossValue evaluate_mean(const PathLossModel& model, double distance_m);

/// Mean path loss plus one independent shadowing draw from N(0, c_sigma).
PathLossValue sample_path_loss(const PathLossModel& model, double distance_m, Rng& rng);

/// TR 37.885 highway LoS/NLoS path loss converted to the 10 m AB form at
/// carrier frequency fc (GHz). Throws std::domain_error for fc <= 0.
PathLossModel tr37885_model(double fc_ghz, Visibility visibility);

/// Moves the reference distance, shifting b_bias so the mean path loss is
/// unchanged at every distance. Throws std::domain_error for new_ref <= 0.
PathLossModel rebase_reference(const PathLossModel& model, double new_ref_m);

/// Shifts b_bias by the 20*log10(f_to/f_from) frequency term. The result's
/// source label records the extrapolation. Throws std::domain_error for a
/// non-positive frequency.
PathLossModel extrapolate_frequency(const PathLossModel& model, double f_from_ghz, double f_to_ghz);

/// One registry cell: a key plus the published model, or nullopt where no
/// reliable fit exists.
struct RegistryEntry {
    ModelKey key;
    std::optional<PathLossModel> model;
};

/// Canonical registry contents in publication order: the full main-table
/// grid, the under-chassis LOS models, then the blocking-car models.
std::span<const RegistryEntry> registry_entries();

/// Exact published triple for a key, or nullopt where the source shows no
/// model. Keys with a blocking class match on (antenna, blocking) alone;
/// such measurements were taken on the highway regardless of surroundings.
std::optional<PathLossModel> registry_lookup(const ModelKey& key);

/// Keys of every unavailable canonical cell, in registry order.
std::vector<ModelKey> unavailable_keys();

} // namespace v2vpl
