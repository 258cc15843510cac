#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "v2vpl/estimation.hpp"
#include "v2vpl/ingestion.hpp"
#include "v2vpl/linkbudget.hpp"
#include "v2vpl/model_core.hpp"
#include "v2vpl/shadowing.hpp"

namespace v2vpl {

using ordered_json = nlohmann::ordered_json;

/// Parse failure with the offending file and 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string path, std::size_t line, const std::string& message);

    std::string path;
    std::size_t line;
};

/// Shortest unambiguous decimal form (%.12g), shared by every CSV writer so
/// outputs are byte-stable.
std::string format_compact(double value);

/// Writes via a temp file in the same directory plus rename.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

// --- models and registry ---------------------------------------------------

ordered_json model_to_json(const PathLossModel& model);
PathLossModel model_from_json(const nlohmann::json& j);

ordered_json key_to_json(const ModelKey& key);
ModelKey key_from_json(const nlohmann::json& j);

ordered_json registry_entry_to_json(const RegistryEntry& entry);
RegistryEntry registry_entry_from_json(const nlohmann::json& j);

/// Canonical JSON document for a set of registry entries: an array of
/// {key, model} objects with null for unavailable cells.
std::string registry_to_json_string(std::span<const RegistryEntry> entries);
std::vector<RegistryEntry> registry_from_json_string(const std::string& text,
                                                     const std::string& path_for_errors = "<string>");

/// Canonical CSV table of registry entries (golden-data format).
std::string registry_to_csv(std::span<const RegistryEntry> entries);

/// Canonical CSV table of the decorrelation-time registry.
std::string decorrelation_to_csv(std::span<const DecorrelationEntry> entries);

/// Loads a model from a JSON file holding either a bare model object or a
/// {key, model} registry entry.
PathLossModel load_model_file(const std::string& path);

// --- link budgets ------------------------------------------------------------

ordered_json budget_to_json(const LinkBudget& budget);
LinkBudget budget_from_json(const nlohmann::json& j);

/// Resolves a preset name ("paper-omni", "paper-directional") or a JSON file
/// path to a budget.
LinkBudget load_budget(const std::string& name_or_path);

// --- samples and records -----------------------------------------------------

/// CSV `distance_m,path_loss_db,censored` with censored in {0,1}; a header
/// row is accepted and skipped.
std::vector<Sample> read_samples_csv(const std::string& path);
std::string samples_to_csv(std::span<const Sample> samples);

/// CSV, one span per row: `timestamp_s,duration_s,p1,...,pN`.
std::vector<RawSpan> read_spans_csv(const std::string& path);
std::string spans_to_csv(std::span<const RawSpan> spans);

/// JSONL {timestamp_s, gps_distance_m?, uwb_distance_m?}.
std::vector<PositionFix> read_fixes_jsonl(const std::string& path);
std::string fixes_to_jsonl(std::span<const PositionFix> fixes);

/// JSONL {timestamp_s, visibility, environment, mounting, antenna,
/// blocking?, v_rx_mps?, v_rel_mps?}: tag values in force from timestamp_s.
std::vector<TagEvent> read_tag_events_jsonl(const std::string& path);

/// JSONL with the record field names:
/// {timestamp_s, distance_m, distance_source, rx_power_dbm, censored,
///  visibility, environment, mounting, antenna, blocking, v_rx_mps, v_rel_mps}.
std::vector<MeasurementRecord> read_records_jsonl(const std::string& path);
std::string records_to_jsonl(std::span<const MeasurementRecord> records);

/// Single-column CSV of dB values; a header row is accepted and skipped.
std::vector<double> read_series_csv(const std::string& path);

ordered_json fit_result_to_json(const FitResult& fit);

} // namespace v2vpl
