#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "v2vpl/estimation.hpp"
#include "v2vpl/linkbudget.hpp"
#include "v2vpl/types.hpp"

namespace v2vpl {

/// One spectrum-analyzer zero-span capture: consecutive power samples taken
/// over a short duration (nominally 551 samples over 55 ms).
struct RawSpan {
    double timestamp_s = 0.0;
    std::vector<double> powers_dbm;
    double duration_s = 0.055;
};

enum class DistanceSource { Gps, Uwb };

std::string_view to_string(DistanceSource s);
DistanceSource parse_distance_source(std::string_view s);

struct PositionFix {
    double timestamp_s = 0.0;
    std::optional<double> gps_distance_m;
    std::optional<double> uwb_distance_m;
};

struct TagSet {
    Visibility visibility{};
    Environment environment{};
    Mounting mounting{};
    Antenna antenna{};
    Blocking blocking = Blocking::None;

    friend auto operator<=>(const TagSet&, const TagSet&) = default;
};

/// One large-scale-fading sample after span averaging, with tags, speeds and
/// the fused TX-RX distance.
struct MeasurementRecord {
    double timestamp_s = 0.0;
    double distance_m = 0.0;
    DistanceSource distance_source = DistanceSource::Gps;
    double rx_power_dbm = 0.0;
    bool censored = false;
    TagSet tags;
    double v_rx_mps = 0.0;
    double v_rel_mps = 0.0;
};

/// Tag values in force from timestamp_s onward.
struct TagEvent {
    double timestamp_s = 0.0;
    TagSet tags;
    double v_rx_mps = 0.0;
    double v_rel_mps = 0.0;
};

/// dBm of the mean milliwatt power: 10*log10(mean(10^(p/10))). Averaging in
/// linear scale removes fast fading from the span. Throws std::domain_error
/// on an empty span.
double average_span(const RawSpan& span);

/// Link-budget inversion: path_loss = p_tx + g_tx + g_rx - cable_loss -
/// rx_power. Censored records map to exactly max_measurable_pl(budget).
Sample to_path_loss(const MeasurementRecord& record, const LinkBudget& budget);

struct FusedDistance {
    double distance_m = 0.0;
    DistanceSource source = DistanceSource::Gps;
};

/// UWB when present and within range, otherwise GPS. Throws
/// std::domain_error when neither source can provide a distance.
FusedDistance fuse_distance(const PositionFix& fix, double uwb_max_range_m);

/// Drops every record within +/-window_s of a timestamp where any tag
/// changes value (the change is stamped at the first record bearing the new
/// tags). Requires time-ordered input; output is a subsequence of the input.
std::vector<MeasurementRecord> filter_transitions(std::span<const MeasurementRecord> records,
                                                  double window_s);

struct LeeCheck {
    double wavelengths = 0.0;
    bool ok = false;
};

/// Distance covered during one span in carrier wavelengths, checked against
/// the configured averaging-window band (defaults [10.1, 81.4]).
LeeCheck lee_check(double speed_mps, double span_duration_s, double frequency_ghz,
                   double lower_wavelengths = 10.1, double upper_wavelengths = 81.4);

struct IngestOptions {
    double uwb_max_range_m = 100.0;
    double join_tolerance_s = 0.5;     // span-to-fix timestamp matching
    double transition_window_s = 2.0;  // tag-change discard window
    std::size_t expected_span_length = 551;
};

struct IngestResult {
    std::vector<MeasurementRecord> records;
    std::vector<std::string> warnings;
    std::size_t n_spans_in = 0;
    std::size_t n_unjoined = 0;               // no fix within tolerance
    std::size_t n_untagged = 0;               // no tag event at or before the span
    std::size_t n_censored = 0;
    std::size_t n_discarded_transitions = 0;
};

/// Full pipeline: average each span, censor against the budget's detection
/// threshold, join to the nearest position fix, fuse the distance, apply the
/// latest tag set, then discard tag transitions.
IngestResult ingest_records(std::span<const RawSpan> spans, std::span<const PositionFix> fixes,
                            std::span<const TagEvent> tag_events, const LinkBudget& budget,
                            const IngestOptions& options = {});

} // namespace v2vpl
