#include "v2vpl/ingestion.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Core>

namespace v2vpl {

std::string_view to_string(DistanceSource s) {
    return s == DistanceSource::Gps ? "gps" : "uwb";
}

DistanceSource parse_distance_source(std::string_view s) {
    if (s == "gps" || s == "GPS") return DistanceSource::Gps;
    if (s == "uwb" || s == "UWB") return DistanceSource::Uwb;
    throw std::invalid_argument("unknown distance source '" + std::string(s) + "'");
}

double average_span(const RawSpan& span) {
    if (span.powers_dbm.empty()) throw std::domain_error("average_span: empty span");
    Eigen::Map<const Eigen::ArrayXd> p(span.powers_dbm.data(),
                                       static_cast<Eigen::Index>(span.powers_dbm.size()));
    // normalize to the peak before leaving dB so a constant span averages to
    // exactly its level and extreme levels cannot overflow
    const double peak = p.maxCoeff();
    const double mean_rel_mw = Eigen::exp((p - peak) * (std::log(10.0) / 10.0)).mean();
    return peak + 10.0 * std::log10(mean_rel_mw);
}

Sample to_path_loss(const MeasurementRecord& record, const LinkBudget& budget) {
    Sample s;
    s.distance_m = record.distance_m;
    s.censored = record.censored;
    // Censored records sit exactly at the maximum measurable loss so the
    // estimator sees the censoring level bit-for-bit.
    s.path_loss_db = record.censored
                         ? max_measurable_pl(budget)
                         : budget.p_tx_dbm + budget.g_tx_dbi + budget.g_rx_dbi -
                               budget.cable_loss_db - record.rx_power_dbm;
    return s;
}

FusedDistance fuse_distance(const PositionFix& fix, double uwb_max_range_m) {
    if (fix.uwb_distance_m && *fix.uwb_distance_m <= uwb_max_range_m)
        return {*fix.uwb_distance_m, DistanceSource::Uwb};
    if (fix.gps_distance_m) return {*fix.gps_distance_m, DistanceSource::Gps};
    if (fix.uwb_distance_m)
        throw std::domain_error("fuse_distance: UWB beyond configured range and no GPS fallback");
    throw std::domain_error("fuse_distance: no distance source present");
}

std::vector<MeasurementRecord> filter_transitions(std::span<const MeasurementRecord> records,
                                                  double window_s) {
    if (!(window_s >= 0.0)) throw std::domain_error("filter_transitions: window must be >= 0");
    for (std::size_t i = 1; i < records.size(); ++i)
        if (records[i].timestamp_s < records[i - 1].timestamp_s)
            throw std::domain_error("filter_transitions: records must be time-ordered");

    std::vector<double> changes;
    for (std::size_t i = 1; i < records.size(); ++i)
        if (records[i].tags != records[i - 1].tags) changes.push_back(records[i].timestamp_s);

    std::vector<MeasurementRecord> kept;
    kept.reserve(records.size());
    for (const MeasurementRecord& r : records) {
        const bool near_change = std::any_of(changes.begin(), changes.end(), [&](double t) {
            return std::abs(r.timestamp_s - t) <= window_s;
        });
        if (!near_change) kept.push_back(r);
    }
    return kept;
}

LeeCheck lee_check(double speed_mps, double span_duration_s, double frequency_ghz,
                   double lower_wavelengths, double upper_wavelengths) {
    if (!(speed_mps > 0.0) || !(span_duration_s > 0.0) || !(frequency_ghz > 0.0))
        throw std::domain_error("lee_check: inputs must be > 0");
    const double wavelength_m = speed_of_light_mps / (frequency_ghz * 1e9);
    const double wavelengths = speed_mps * span_duration_s / wavelength_m;
    return {wavelengths, wavelengths >= lower_wavelengths && wavelengths <= upper_wavelengths};
}

IngestResult ingest_records(std::span<const RawSpan> spans, std::span<const PositionFix> fixes,
                            std::span<const TagEvent> tag_events, const LinkBudget& budget,
                            const IngestOptions& options) {
    validate(budget);

    std::vector<const RawSpan*> ordered_spans;
    ordered_spans.reserve(spans.size());
    for (const RawSpan& s : spans) ordered_spans.push_back(&s);
    std::stable_sort(ordered_spans.begin(), ordered_spans.end(),
                     [](const RawSpan* a, const RawSpan* b) { return a->timestamp_s < b->timestamp_s; });

    std::vector<const PositionFix*> ordered_fixes;
    ordered_fixes.reserve(fixes.size());
    for (const PositionFix& f : fixes) ordered_fixes.push_back(&f);
    std::stable_sort(ordered_fixes.begin(), ordered_fixes.end(),
                     [](const PositionFix* a, const PositionFix* b) {
                         return a->timestamp_s < b->timestamp_s;
                     });

    std::vector<const TagEvent*> ordered_tags;
    ordered_tags.reserve(tag_events.size());
    for (const TagEvent& t : tag_events) ordered_tags.push_back(&t);
    std::stable_sort(ordered_tags.begin(), ordered_tags.end(),
                     [](const TagEvent* a, const TagEvent* b) { return a->timestamp_s < b->timestamp_s; });

    IngestResult result;
    result.n_spans_in = spans.size();

    auto warn = [&result](std::string message) {
        if (result.warnings.size() < 20) result.warnings.push_back(std::move(message));
    };

    auto nearest_fix = [&](double t) -> const PositionFix* {
        if (ordered_fixes.empty()) return nullptr;
        const auto it = std::lower_bound(
            ordered_fixes.begin(), ordered_fixes.end(), t,
            [](const PositionFix* f, double value) { return f->timestamp_s < value; });
        const PositionFix* best = nullptr;
        double best_gap = options.join_tolerance_s;
        if (it != ordered_fixes.end() && std::abs((*it)->timestamp_s - t) <= best_gap) {
            best = *it;
            best_gap = std::abs((*it)->timestamp_s - t);
        }
        if (it != ordered_fixes.begin()) {
            const PositionFix* prev = *(it - 1);
            if (std::abs(prev->timestamp_s - t) <= best_gap) best = prev;
        }
        return best;
    };

    auto tags_at = [&](double t) -> const TagEvent* {
        const auto it = std::upper_bound(
            ordered_tags.begin(), ordered_tags.end(), t,
            [](double value, const TagEvent* e) { return value < e->timestamp_s; });
        if (it == ordered_tags.begin()) return nullptr;
        return *(it - 1);
    };

    std::vector<MeasurementRecord> records;
    records.reserve(spans.size());
    for (const RawSpan* span : ordered_spans) {
        if (span->powers_dbm.size() != options.expected_span_length)
            warn("span at t=" + std::to_string(span->timestamp_s) + " has " +
                 std::to_string(span->powers_dbm.size()) + " samples, expected " +
                 std::to_string(options.expected_span_length));

        const double rx_power = average_span(*span);

        const PositionFix* fix = nearest_fix(span->timestamp_s);
        if (!fix) {
            ++result.n_unjoined;
            continue;
        }
        const TagEvent* tags = tags_at(span->timestamp_s);
        if (!tags) {
            ++result.n_untagged;
            continue;
        }

        FusedDistance fused;
        try {
            fused = fuse_distance(*fix, options.uwb_max_range_m);
        } catch (const std::domain_error& e) {
            warn(std::string("span at t=") + std::to_string(span->timestamp_s) + ": " + e.what());
            ++result.n_unjoined;
            continue;
        }

        MeasurementRecord record;
        record.timestamp_s = span->timestamp_s;
        record.distance_m = fused.distance_m;
        record.distance_source = fused.source;
        record.censored = rx_power <= budget.detection_threshold_dbm;
        record.rx_power_dbm = record.censored ? budget.detection_threshold_dbm : rx_power;
        record.tags = tags->tags;
        record.v_rx_mps = tags->v_rx_mps;
        record.v_rel_mps = tags->v_rel_mps;
        if (record.censored) ++result.n_censored;
        records.push_back(record);
    }

    result.records = filter_transitions(records, options.transition_window_s);
    result.n_discarded_transitions = records.size() - result.records.size();
    return result;
}

} // namespace v2vpl
