#include "v2vpl/io.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace v2vpl {

namespace {

std::string trim(std::string_view s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string_view::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split_csv(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t begin = 0;
    while (begin <= line.size()) {
        const std::size_t comma = line.find(',', begin);
        if (comma == std::string_view::npos) {
            fields.push_back(trim(line.substr(begin)));
            break;
        }
        fields.push_back(trim(line.substr(begin, comma - begin)));
        begin = comma + 1;
    }
    return fields;
}

double parse_double(const std::string& text, const std::string& path, std::size_t line) {
    const std::string t = trim(text);
    if (t.empty()) throw ParseError(path, line, "expected a number, got an empty field");
    char* end = nullptr;
    errno = 0;
    const double value = std::strtod(t.c_str(), &end);
    if (errno != 0 || end != t.c_str() + t.size())
        throw ParseError(path, line, "expected a number, got '" + t + "'");
    return value;
}

bool looks_numeric(const std::string& field) {
    const std::string t = trim(field);
    if (t.empty()) return false;
    char* end = nullptr;
    std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size();
}

nlohmann::json parse_json_line(const std::string& text, const std::string& path, std::size_t line) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path, line, e.what());
    }
}

template <typename T>
T require_field(const nlohmann::json& j, const char* name, const std::string& path, std::size_t line) {
    if (!j.contains(name))
        throw ParseError(path, line, std::string("missing field '") + name + "'");
    try {
        return j.at(name).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path, line, std::string("field '") + name + "': " + e.what());
    }
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

} // namespace

ParseError::ParseError(std::string path_in, std::size_t line_in, const std::string& message)
    : std::runtime_error(path_in + ":" + std::to_string(line_in) + ": " + message),
      path(std::move(path_in)),
      line(line_in) {}

std::string format_compact(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out.flush()) throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, 0, "cannot open file");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// --- models and registry ---------------------------------------------------

ordered_json model_to_json(const PathLossModel& model) {
    ordered_json j;
    j["a"] = model.a_slope;
    j["b"] = model.b_bias;
    j["c"] = model.c_sigma;
    j["ref_m"] = model.ref_distance_m;
    j["d_min_m"] = model.validity ? ordered_json(model.validity->d_min_m) : ordered_json(nullptr);
    j["d_max_m"] = model.validity ? ordered_json(model.validity->d_max_m) : ordered_json(nullptr);
    j["source"] = model.source;
    return j;
}

PathLossModel model_from_json(const nlohmann::json& j) {
    PathLossModel m;
    m.a_slope = require_field<double>(j, "a", "<model>", 0);
    m.b_bias = require_field<double>(j, "b", "<model>", 0);
    m.c_sigma = require_field<double>(j, "c", "<model>", 0);
    m.ref_distance_m = j.contains("ref_m") && !j.at("ref_m").is_null() ? j.at("ref_m").get<double>() : 10.0;
    const bool has_min = j.contains("d_min_m") && !j.at("d_min_m").is_null();
    const bool has_max = j.contains("d_max_m") && !j.at("d_max_m").is_null();
    if (has_min != has_max)
        throw std::invalid_argument("model: d_min_m and d_max_m must be given together");
    if (has_min) m.validity = ValidityRange{j.at("d_min_m").get<double>(), j.at("d_max_m").get<double>()};
    if (j.contains("source") && !j.at("source").is_null()) m.source = j.at("source").get<std::string>();
    validate(m);
    return m;
}

ordered_json key_to_json(const ModelKey& key) {
    ordered_json j;
    j["antenna"] = std::string(to_string(key.antenna));
    j["mounting"] = std::string(to_string(key.mounting));
    j["visibility"] = std::string(to_string(key.visibility));
    j["environment"] = std::string(to_string(key.environment));
    j["blocking"] = std::string(to_string(key.blocking));
    return j;
}

ModelKey key_from_json(const nlohmann::json& j) {
    ModelKey key;
    key.antenna = parse_antenna(require_field<std::string>(j, "antenna", "<key>", 0));
    key.mounting = parse_mounting(require_field<std::string>(j, "mounting", "<key>", 0));
    key.visibility = parse_visibility(require_field<std::string>(j, "visibility", "<key>", 0));
    key.environment = parse_environment(require_field<std::string>(j, "environment", "<key>", 0));
    key.blocking = j.contains("blocking") ? parse_blocking(j.at("blocking").get<std::string>())
                                          : Blocking::None;
    return key;
}

ordered_json registry_entry_to_json(const RegistryEntry& entry) {
    ordered_json j;
    j["key"] = key_to_json(entry.key);
    j["model"] = entry.model ? model_to_json(*entry.model) : ordered_json(nullptr);
    return j;
}

RegistryEntry registry_entry_from_json(const nlohmann::json& j) {
    RegistryEntry entry;
    entry.key = key_from_json(j.at("key"));
    if (j.contains("model") && !j.at("model").is_null()) entry.model = model_from_json(j.at("model"));
    return entry;
}

std::string registry_to_json_string(std::span<const RegistryEntry> entries) {
    ordered_json doc = ordered_json::array();
    for (const RegistryEntry& e : entries) doc.push_back(registry_entry_to_json(e));
    return doc.dump(2) + "\n";
}

std::vector<RegistryEntry> registry_from_json_string(const std::string& text,
                                                     const std::string& path_for_errors) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path_for_errors, 0, e.what());
    }
    if (!doc.is_array()) throw ParseError(path_for_errors, 0, "registry document must be an array");
    std::vector<RegistryEntry> entries;
    entries.reserve(doc.size());
    for (const auto& item : doc) entries.push_back(registry_entry_from_json(item));
    return entries;
}

std::string registry_to_csv(std::span<const RegistryEntry> entries) {
    std::string out = "antenna,mounting,visibility,environment,blocking,a,b,c,ref_m,d_min_m,d_max_m,source\n";
    for (const RegistryEntry& e : entries) {
        out += to_string(e.key);
        if (e.model) {
            out += ',';
            out += format_compact(e.model->a_slope);
            out += ',';
            out += format_compact(e.model->b_bias);
            out += ',';
            out += format_compact(e.model->c_sigma);
            out += ',';
            out += format_compact(e.model->ref_distance_m);
            out += ',';
            if (e.model->validity) out += format_compact(e.model->validity->d_min_m);
            out += ',';
            if (e.model->validity) out += format_compact(e.model->validity->d_max_m);
            out += ',';
            out += e.model->source;
        } else {
            out += ",,,,,,,";
        }
        out += '\n';
    }
    return out;
}

std::string decorrelation_to_csv(std::span<const DecorrelationEntry> entries) {
    std::string out = "mounting,v_rx_mps,v_rel_mps,t_d_s\n";
    for (const DecorrelationEntry& e : entries) {
        out += to_string(e.key.mounting);
        out += ',';
        out += format_compact(e.key.v_rx_mps);
        out += ',';
        out += format_compact(e.key.v_rel_mps);
        out += ',';
        if (e.t_d_s) out += format_compact(*e.t_d_s);
        out += '\n';
    }
    return out;
}

PathLossModel load_model_file(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path, 0, e.what());
    }
    if (j.is_object() && j.contains("model")) {
        if (j.at("model").is_null())
            throw std::invalid_argument(path + ": entry holds no model (unavailable cell)");
        return model_from_json(j.at("model"));
    }
    return model_from_json(j);
}

// --- link budgets ------------------------------------------------------------

ordered_json budget_to_json(const LinkBudget& budget) {
    ordered_json j;
    j["p_tx_dbm"] = budget.p_tx_dbm;
    j["g_tx_dbi"] = budget.g_tx_dbi;
    j["g_rx_dbi"] = budget.g_rx_dbi;
    j["cable_loss_db"] = budget.cable_loss_db;
    j["detection_threshold_dbm"] = budget.detection_threshold_dbm;
    j["rbw_hz"] = budget.rbw_hz;
    return j;
}

LinkBudget budget_from_json(const nlohmann::json& j) {
    LinkBudget b;
    b.p_tx_dbm = require_field<double>(j, "p_tx_dbm", "<budget>", 0);
    b.g_tx_dbi = require_field<double>(j, "g_tx_dbi", "<budget>", 0);
    b.g_rx_dbi = require_field<double>(j, "g_rx_dbi", "<budget>", 0);
    b.cable_loss_db = require_field<double>(j, "cable_loss_db", "<budget>", 0);
    b.detection_threshold_dbm = require_field<double>(j, "detection_threshold_dbm", "<budget>", 0);
    if (j.contains("rbw_hz")) b.rbw_hz = j.at("rbw_hz").get<double>();
    validate(b);
    return b;
}

LinkBudget load_budget(const std::string& name_or_path) {
    if (const std::optional<LinkBudget> preset = budget_preset(name_or_path)) return *preset;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(name_or_path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(name_or_path, 0, e.what());
    }
    return budget_from_json(j);
}

// --- samples and records -----------------------------------------------------

std::vector<Sample> read_samples_csv(const std::string& path) {
    const std::vector<std::string> lines = read_lines(path);
    std::vector<Sample> samples;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        if (trim(lines[i]).empty()) continue;
        const std::vector<std::string> fields = split_csv(lines[i]);
        if (i == 0 && !fields.empty() && !looks_numeric(fields[0])) continue;  // header
        if (fields.size() != 3)
            throw ParseError(path, line_no, "expected 'distance_m,path_loss_db,censored'");
        Sample s;
        s.distance_m = parse_double(fields[0], path, line_no);
        s.path_loss_db = parse_double(fields[1], path, line_no);
        const std::string flag = trim(fields[2]);
        if (flag == "0") s.censored = false;
        else if (flag == "1") s.censored = true;
        else throw ParseError(path, line_no, "censored flag must be 0 or 1, got '" + flag + "'");
        samples.push_back(s);
    }
    return samples;
}

std::string samples_to_csv(std::span<const Sample> samples) {
    std::string out = "distance_m,path_loss_db,censored\n";
    for (const Sample& s : samples) {
        out += format_compact(s.distance_m);
        out += ',';
        out += format_compact(s.path_loss_db);
        out += ',';
        out += s.censored ? '1' : '0';
        out += '\n';
    }
    return out;
}

std::vector<RawSpan> read_spans_csv(const std::string& path) {
    const std::vector<std::string> lines = read_lines(path);
    std::vector<RawSpan> spans;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        if (trim(lines[i]).empty()) continue;
        const std::vector<std::string> fields = split_csv(lines[i]);
        if (i == 0 && !fields.empty() && !looks_numeric(fields[0])) continue;
        if (fields.size() < 3)
            throw ParseError(path, line_no, "expected 'timestamp_s,duration_s,p1,...,pN'");
        RawSpan span;
        span.timestamp_s = parse_double(fields[0], path, line_no);
        span.duration_s = parse_double(fields[1], path, line_no);
        span.powers_dbm.reserve(fields.size() - 2);
        for (std::size_t f = 2; f < fields.size(); ++f)
            span.powers_dbm.push_back(parse_double(fields[f], path, line_no));
        spans.push_back(std::move(span));
    }
    return spans;
}

std::string spans_to_csv(std::span<const RawSpan> spans) {
    std::string out;
    for (const RawSpan& s : spans) {
        out += format_compact(s.timestamp_s);
        out += ',';
        out += format_compact(s.duration_s);
        for (double p : s.powers_dbm) {
            out += ',';
            out += format_compact(p);
        }
        out += '\n';
    }
    return out;
}

std::vector<PositionFix> read_fixes_jsonl(const std::string& path) {
    const std::vector<std::string> lines = read_lines(path);
    std::vector<PositionFix> fixes;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        const std::size_t line_no = i + 1;
        const nlohmann::json j = parse_json_line(lines[i], path, line_no);
        PositionFix fix;
        fix.timestamp_s = require_field<double>(j, "timestamp_s", path, line_no);
        if (j.contains("gps_distance_m") && !j.at("gps_distance_m").is_null())
            fix.gps_distance_m = j.at("gps_distance_m").get<double>();
        if (j.contains("uwb_distance_m") && !j.at("uwb_distance_m").is_null())
            fix.uwb_distance_m = j.at("uwb_distance_m").get<double>();
        if (!fix.gps_distance_m && !fix.uwb_distance_m)
            throw ParseError(path, line_no, "fix needs gps_distance_m or uwb_distance_m");
        fixes.push_back(fix);
    }
    return fixes;
}

std::string fixes_to_jsonl(std::span<const PositionFix> fixes) {
    std::string out;
    for (const PositionFix& f : fixes) {
        ordered_json j;
        j["timestamp_s"] = f.timestamp_s;
        if (f.gps_distance_m) j["gps_distance_m"] = *f.gps_distance_m;
        if (f.uwb_distance_m) j["uwb_distance_m"] = *f.uwb_distance_m;
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::vector<TagEvent> read_tag_events_jsonl(const std::string& path) {
    const std::vector<std::string> lines = read_lines(path);
    std::vector<TagEvent> events;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        const std::size_t line_no = i + 1;
        const nlohmann::json j = parse_json_line(lines[i], path, line_no);
        TagEvent e;
        e.timestamp_s = require_field<double>(j, "timestamp_s", path, line_no);
        try {
            e.tags.visibility = parse_visibility(require_field<std::string>(j, "visibility", path, line_no));
            e.tags.environment = parse_environment(require_field<std::string>(j, "environment", path, line_no));
            e.tags.mounting = parse_mounting(require_field<std::string>(j, "mounting", path, line_no));
            e.tags.antenna = parse_antenna(require_field<std::string>(j, "antenna", path, line_no));
            if (j.contains("blocking")) e.tags.blocking = parse_blocking(j.at("blocking").get<std::string>());
        } catch (const std::invalid_argument& err) {
            throw ParseError(path, line_no, err.what());
        }
        if (j.contains("v_rx_mps")) e.v_rx_mps = j.at("v_rx_mps").get<double>();
        if (j.contains("v_rel_mps")) e.v_rel_mps = j.at("v_rel_mps").get<double>();
        events.push_back(e);
    }
    return events;
}

std::vector<MeasurementRecord> read_records_jsonl(const std::string& path) {
    const std::vector<std::string> lines = read_lines(path);
    std::vector<MeasurementRecord> records;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        const std::size_t line_no = i + 1;
        const nlohmann::json j = parse_json_line(lines[i], path, line_no);
        MeasurementRecord r;
        r.timestamp_s = require_field<double>(j, "timestamp_s", path, line_no);
        r.distance_m = require_field<double>(j, "distance_m", path, line_no);
        r.rx_power_dbm = require_field<double>(j, "rx_power_dbm", path, line_no);
        r.censored = require_field<bool>(j, "censored", path, line_no);
        try {
            r.distance_source = parse_distance_source(require_field<std::string>(j, "distance_source", path, line_no));
            r.tags.visibility = parse_visibility(require_field<std::string>(j, "visibility", path, line_no));
            r.tags.environment = parse_environment(require_field<std::string>(j, "environment", path, line_no));
            r.tags.mounting = parse_mounting(require_field<std::string>(j, "mounting", path, line_no));
            r.tags.antenna = parse_antenna(require_field<std::string>(j, "antenna", path, line_no));
            r.tags.blocking = parse_blocking(require_field<std::string>(j, "blocking", path, line_no));
        } catch (const std::invalid_argument& err) {
            throw ParseError(path, line_no, err.what());
        }
        r.v_rx_mps = require_field<double>(j, "v_rx_mps", path, line_no);
        r.v_rel_mps = require_field<double>(j, "v_rel_mps", path, line_no);
        if (!(r.distance_m > 0.0)) throw ParseError(path, line_no, "distance_m must be > 0");
        records.push_back(r);
    }
    return records;
}

std::string records_to_jsonl(std::span<const MeasurementRecord> records) {
    std::string out;
    for (const MeasurementRecord& r : records) {
        ordered_json j;
        j["timestamp_s"] = r.timestamp_s;
        j["distance_m"] = r.distance_m;
        j["distance_source"] = std::string(to_string(r.distance_source));
        j["rx_power_dbm"] = r.rx_power_dbm;
        j["censored"] = r.censored;
        j["visibility"] = std::string(to_string(r.tags.visibility));
        j["environment"] = std::string(to_string(r.tags.environment));
        j["mounting"] = std::string(to_string(r.tags.mounting));
        j["antenna"] = std::string(to_string(r.tags.antenna));
        j["blocking"] = std::string(to_string(r.tags.blocking));
        j["v_rx_mps"] = r.v_rx_mps;
        j["v_rel_mps"] = r.v_rel_mps;
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::vector<double> read_series_csv(const std::string& path) {
    const std::vector<std::string> lines = read_lines(path);
    std::vector<double> values;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string t = trim(lines[i]);
        if (t.empty()) continue;
        if (i == 0 && !looks_numeric(t)) continue;  // header
        values.push_back(parse_double(t, path, i + 1));
    }
    return values;
}

ordered_json fit_result_to_json(const FitResult& fit) {
    ordered_json j;
    j["a"] = fit.a;
    j["b"] = fit.b;
    j["c"] = fit.c;
    j["log_likelihood"] = fit.log_likelihood;
    j["n_observed"] = fit.n_observed;
    j["n_censored"] = fit.n_censored;
    j["converged"] = fit.converged;
    j["iterations"] = fit.iterations;
    return j;
}

} // namespace v2vpl
