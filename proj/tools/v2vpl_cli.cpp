// v2vpl command-line front end: file-in/file-out workflows around the
// model registry, the censored ML fitter, shadowing generation and the
// measurement-log ingestion pipeline.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "v2vpl/estimation.hpp"
#include "v2vpl/ingestion.hpp"
#include "v2vpl/io.hpp"
#include "v2vpl/linkbudget.hpp"
#include "v2vpl/model_core.hpp"
#include "v2vpl/shadowing.hpp"

namespace {

using namespace v2vpl;

// Non-usage failure: bad data, unknown key, non-convergence. Exit code 2.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void emit(const std::optional<std::string>& out_path, const std::string& content) {
    if (out_path)
        write_file_atomic(*out_path, content);
    else
        std::cout << content;
}

std::vector<double> parse_distance_list(const std::string& list) {
    std::vector<double> distances;
    std::size_t begin = 0;
    while (begin <= list.size()) {
        const std::size_t comma = list.find(',', begin);
        const std::string item =
            list.substr(begin, comma == std::string::npos ? std::string::npos : comma - begin);
        if (item.empty()) throw UsageError("--distances: empty item in list");
        char* end = nullptr;
        const double d = std::strtod(item.c_str(), &end);
        if (end != item.c_str() + item.size())
            throw UsageError("--distances: '" + item + "' is not a number");
        distances.push_back(d);
        if (comma == std::string::npos) break;
        begin = comma + 1;
    }
    if (distances.empty()) throw UsageError("--distances: empty list");
    return distances;
}

PathLossModel lookup_or_fail(const std::string& key_text) {
    ModelKey key;
    try {
        key = parse_model_key(key_text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (std::optional<PathLossModel> model = registry_lookup(key)) return *model;
    std::string message = "no model for key '" + key_text + "'; unavailable cells:\n";
    for (const ModelKey& k : unavailable_keys()) message += "  " + to_string(k) + "\n";
    message.pop_back();
    throw DataError(message);
}

PathLossModel resolve_model(const std::string& key_text, const std::string& model_file) {
    if (key_text.empty() == model_file.empty())
        throw UsageError("give exactly one of --key or --model-file");
    if (!key_text.empty()) return lookup_or_fail(key_text);
    return load_model_file(model_file);
}

void warn_out_of_validity(const PathLossModel& model, std::span<const double> distances) {
    std::size_t outside = 0;
    for (double d : distances)
        if (!within_validity(model, d)) ++outside;
    if (outside > 0 && model.validity)
        std::cerr << "warning: " << outside << " distance(s) outside the model validity range ["
                  << format_compact(model.validity->d_min_m) << ", "
                  << format_compact(model.validity->d_max_m) << "] m\n";
}

// --- subcommand configs ------------------------------------------------------

struct IngestArgs {
    std::string spans, fixes, tags, budget;
    std::optional<std::string> out;
    IngestOptions options;
};

struct FitArgs {
    std::string input;
    std::string budget;
    std::optional<double> censor_level;
    std::optional<std::string> out;
};

struct EvalArgs {
    std::string key, model_file, distances;
    std::optional<std::string> out;
};

struct SampleArgs {
    std::string key, model_file, distances;
    unsigned long long seed = 0;
    std::size_t n = 0;
    double dmin = 10.0, dmax = 1000.0;
    std::optional<double> td, dt;
    std::optional<std::string> out;
};

struct CompareArgs {
    std::string key, distances;
    bool tr37885 = false;
    double fc = 0.0;
    std::optional<std::string> out;
};

struct DecorrelateArgs {
    std::string series;
    double dt = 0.0;
    std::size_t max_lag = 0;
    std::optional<std::string> out;
};

struct RegistryArgs {
    std::string key;       // lookup
    std::string in;        // import
    std::string mounting;  // td
    double v_rx = 0.0, v_rel = 0.0;
    std::optional<std::string> out;
};

int run_ingest(const IngestArgs& args) {
    const std::vector<RawSpan> spans = read_spans_csv(args.spans);
    const std::vector<PositionFix> fixes = read_fixes_jsonl(args.fixes);
    const std::vector<TagEvent> tags = read_tag_events_jsonl(args.tags);
    const LinkBudget budget = load_budget(args.budget);

    const IngestResult result = ingest_records(spans, fixes, tags, budget, args.options);
    for (const std::string& w : result.warnings) std::cerr << "warning: " << w << "\n";
    std::cerr << "ingested " << result.records.size() << " records from " << result.n_spans_in
              << " spans (" << result.n_censored << " censored, " << result.n_discarded_transitions
              << " dropped at tag transitions, " << result.n_unjoined << " without a position fix, "
              << result.n_untagged << " without tags)\n";

    emit(args.out, records_to_jsonl(result.records));
    return 0;
}

int run_fit(const FitArgs& args) {
    std::vector<Sample> samples;
    double censor_level = 0.0;

    const std::string head = read_file(args.input);
    const std::size_t first_printable = head.find_first_not_of(" \t\r\n");
    const bool jsonl = first_printable != std::string::npos && head[first_printable] == '{';

    if (jsonl) {
        if (args.budget.empty())
            throw UsageError("fitting measurement records needs --budget to invert the link budget");
        const LinkBudget budget = load_budget(args.budget);
        for (const MeasurementRecord& r : read_records_jsonl(args.input))
            samples.push_back(to_path_loss(r, budget));
        censor_level = args.censor_level.value_or(max_measurable_pl(budget));
    } else {
        if (!args.censor_level) throw UsageError("fitting a sample CSV needs --censor-level");
        samples = read_samples_csv(args.input);
        censor_level = *args.censor_level;
    }

    FitResult fit;
    try {
        fit = fit_ml(samples, censor_level);
    } catch (const std::invalid_argument& e) {
        throw DataError(e.what());
    }
    emit(args.out, fit_result_to_json(fit).dump(2) + "\n");
    if (!fit.converged) {
        std::cerr << "error: fit did not converge within the iteration cap\n";
        return 2;
    }
    return 0;
}

int run_eval(const EvalArgs& args) {
    const PathLossModel model = resolve_model(args.key, args.model_file);
    const std::vector<double> distances = parse_distance_list(args.distances);
    warn_out_of_validity(model, distances);

    std::string csv = "distance_m,mean_path_loss_db\n";
    for (double d : distances) {
        const PathLossValue v = evaluate_mean(model, d);
        csv += format_compact(d);
        csv += ',';
        csv += format_compact(v.loss_db);
        csv += '\n';
    }
    emit(args.out, csv);
    return 0;
}

int run_sample(const SampleArgs& args) {
    const PathLossModel model = resolve_model(args.key, args.model_file);
    if (args.distances.empty() == (args.n == 0))
        throw UsageError("give exactly one of --distances or --n");
    if (args.td.has_value() != args.dt.has_value())
        throw UsageError("--td and --dt go together");

    Rng rng(args.seed);
    std::vector<double> distances;
    if (!args.distances.empty()) {
        distances = parse_distance_list(args.distances);
    } else {
        if (!(args.dmin > 0.0) || !(args.dmax > args.dmin))
            throw UsageError("--dmin/--dmax: need 0 < dmin < dmax");
        std::uniform_real_distribution<double> log_d(std::log10(args.dmin), std::log10(args.dmax));
        distances.reserve(args.n);
        for (std::size_t i = 0; i < args.n; ++i) distances.push_back(std::pow(10.0, log_d(rng)));
    }
    warn_out_of_validity(model, distances);

    std::string csv = "distance_m,path_loss_db\n";
    if (args.td) {
        ShadowingProcess shadowing(model.c_sigma, *args.td, *args.dt, rng);
        for (double d : distances) {
            const double loss = evaluate_mean(model, d).loss_db + shadowing.step(rng);
            csv += format_compact(d);
            csv += ',';
            csv += format_compact(loss);
            csv += '\n';
        }
    } else {
        for (double d : distances) {
            const PathLossValue v = sample_path_loss(model, d, rng);
            csv += format_compact(d);
            csv += ',';
            csv += format_compact(v.loss_db);
            csv += '\n';
        }
    }
    emit(args.out, csv);
    return 0;
}

int run_compare(const CompareArgs& args) {
    if (!args.tr37885) throw UsageError("compare currently supports --tr37885 as the reference");
    if (!(args.fc > 0.0)) throw UsageError("--fc must be > 0");
    ModelKey key;
    try {
        key = parse_model_key(args.key);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const PathLossModel ours = lookup_or_fail(args.key);
    const PathLossModel reference = tr37885_model(args.fc, key.visibility);
    const std::vector<double> distances = parse_distance_list(args.distances);
    warn_out_of_validity(ours, distances);

    std::string csv = "distance_m,model_path_loss_db,tr37885_path_loss_db,delta_db\n";
    for (double d : distances) {
        const double a = evaluate_mean(ours, d).loss_db;
        const double b = evaluate_mean(reference, d).loss_db;
        csv += format_compact(d);
        csv += ',';
        csv += format_compact(a);
        csv += ',';
        csv += format_compact(b);
        csv += ',';
        csv += format_compact(a - b);
        csv += '\n';
    }
    emit(args.out, csv);
    return 0;
}

int run_decorrelate(const DecorrelateArgs& args) {
    const std::vector<double> series = read_series_csv(args.series);
    DecorrelationEstimate estimate;
    try {
        estimate = estimate_decorrelation_time(series, args.dt, args.max_lag);
    } catch (const std::invalid_argument& e) {
        throw DataError(e.what());
    } catch (const UndefinedEstimateError& e) {
        throw DataError(e.what());
    } catch (const NoCrossingError& e) {
        throw DataError(e.what());
    }
    ordered_json j;
    j["t_d_s"] = estimate.t_d_s;
    j["crossing_lag"] = estimate.crossing_lag;
    j["n"] = estimate.n;
    emit(args.out, j.dump(2) + "\n");
    return 0;
}

int run_registry_list(const std::optional<std::string>& out) {
    std::string text;
    for (const RegistryEntry& e : registry_entries()) {
        text += to_string(e.key);
        if (e.model) {
            text += " -> {" + format_compact(e.model->a_slope) + ", " +
                    format_compact(e.model->b_bias) + ", " + format_compact(e.model->c_sigma) + "}";
            if (e.model->validity)
                text += " valid [" + format_compact(e.model->validity->d_min_m) + ", " +
                        format_compact(e.model->validity->d_max_m) + "] m";
        } else {
            text += " -> unavailable";
        }
        text += '\n';
    }
    emit(out, text);
    return 0;
}

int run_registry_lookup(const RegistryArgs& args) {
    ModelKey key;
    try {
        key = parse_model_key(args.key);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const PathLossModel model = lookup_or_fail(args.key);
    RegistryEntry entry{key, model};
    emit(args.out, registry_entry_to_json(entry).dump(2) + "\n");
    return 0;
}

int run_registry_td(const RegistryArgs& args) {
    DecorrelationKey key;
    try {
        key.mounting = parse_mounting(args.mounting);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    key.v_rx_mps = args.v_rx;
    key.v_rel_mps = args.v_rel;
    std::optional<double> t_d;
    try {
        t_d = decorrelation_time_lookup(key);
    } catch (const std::domain_error& e) {
        throw DataError(e.what());
    }
    ordered_json j;
    j["mounting"] = std::string(to_string(key.mounting));
    j["v_rx_mps"] = key.v_rx_mps;
    j["v_rel_mps"] = key.v_rel_mps;
    j["t_d_s"] = t_d ? ordered_json(*t_d) : ordered_json(nullptr);
    emit(args.out, j.dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"V2V mmWave path-loss modeling toolkit"};
    app.require_subcommand(1);

    IngestArgs ingest_args;
    CLI::App* ingest = app.add_subcommand(
        "ingest", "Convert spectrum-analyzer spans and position logs into measurement records");
    ingest->add_option("--spans", ingest_args.spans, "Span CSV: timestamp_s,duration_s,p1,...,pN")
        ->required();
    ingest->add_option("--fixes", ingest_args.fixes, "Position-fix JSONL")->required();
    ingest->add_option("--tags", ingest_args.tags, "Tag-event JSONL")->required();
    ingest->add_option("--budget", ingest_args.budget, "Budget preset name or JSON file")->required();
    ingest->add_option("--out", ingest_args.out, "Output records JSONL (stdout when omitted)");
    ingest->add_option("--uwb-max-range", ingest_args.options.uwb_max_range_m,
                       "UWB usable range in meters")->capture_default_str();
    ingest->add_option("--join-tolerance", ingest_args.options.join_tolerance_s,
                       "Max span-to-fix timestamp gap in seconds")->capture_default_str();
    ingest->add_option("--transition-window", ingest_args.options.transition_window_s,
                       "Seconds discarded around tag changes")->capture_default_str();

    FitArgs fit_args;
    CLI::App* fit = app.add_subcommand("fit", "Censored ML fit of {A, B, C} to samples or records");
    fit->add_option("--in", fit_args.input, "Sample CSV or measurement-record JSONL")->required();
    fit->add_option("--censor-level", fit_args.censor_level, "Censoring level in dB");
    fit->add_option("--budget", fit_args.budget,
                    "Budget preset or JSON file (required for record input)");
    fit->add_option("--out", fit_args.out, "Output FitResult JSON");

    EvalArgs eval_args;
    CLI::App* eval = app.add_subcommand("eval", "Mean path loss at the given distances");
    eval->add_option("--key", eval_args.key, "Registry key antenna,mounting,visibility,environment[,blocking]");
    eval->add_option("--model-file", eval_args.model_file, "Model JSON file");
    eval->add_option("--distances", eval_args.distances, "Comma-separated distances in meters")
        ->required();
    eval->add_option("--out", eval_args.out, "Output CSV");

    SampleArgs sample_args;
    CLI::App* sample = app.add_subcommand("sample", "Path-loss draws with shadowing");
    sample->add_option("--key", sample_args.key, "Registry key");
    sample->add_option("--model-file", sample_args.model_file, "Model JSON file");
    sample->add_option("--distances", sample_args.distances, "Comma-separated distances in meters");
    sample->add_option("--n", sample_args.n, "Number of log-uniform random distances");
    sample->add_option("--dmin", sample_args.dmin, "Min random distance, m")->capture_default_str();
    sample->add_option("--dmax", sample_args.dmax, "Max random distance, m")->capture_default_str();
    sample->add_option("--seed", sample_args.seed, "RNG seed")->required();
    sample->add_option("--td", sample_args.td, "Decorrelation time for correlated shadowing, s");
    sample->add_option("--dt", sample_args.dt, "Step interval for correlated shadowing, s");
    sample->add_option("--out", sample_args.out, "Output CSV");

    CompareArgs compare_args;
    CLI::App* compare = app.add_subcommand("compare", "Registry model vs the TR 37.885 formula");
    compare->add_option("--key", compare_args.key, "Registry key")->required();
    compare->add_flag("--tr37885", compare_args.tr37885, "Compare against TR 37.885");
    compare->add_option("--fc", compare_args.fc, "Carrier frequency, GHz")->required();
    compare->add_option("--distances", compare_args.distances, "Comma-separated distances in meters")
        ->required();
    compare->add_option("--out", compare_args.out, "Output CSV");

    DecorrelateArgs decorrelate_args;
    CLI::App* decorrelate =
        app.add_subcommand("decorrelate", "Estimate the shadowing decorrelation time of a series");
    decorrelate->add_option("--series", decorrelate_args.series, "Single-column CSV of dB values")
        ->required();
    decorrelate->add_option("--dt", decorrelate_args.dt, "Series sample interval, s")->required();
    decorrelate->add_option("--max-lag", decorrelate_args.max_lag,
                            "Largest lag to scan (0 = min(n-1, 5000))");
    decorrelate->add_option("--out", decorrelate_args.out, "Output JSON");

    RegistryArgs registry_args;
    CLI::App* registry = app.add_subcommand("registry", "Inspect or export the model registry");
    registry->require_subcommand(1);
    CLI::App* registry_list = registry->add_subcommand("list", "One line per canonical cell");
    registry_list->add_option("--out", registry_args.out, "Output file");
    CLI::App* registry_lookup_cmd = registry->add_subcommand("lookup", "Single entry as JSON");
    registry_lookup_cmd->add_option("--key", registry_args.key, "Registry key")->required();
    registry_lookup_cmd->add_option("--out", registry_args.out, "Output file");
    CLI::App* registry_export = registry->add_subcommand("export", "Full registry as JSON");
    registry_export->add_option("--out", registry_args.out, "Output file");
    CLI::App* registry_import =
        registry->add_subcommand("import", "Validate a registry JSON file and re-emit it");
    registry_import->add_option("--in", registry_args.in, "Registry JSON file")->required();
    registry_import->add_option("--out", registry_args.out, "Output file");
    CLI::App* registry_td = registry->add_subcommand("td", "Published decorrelation time lookup");
    registry_td->add_option("--mounting", registry_args.mounting, "rooftop or bumper")->required();
    registry_td->add_option("--v-rx", registry_args.v_rx, "Receiver speed class, m/s")->required();
    registry_td->add_option("--v-rel", registry_args.v_rel, "Relative speed class, m/s")->required();
    registry_td->add_option("--out", registry_args.out, "Output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*ingest) return run_ingest(ingest_args);
        if (*fit) return run_fit(fit_args);
        if (*eval) return run_eval(eval_args);
        if (*sample) return run_sample(sample_args);
        if (*compare) return run_compare(compare_args);
        if (*decorrelate) return run_decorrelate(decorrelate_args);
        if (*registry) {
            if (*registry_list) return run_registry_list(registry_args.out);
            if (*registry_lookup_cmd) return run_registry_lookup(registry_args);
            if (*registry_export)
                return emit(registry_args.out, registry_to_json_string(registry_entries())), 0;
            if (*registry_import) {
                const std::vector<RegistryEntry> entries =
                    registry_from_json_string(read_file(registry_args.in), registry_args.in);
                emit(registry_args.out, registry_to_json_string(entries));
                return 0;
            }
            if (*registry_td) return run_registry_td(registry_args);
        }
        std::cerr << "error: no subcommand selected\n";
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
