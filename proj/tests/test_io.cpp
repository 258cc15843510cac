#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "v2vpl/io.hpp"

using namespace v2vpl;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("v2vpl_io_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::string file(const char* name) const { return (path / name).string(); }
};

void write(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

} // namespace

TEST_CASE("format_compact prints shortest unambiguous decimals") {
    CHECK(format_compact(82.1) == "82.1");
    CHECK(format_compact(20.0) == "20");
    CHECK(format_compact(10.0) == "10");
    CHECK(format_compact(128.02) == "128.02");
    CHECK(format_compact(-82.5963731050576) == "-82.5963731051");
    CHECK(format_compact(0.0) == "0");
}

TEST_CASE("registry JSON export/import round-trips byte-identically") {
    const std::string exported = registry_to_json_string(registry_entries());
    const std::vector<RegistryEntry> imported = registry_from_json_string(exported);
    CHECK(imported.size() == registry_entries().size());
    CHECK(registry_to_json_string(imported) == exported);
}

TEST_CASE("registry JSON uses the published field names") {
    const std::string exported = registry_to_json_string(registry_entries());
    const nlohmann::json doc = nlohmann::json::parse(exported);
    REQUIRE(doc.is_array());
    const auto& first = doc.at(0);
    for (const char* field : {"antenna", "mounting", "visibility", "environment", "blocking"})
        CHECK(first.at("key").contains(field));
    for (const char* field : {"a", "b", "c", "ref_m", "d_min_m", "d_max_m", "source"})
        CHECK(first.at("model").contains(field));
    CHECK(first.at("model").at("d_min_m").is_null());

    std::size_t nulls = 0;
    for (const auto& entry : doc)
        if (entry.at("model").is_null()) ++nulls;
    CHECK(nulls == 22);
}

TEST_CASE("model JSON round trip keeps validity and source") {
    PathLossModel m;
    m.a_slope = 1.5;
    m.b_bias = 104.3;
    m.c_sigma = 5.1;
    m.validity = ValidityRange{30.0, 50.0};
    m.source = "blocking Case A";
    const PathLossModel back = model_from_json(model_to_json(m));
    CHECK(back.a_slope == m.a_slope);
    CHECK(back.b_bias == m.b_bias);
    CHECK(back.c_sigma == m.c_sigma);
    CHECK(back.ref_distance_m == 10.0);
    REQUIRE(back.validity.has_value());
    CHECK(back.validity->d_min_m == 30.0);
    CHECK(back.validity->d_max_m == 50.0);
    CHECK(back.source == m.source);
}

TEST_CASE("model JSON validation") {
    CHECK_THROWS(model_from_json(nlohmann::json::parse(R"({"a": 20.0, "b": 80.0})")));
    CHECK_THROWS(model_from_json(
        nlohmann::json::parse(R"({"a": 20.0, "b": 80.0, "c": -1.0})")));
    CHECK_THROWS(model_from_json(
        nlohmann::json::parse(R"({"a": 20.0, "b": 80.0, "c": 3.0, "d_min_m": 30.0})")));
}

TEST_CASE("samples CSV round trip") {
    TempDir dir;
    const std::vector<Sample> samples = {
        {10.0, 82.1, false}, {100.0, 104.5, false}, {600.0, 120.5, true}};
    write(dir.file("s.csv"), samples_to_csv(samples));
    const std::vector<Sample> back = read_samples_csv(dir.file("s.csv"));
    REQUIRE(back.size() == 3);
    CHECK(back[0].distance_m == 10.0);
    CHECK(back[1].path_loss_db == 104.5);
    CHECK(back[2].censored);
    CHECK(samples_to_csv(back) == samples_to_csv(samples));
}

TEST_CASE("samples CSV parse errors carry the line number") {
    TempDir dir;
    write(dir.file("bad.csv"), "distance_m,path_loss_db,censored\n10,82.1,0\nfifty,90,0\n");
    try {
        read_samples_csv(dir.file("bad.csv"));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
        CHECK(std::string(e.what()).find(":3:") != std::string::npos);
    }

    write(dir.file("badflag.csv"), "10,82.1,maybe\n");
    CHECK_THROWS_AS(read_samples_csv(dir.file("badflag.csv")), ParseError);
    CHECK_THROWS_AS(read_samples_csv(dir.file("missing.csv")), ParseError);
}

TEST_CASE("spans CSV round trip") {
    TempDir dir;
    std::vector<RawSpan> spans(2);
    spans[0].timestamp_s = 0.0;
    spans[0].duration_s = 0.055;
    spans[0].powers_dbm = {-80.0, -81.5, -79.25};
    spans[1].timestamp_s = 0.73;
    spans[1].duration_s = 0.055;
    spans[1].powers_dbm = {-90.0, -90.5, -91.0};
    write(dir.file("spans.csv"), spans_to_csv(spans));
    const std::vector<RawSpan> back = read_spans_csv(dir.file("spans.csv"));
    REQUIRE(back.size() == 2);
    CHECK(back[0].powers_dbm.size() == 3);
    CHECK(back[1].powers_dbm[2] == -91.0);
    CHECK(back[0].duration_s == 0.055);
}

TEST_CASE("fixes JSONL round trip and validation") {
    TempDir dir;
    std::vector<PositionFix> fixes(2);
    fixes[0].timestamp_s = 1.0;
    fixes[0].gps_distance_m = 52.0;
    fixes[0].uwb_distance_m = 49.3;
    fixes[1].timestamp_s = 2.0;
    fixes[1].gps_distance_m = 350.0;
    write(dir.file("f.jsonl"), fixes_to_jsonl(fixes));
    const std::vector<PositionFix> back = read_fixes_jsonl(dir.file("f.jsonl"));
    REQUIRE(back.size() == 2);
    CHECK(back[0].uwb_distance_m.value() == 49.3);
    CHECK_FALSE(back[1].uwb_distance_m.has_value());

    write(dir.file("empty_fix.jsonl"), "{\"timestamp_s\": 3.0}\n");
    try {
        read_fixes_jsonl(dir.file("empty_fix.jsonl"));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
    }
}

TEST_CASE("records JSONL round trip") {
    TempDir dir;
    MeasurementRecord r;
    r.timestamp_s = 12.41;
    r.distance_m = 49.3;
    r.distance_source = DistanceSource::Uwb;
    r.rx_power_dbm = -88.25;
    r.censored = false;
    r.tags = {Visibility::NLOS, Environment::Rural, Mounting::Bumper, Antenna::Directional,
              Blocking::OneCar};
    r.v_rx_mps = 20.0;
    r.v_rel_mps = 2.0;
    const std::vector<MeasurementRecord> records = {r};
    write(dir.file("r.jsonl"), records_to_jsonl(records));
    const std::vector<MeasurementRecord> back = read_records_jsonl(dir.file("r.jsonl"));
    REQUIRE(back.size() == 1);
    CHECK(back[0].distance_source == DistanceSource::Uwb);
    CHECK(back[0].tags == r.tags);
    CHECK(records_to_jsonl(back) == records_to_jsonl(records));

    write(dir.file("bad.jsonl"), records_to_jsonl(records) + "{\"timestamp_s\": oops}\n");
    try {
        read_records_jsonl(dir.file("bad.jsonl"));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("tag events JSONL defaults") {
    TempDir dir;
    write(dir.file("t.jsonl"),
          R"({"timestamp_s": 0.0, "visibility": "los", "environment": "urban", "mounting": "rooftop", "antenna": "omni"})"
          "\n"
          R"({"timestamp_s": 9.5, "visibility": "nlos", "environment": "rural", "mounting": "bumper", "antenna": "directional", "blocking": "onecar", "v_rx_mps": 20, "v_rel_mps": 4})"
          "\n");
    const std::vector<TagEvent> events = read_tag_events_jsonl(dir.file("t.jsonl"));
    REQUIRE(events.size() == 2);
    CHECK(events[0].tags.blocking == Blocking::None);
    CHECK(events[0].v_rx_mps == 0.0);
    CHECK(events[1].tags.blocking == Blocking::OneCar);
    CHECK(events[1].v_rel_mps == 4.0);
}

TEST_CASE("series CSV accepts an optional header") {
    TempDir dir;
    write(dir.file("s1.csv"), "shadowing_db\n0.5\n-0.25\n1.75\n");
    const std::vector<double> with_header = read_series_csv(dir.file("s1.csv"));
    REQUIRE(with_header.size() == 3);
    CHECK(with_header[2] == 1.75);

    write(dir.file("s2.csv"), "0.5\n-0.25\n1.75\n");
    CHECK(read_series_csv(dir.file("s2.csv")) == with_header);
}

TEST_CASE("budget JSON and presets") {
    TempDir dir;
    const LinkBudget omni = paper_omni_budget();
    write(dir.file("b.json"), budget_to_json(omni).dump(2));
    const LinkBudget loaded = load_budget(dir.file("b.json"));
    CHECK(loaded.p_tx_dbm == omni.p_tx_dbm);
    CHECK(loaded.detection_threshold_dbm == omni.detection_threshold_dbm);
    CHECK(load_budget("paper-directional").g_rx_dbi == 19.5);
    CHECK_THROWS(load_budget(dir.file("nope.json")));
}

TEST_CASE("load_model_file accepts bare models and registry entries") {
    TempDir dir;
    write(dir.file("bare.json"), R"({"a": 20.0, "b": 80.88, "c": 3.0})");
    CHECK(load_model_file(dir.file("bare.json")).b_bias == 80.88);

    const RegistryEntry& first = registry_entries()[0];
    write(dir.file("entry.json"), registry_entry_to_json(first).dump(2));
    CHECK(load_model_file(dir.file("entry.json")).a_slope == first.model->a_slope);
}

TEST_CASE("atomic writes replace the target completely") {
    TempDir dir;
    const std::string path = dir.file("out.txt");
    write_file_atomic(path, "first\n");
    write_file_atomic(path, "second\n");
    CHECK(read_file(path) == "second\n");
    CHECK_FALSE(fs::exists(path + ".tmp"));
}
