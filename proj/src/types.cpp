#include "v2vpl/types.hpp"

#include <algorithm>
#include <cctype>

namespace v2vpl {

namespace {

std::string lowercase(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

[[noreturn]] void bad_enum(const char* what, std::string_view value) {
    throw std::invalid_argument(std::string("unknown ") + what + " '" + std::string(value) + "'");
}

} // namespace

std::string_view to_string(Antenna a) {
    switch (a) {
        case Antenna::Omni: return "omni";
        case Antenna::Directional: return "directional";
    }
    return "?";
}

std::string_view to_string(Mounting m) {
    switch (m) {
        case Mounting::Rooftop: return "rooftop";
        case Mounting::Bumper: return "bumper";
        case Mounting::UnderChassis: return "underchassis";
    }
    return "?";
}

std::string_view to_string(Visibility v) {
    return v == Visibility::LOS ? "los" : "nlos";
}

std::string_view to_string(Environment e) {
    switch (e) {
        case Environment::Urban: return "urban";
        case Environment::Rural: return "rural";
        case Environment::Fields: return "fields";
        case Environment::Screens: return "screens";
        case Environment::Forest: return "forest";
        case Environment::Housing: return "housing";
    }
    return "?";
}

std::string_view to_string(Blocking b) {
    switch (b) {
        case Blocking::None: return "none";
        case Blocking::OneCar: return "onecar";
        case Blocking::MultiCar: return "multicar";
    }
    return "?";
}

Antenna parse_antenna(std::string_view s) {
    const std::string v = lowercase(s);
    if (v == "omni" || v == "omnidirectional" || v == "biconical") return Antenna::Omni;
    if (v == "directional" || v == "dir" || v == "horn") return Antenna::Directional;
    bad_enum("antenna", s);
}

Mounting parse_mounting(std::string_view s) {
    const std::string v = lowercase(s);
    if (v == "rooftop" || v == "roof") return Mounting::Rooftop;
    if (v == "bumper") return Mounting::Bumper;
    if (v == "underchassis" || v == "under-chassis" || v == "under_chassis" || v == "chassis")
        return Mounting::UnderChassis;
    bad_enum("mounting", s);
}

Visibility parse_visibility(std::string_view s) {
    const std::string v = lowercase(s);
    if (v == "los") return Visibility::LOS;
    if (v == "nlos") return Visibility::NLOS;
    bad_enum("visibility", s);
}

Environment parse_environment(std::string_view s) {
    const std::string v = lowercase(s);
    if (v == "urban") return Environment::Urban;
    if (v == "rural") return Environment::Rural;
    if (v == "fields") return Environment::Fields;
    if (v == "screens") return Environment::Screens;
    if (v == "forest") return Environment::Forest;
    if (v == "housing") return Environment::Housing;
    bad_enum("environment", s);
}

Blocking parse_blocking(std::string_view s) {
    const std::string v = lowercase(s);
    if (v == "none") return Blocking::None;
    if (v == "onecar" || v == "one-car" || v == "case-a" || v == "casea") return Blocking::OneCar;
    if (v == "multicar" || v == "multi-car" || v == "case-b" || v == "caseb") return Blocking::MultiCar;
    bad_enum("blocking", s);
}

bool key_satisfies_invariants(const ModelKey& key) {
    if (key.blocking != Blocking::None && key.mounting != Mounting::Bumper) return false;
    if (key.mounting == Mounting::UnderChassis && key.visibility != Visibility::LOS) return false;
    return true;
}

std::string to_string(const ModelKey& key) {
    std::string out;
    out += to_string(key.antenna);
    out += ',';
    out += to_string(key.mounting);
    out += ',';
    out += to_string(key.visibility);
    out += ',';
    out += to_string(key.environment);
    out += ',';
    out += to_string(key.blocking);
    return out;
}

ModelKey parse_model_key(std::string_view s) {
    std::vector<std::string_view> parts;
    std::size_t begin = 0;
    while (begin <= s.size()) {
        const std::size_t comma = s.find(',', begin);
        if (comma == std::string_view::npos) {
            parts.push_back(s.substr(begin));
            break;
        }
        parts.push_back(s.substr(begin, comma - begin));
        begin = comma + 1;
    }
    if (parts.size() != 4 && parts.size() != 5)
        throw std::invalid_argument(
            "model key must be 'antenna,mounting,visibility,environment[,blocking]', got '" +
            std::string(s) + "'");

    ModelKey key;
    key.antenna = parse_antenna(parts[0]);
    key.mounting = parse_mounting(parts[1]);
    key.visibility = parse_visibility(parts[2]);
    key.environment = parse_environment(parts[3]);
    key.blocking = parts.size() == 5 ? parse_blocking(parts[4]) : Blocking::None;
    return key;
}

void validate(const PathLossModel& model) {
    if (!(model.c_sigma >= 0.0))
        throw std::invalid_argument("path-loss model: c_sigma must be >= 0");
    if (!(model.ref_distance_m > 0.0))
        throw std::invalid_argument("path-loss model: ref_distance_m must be > 0");
    if (model.validity) {
        if (!(model.validity->d_min_m > 0.0) || !(model.validity->d_min_m < model.validity->d_max_m))
            throw std::invalid_argument("path-loss model: validity needs 0 < d_min < d_max");
    }
}

} // namespace v2vpl
