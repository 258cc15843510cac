#pragma once

#include <compare>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace v2vpl {

/// Deterministic random source shared by all sampling operations.
using Rng = std::mt19937_64;

inline constexpr double speed_of_light_mps = 299792458.0;

enum class Antenna { Omni, Directional };
enum class Mounting { Rooftop, Bumper, UnderChassis };
enum class Visibility { LOS, NLOS };
enum class Environment { Urban, Rural, Fields, Screens, Forest, Housing };
enum class Blocking { None, OneCar, MultiCar };

std::string_view to_string(Antenna a);
std::string_view to_string(Mounting m);
std::string_view to_string(Visibility v);
std::string_view to_string(Environment e);
std::string_view to_string(Blocking b);

Antenna parse_antenna(std::string_view s);
Mounting parse_mounting(std::string_view s);
Visibility parse_visibility(std::string_view s);
Environment parse_environment(std::string_view s);
Blocking parse_blocking(std::string_view s);

/// Categorical coordinates of a fitted model.
struct ModelKey {
    Antenna antenna{};
    Mounting mounting{};
    Visibility visibility{};
    Environment environment{};
    Blocking blocking = Blocking::None;

    friend auto operator<=>(const ModelKey&, const ModelKey&) = default;
};

/// Key invariants: blocking classes were only measured with bumper mounts,
/// and under-chassis models exist only for LOS.
bool key_satisfies_invariants(const ModelKey& key);

/// Comma-joined lowercase form, e.g. "omni,rooftop,los,urban,none".
std::string to_string(const ModelKey& key);

/// Parses "antenna,mounting,visibility,environment[,blocking]".
/// Throws std::invalid_argument on malformed input.
ModelKey parse_model_key(std::string_view s);

struct ValidityRange {
    double d_min_m = 0.0;
    double d_max_m = 0.0;
};

/// Single-slope path-loss model: loss(d) = a_slope*log10(d/ref) + b_bias,
/// with log-normal shadowing of standard deviation c_sigma about the mean.
struct PathLossModel {
    double a_slope = 0.0;      // dB per decade of distance
    double b_bias = 0.0;       // dB at ref_distance_m
    double c_sigma = 0.0;      // shadowing standard deviation, dB
    double ref_distance_m = 10.0;
    std::optional<ValidityRange> validity;
    std::string source;
};

/// Throws std::invalid_argument when a model violates its invariants
/// (c_sigma >= 0, ref_distance_m > 0, 0 < d_min < d_max when present).
void validate(const PathLossModel& model);

} // namespace v2vpl
