#include "v2vpl/model_core.hpp"

#include <vector>

namespace v2vpl {

namespace {

using A = Antenna;
using M = Mounting;
using V = Visibility;
using E = Environment;
using B = Blocking;

PathLossModel triple(double a, double b, double c, const char* source) {
    PathLossModel m;
    m.a_slope = a;
    m.b_bias = b;
    m.c_sigma = c;
    m.ref_distance_m = 10.0;
    m.source = source;
    return m;
}

PathLossModel bounded(double a, double b, double c, double d_min, double d_max, const char* source) {
    PathLossModel m = triple(a, b, c, source);
    m.validity = ValidityRange{d_min, d_max};
    return m;
}

std::vector<RegistryEntry> build_registry() {
    std::vector<RegistryEntry> r;
    r.reserve(64);

    auto cell = [&r](A a, M m, V v, E e, std::optional<PathLossModel> model) {
        r.push_back({ModelKey{a, m, v, e, B::None}, std::move(model)});
    };
    auto t1 = [](double a, double b, double c) { return triple(a, b, c, "Table 1"); };
    const std::optional<PathLossModel> none = std::nullopt;

    // Main-table grid, publication order. Environments: urban, rural,
    // fields, screens, forest, housing.
    cell(A::Omni, M::Rooftop, V::LOS, E::Urban,   t1(22.4, 82.1, 3.7));
    cell(A::Omni, M::Rooftop, V::LOS, E::Rural,   t1(20.0, 82.3, 4.1));
    cell(A::Omni, M::Rooftop, V::LOS, E::Fields,  t1(19.4, 82.6, 3.9));
    cell(A::Omni, M::Rooftop, V::LOS, E::Screens, t1(23.1, 79.9, 5.3));
    cell(A::Omni, M::Rooftop, V::LOS, E::Forest,  t1(17.6, 83.8, 3.9));
    cell(A::Omni, M::Rooftop, V::LOS, E::Housing, t1(22.9, 82.1, 3.6));

    cell(A::Omni, M::Rooftop, V::NLOS, E::Urban,   t1(33.2, 74.7, 5.5));
    cell(A::Omni, M::Rooftop, V::NLOS, E::Rural,   t1(20.4, 84.0, 5.4));
    cell(A::Omni, M::Rooftop, V::NLOS, E::Fields,  t1(20.5, 84.7, 5.0));
    cell(A::Omni, M::Rooftop, V::NLOS, E::Screens, t1(21.7, 80.4, 4.6));
    cell(A::Omni, M::Rooftop, V::NLOS, E::Forest,  t1(21.2, 82.7, 6.0));
    cell(A::Omni, M::Rooftop, V::NLOS, E::Housing, t1(35.2, 72.4, 5.8));

    cell(A::Omni, M::Bumper, V::LOS, E::Urban,   t1(25.1, 79.9, 5.2));
    cell(A::Omni, M::Bumper, V::LOS, E::Rural,   t1(19.4, 84.9, 5.9));
    cell(A::Omni, M::Bumper, V::LOS, E::Fields,  t1(24.6, 80.6, 5.3));
    cell(A::Omni, M::Bumper, V::LOS, E::Screens, t1(19.6, 81.7, 3.8));
    cell(A::Omni, M::Bumper, V::LOS, E::Forest,  none);
    cell(A::Omni, M::Bumper, V::LOS, E::Housing, t1(29.9, 80.3, 3.8));

    cell(A::Omni, M::Bumper, V::NLOS, E::Urban,   t1(14.5, 93.0, 4.1));
    cell(A::Omni, M::Bumper, V::NLOS, E::Rural,   t1(18.6, 87.7, 4.9));
    cell(A::Omni, M::Bumper, V::NLOS, E::Fields,  t1(14.5, 92.9, 4.6));
    cell(A::Omni, M::Bumper, V::NLOS, E::Screens, t1(28.0, 76.5, 4.0));
    cell(A::Omni, M::Bumper, V::NLOS, E::Forest,  none);
    cell(A::Omni, M::Bumper, V::NLOS, E::Housing, none);

    cell(A::Directional, M::Rooftop, V::LOS, E::Urban,   t1(15.0, 80.6, 8.9));
    cell(A::Directional, M::Rooftop, V::LOS, E::Rural,   t1(13.9, 86.4, 7.8));
    cell(A::Directional, M::Rooftop, V::LOS, E::Fields,  t1(11.8, 86.8, 9.2));
    cell(A::Directional, M::Rooftop, V::LOS, E::Screens, t1(15.5, 84.0, 3.7));
    cell(A::Directional, M::Rooftop, V::LOS, E::Forest,  t1(11.7, 88.6, 4.5));
    cell(A::Directional, M::Rooftop, V::LOS, E::Housing, t1(13.8, 80.4, 9.2));

    cell(A::Directional, M::Rooftop, V::NLOS, E::Urban,   none);
    cell(A::Directional, M::Rooftop, V::NLOS, E::Rural,   t1(16.9, 90.1, 6.4));
    cell(A::Directional, M::Rooftop, V::NLOS, E::Fields,  t1(20.1, 87.4, 6.8));
    cell(A::Directional, M::Rooftop, V::NLOS, E::Screens, t1(24.4, 77.7, 4.9));
    cell(A::Directional, M::Rooftop, V::NLOS, E::Forest,  none);
    cell(A::Directional, M::Rooftop, V::NLOS, E::Housing, none);

    cell(A::Directional, M::Bumper, V::LOS, E::Urban,   none);
    cell(A::Directional, M::Bumper, V::LOS, E::Rural,   t1(5.2, 94.1, 9.1));
    cell(A::Directional, M::Bumper, V::LOS, E::Fields,  t1(16.2, 93.5, 6.4));
    cell(A::Directional, M::Bumper, V::LOS, E::Screens, none);
    cell(A::Directional, M::Bumper, V::LOS, E::Forest,  none);
    cell(A::Directional, M::Bumper, V::LOS, E::Housing, none);

    cell(A::Directional, M::Bumper, V::NLOS, E::Urban,   none);
    cell(A::Directional, M::Bumper, V::NLOS, E::Rural,   t1(16.2, 93.5, 6.4));
    cell(A::Directional, M::Bumper, V::NLOS, E::Fields,  t1(17.3, 92.4, 6.2));
    cell(A::Directional, M::Bumper, V::NLOS, E::Screens, none);
    cell(A::Directional, M::Bumper, V::NLOS, E::Forest,  none);
    cell(A::Directional, M::Bumper, V::NLOS, E::Housing, none);

    // Under-chassis ducting experiments, LOS only. The campaign did not
    // record which aerial sat on the chassis arm; entries are keyed omni
    // and the directional column stays unavailable.
    cell(A::Omni, M::UnderChassis, V::LOS, E::Urban,   triple(36.9, 91.7, 3.3, "under-chassis"));
    cell(A::Omni, M::UnderChassis, V::LOS, E::Rural,   triple(22.1, 95.3, 3.4, "under-chassis"));
    cell(A::Omni, M::UnderChassis, V::LOS, E::Fields,  triple(23.9, 94.1, 3.8, "under-chassis"));
    cell(A::Omni, M::UnderChassis, V::LOS, E::Screens, triple(20.9, 94.5, 3.7, "under-chassis"));
    cell(A::Omni, M::UnderChassis, V::LOS, E::Forest,  none);
    cell(A::Omni, M::UnderChassis, V::LOS, E::Housing, none);

    cell(A::Directional, M::UnderChassis, V::LOS, E::Urban,   none);
    cell(A::Directional, M::UnderChassis, V::LOS, E::Rural,   none);
    cell(A::Directional, M::UnderChassis, V::LOS, E::Fields,  none);
    cell(A::Directional, M::UnderChassis, V::LOS, E::Screens, none);
    cell(A::Directional, M::UnderChassis, V::LOS, E::Forest,  none);
    cell(A::Directional, M::UnderChassis, V::LOS, E::Housing, none);

    // Blocking-car models, bumper mounts on the highway. Case A: one car
    // between TX and RX, valid 30-50 m. Case B: more than one, 100-200 m.
    // Canonical keys sit at (nlos, rural); lookup ignores visibility and
    // environment for blocked keys.
    auto blocked = [&r](A a, B b, PathLossModel model) {
        r.push_back({ModelKey{a, M::Bumper, V::NLOS, E::Rural, b}, std::move(model)});
    };
    blocked(A::Omni, B::OneCar,          bounded(12.5, 92.8, 4.1, 30.0, 50.0, "blocking Case A"));
    blocked(A::Omni, B::MultiCar,        bounded(12.0, 94.8, 3.9, 100.0, 200.0, "blocking Case B"));
    blocked(A::Directional, B::OneCar,   bounded(1.5, 104.3, 5.1, 30.0, 50.0, "blocking Case A"));
    blocked(A::Directional, B::MultiCar, bounded(6.9, 106.5, 5.6, 100.0, 200.0, "blocking Case B"));

    return r;
}

} // namespace

std::span<const RegistryEntry> registry_entries() {
    static const std::vector<RegistryEntry> entries = build_registry();
    return entries;
}

std::optional<PathLossModel> registry_lookup(const ModelKey& key) {
    if (key.blocking != Blocking::None) {
        if (key.mounting != Mounting::Bumper) return std::nullopt;
        for (const RegistryEntry& e : registry_entries())
            if (e.key.blocking == key.blocking && e.key.antenna == key.antenna) return e.model;
        return std::nullopt;
    }
    if (key.mounting == Mounting::UnderChassis && key.visibility != Visibility::LOS)
        return std::nullopt;
    for (const RegistryEntry& e : registry_entries())
        if (e.key == key) return e.model;
    return std::nullopt;
}

std::vector<ModelKey> unavailable_keys() {
    std::vector<ModelKey> keys;
    for (const RegistryEntry& e : registry_entries())
        if (!e.model) keys.push_back(e.key);
    return keys;
}

} // namespace v2vpl
