#include "v2vpl/model_core.hpp"

#include <cmath>
#include <cstdio>

#include "v2vpl/numerics.hpp"

namespace v2vpl {

namespace {

std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace

bool within_validity(const PathLossModel& model, double distance_m) {
    if (!model.validity) return true;
    return distance_m >= model.validity->d_min_m && distance_m <= model.validity->d_max_m;
}

PathLossValue evaluate_mean(const PathLossModel& model, double distance_m) {
    if (!(distance_m > 0.0)) throw std::domain_error("evaluate_mean: distance must be > 0");
    const double loss = model.a_slope * std::log10(distance_m / model.ref_distance_m) + model.b_bias;
    return {loss, within_validity(model, distance_m)};
}

PathLossValue sample_path_loss(const PathLossModel& model, double distance_m, Rng& rng) {
    PathLossValue value = evaluate_mean(model, distance_m);
    if (model.c_sigma > 0.0) value.loss_db += model.c_sigma * draw_normal(rng);
    return value;
}

PathLossModel tr37885_model(double fc_ghz, Visibility visibility) {
    if (!(fc_ghz > 0.0)) throw std::domain_error("tr37885_model: fc must be > 0");
    PathLossModel m;
    m.ref_distance_m = 10.0;
    if (visibility == Visibility::LOS) {
        // PL = 32.4 + 20*log10(d) + 20*log10(fc) at 10 m: B = 32.4 + 20 + 20*log10(fc)
        m.a_slope = 20.0;
        m.b_bias = 32.4 + 20.0 + 20.0 * std::log10(fc_ghz);
        m.c_sigma = 3.0;
        m.source = "TR37.885-LoS";
    } else {
        // PL = 36.85 + 30*log10(d) + 18.9*log10(fc) at 10 m: B = 36.85 + 30 + 18.9*log10(fc)
        m.a_slope = 30.0;
        m.b_bias = 36.85 + 30.0 + 18.9 * std::log10(fc_ghz);
        m.c_sigma = 4.0;
        m.source = "TR37.885-NLoS";
    }
    return m;
}

PathLossModel rebase_reference(const PathLossModel& model, double new_ref_m) {
    if (!(new_ref_m > 0.0)) throw std::domain_error("rebase_reference: reference must be > 0");
    if (new_ref_m == model.ref_distance_m) return model;
    PathLossModel out = model;
    out.b_bias = model.b_bias + model.a_slope * std::log10(new_ref_m / model.ref_distance_m);
    out.ref_distance_m = new_ref_m;
    return out;
}

PathLossModel extrapolate_frequency(const PathLossModel& model, double f_from_ghz, double f_to_ghz) {
    if (!(f_from_ghz > 0.0) || !(f_to_ghz > 0.0))
        throw std::domain_error("extrapolate_frequency: frequencies must be > 0");
    if (f_to_ghz == f_from_ghz) return model;
    PathLossModel out = model;
    out.b_bias = model.b_bias + 20.0 * std::log10(f_to_ghz / f_from_ghz);
    const std::string note =
        "extrapolated " + short_number(f_from_ghz) + " GHz -> " + short_number(f_to_ghz) + " GHz";
    out.source = model.source.empty() ? note : model.source + " (" + note + ")";
    return out;
}

} // namespace v2vpl
