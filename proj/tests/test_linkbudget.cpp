#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "v2vpl/linkbudget.hpp"
#include "v2vpl/model_core.hpp"

using namespace v2vpl;

TEST_CASE("campaign budgets reproduce the published censoring levels") {
    CHECK(max_measurable_pl(paper_omni_budget()) == doctest::Approx(120.5).epsilon(1e-12));
    CHECK(max_measurable_pl(paper_directional_budget()) == doctest::Approx(149.5).epsilon(1e-12));

    // both budgets share one detection threshold
    CHECK(paper_omni_budget().detection_threshold_dbm ==
          paper_directional_budget().detection_threshold_dbm);

    // censoring-level gap equals twice the antenna-gain gap
    const double gap =
        max_measurable_pl(paper_directional_budget()) - max_measurable_pl(paper_omni_budget());
    CHECK(gap == doctest::Approx(29.0).epsilon(1e-12));
    CHECK(gap == doctest::Approx(2.0 * (19.5 - 5.0)).epsilon(1e-12));
    CHECK(149.5 - 120.5 == doctest::Approx(2.0 * (19.5 - 5.0)).epsilon(1e-12));
}

TEST_CASE("max_measurable_pl has unit slope in every term") {
    Rng rng(5);
    std::uniform_real_distribution<double> delta(0.1, 20.0);
    const LinkBudget base = paper_omni_budget();
    for (int trial = 0; trial < 50; ++trial) {
        const double k = delta(rng);
        const double reference = max_measurable_pl(base);

        LinkBudget b = base;
        b.p_tx_dbm += k;
        CHECK(max_measurable_pl(b) - reference == doctest::Approx(k).epsilon(1e-12));
        b = base;
        b.g_tx_dbi += k;
        CHECK(max_measurable_pl(b) - reference == doctest::Approx(k).epsilon(1e-12));
        b = base;
        b.g_rx_dbi += k;
        CHECK(max_measurable_pl(b) - reference == doctest::Approx(k).epsilon(1e-12));
        b = base;
        b.cable_loss_db += k;
        CHECK(reference - max_measurable_pl(b) == doctest::Approx(k).epsilon(1e-12));
        b = base;
        b.detection_threshold_dbm += k;
        CHECK(reference - max_measurable_pl(b) == doctest::Approx(k).epsilon(1e-12));
    }
}

TEST_CASE("range inversion matches the published arithmetic") {
    PathLossModel m;
    m.a_slope = 22.4;
    m.b_bias = 82.1;

    CHECK(range_for_model(m, 82.1) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(range_for_model(m, 120.5) == doctest::Approx(517.9).epsilon(0.5 / 517.9));

    PathLossModel tr;
    tr.a_slope = 20.0;
    tr.b_bias = 80.88;
    CHECK(range_for_model(tr, 120.88) == doctest::Approx(1000.0).epsilon(1e-9));
}

TEST_CASE("range inversion round-trips through evaluate_mean") {
    Rng rng(11);
    std::uniform_real_distribution<double> slope(1.0, 40.0), bias(60.0, 110.0), pl(70.0, 160.0);
    for (int trial = 0; trial < 200; ++trial) {
        PathLossModel m;
        m.a_slope = slope(rng);
        m.b_bias = bias(rng);
        const double target = pl(rng);
        const double d = range_for_model(m, target);
        CHECK(evaluate_mean(m, d).loss_db == doctest::Approx(target).epsilon(1e-9 / target));
    }
    // monotone in the budget
    PathLossModel m;
    m.a_slope = 20.0;
    m.b_bias = 80.0;
    CHECK(range_for_model(m, 110.0) < range_for_model(m, 111.0));
}

TEST_CASE("range inversion rejects non-invertible slopes") {
    PathLossModel flat;
    flat.a_slope = 0.0;
    flat.b_bias = 100.0;
    CHECK_THROWS_AS(range_for_model(flat, 120.0), std::domain_error);
    flat.a_slope = -3.0;
    CHECK_THROWS_AS(range_for_model(flat, 120.0), std::domain_error);
}

TEST_CASE("thermal noise floor") {
    CHECK(noise_floor(1e4, 0.0) == doctest::Approx(-134.0).epsilon(1e-12));
    CHECK(noise_floor(1.0, 0.0) == doctest::Approx(-174.0).epsilon(1e-12));
    CHECK(noise_floor(1e4, 10.0) == doctest::Approx(-124.0).epsilon(1e-12));
    CHECK_THROWS_AS(noise_floor(0.0, 0.0), std::domain_error);
}

TEST_CASE("presets resolve by name") {
    CHECK(budget_preset("paper-omni").has_value());
    CHECK(budget_preset("paper-directional").has_value());
    CHECK_FALSE(budget_preset("paper-dish").has_value());
    CHECK(budget_preset("paper-omni")->g_tx_dbi == 5.0);
    CHECK(budget_preset("paper-directional")->g_tx_dbi == 19.5);
    CHECK(budget_preset("paper-omni")->rbw_hz == 10e3);
}
