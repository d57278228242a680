#include <cmath>

#include <gtest/gtest.h>

#include "qwalk/emit.hpp"
#include "qwalk/experiments.hpp"

namespace qwalk {
namespace {

const CaseResult& find_case(const ExperimentResult& r, const std::string& label) {
    for (const auto& c : r.cases)
        if (c.label == label) return c;
    throw std::out_of_range("no case " + label);
}

TEST(TailWindow, DefaultIsFinalFifth) {
    const TailWindow w = default_tail_window(500);
    EXPECT_EQ(w.first, 400);
    EXPECT_EQ(w.last, 500);
    EXPECT_TRUE(w.even_only);
    const TailWindow small = default_tail_window(3);
    EXPECT_EQ(small.first, 2);
    EXPECT_EQ(small.last, 3);
}

TEST(TailWindow, AverageUsesEvenStepsOnly) {
    PsTimeSeries s;
    for (int t = 0; t <= 10; ++t) s.push_back({t, t % 2 == 0 ? 1.0 : 0.0});
    EXPECT_DOUBLE_EQ(tail_average(s, TailWindow{4, 10, true}), 1.0);
    EXPECT_NEAR(tail_average(s, TailWindow{4, 10, false}), 4.0 / 7.0, 1e-15);
}

TEST(Presets, NamesAllResolve) {
    for (const auto& n : preset_names()) EXPECT_NO_THROW(validate(preset(n))) << n;
    EXPECT_THROW(preset("fig9"), SpecError);
}

TEST(Presets, SeparablePairsPass) {
    const ExperimentResult r = run(preset("fig1"));
    ASSERT_EQ(r.cases.size(), 3u);
    EXPECT_TRUE(r.passed());
    EXPECT_NEAR(*find_case(r, "LR").prediction, 3.0 / 8.0, 1e-12);
    EXPECT_NEAR(*find_case(r, "LL").prediction, 5.0 / 8.0, 1e-12);
    EXPECT_NEAR(*find_case(r, "SS").prediction, 0.5, 1e-12);
    for (const auto& c : r.cases) {
        EXPECT_EQ(c.series.size(), 101u);
        EXPECT_LE(*c.gap, 0.01);
    }
}

TEST(Presets, BellPairsPass) {
    const ExperimentResult r = run(preset("fig2"));
    EXPECT_TRUE(r.passed());
    EXPECT_NEAR(*find_case(r, "psi-").prediction, 0.25, 1e-12);
    EXPECT_NEAR(*find_case(r, "phi+").prediction, 0.75, 1e-12);
}

TEST(Presets, SingleWalkerHasDistribution) {
    const ExperimentResult r = run(preset("fig1_3"));
    ASSERT_EQ(r.cases.size(), 1u);
    const auto& c = r.cases.front();
    ASSERT_TRUE(c.distribution.has_value());
    EXPECT_NEAR(c.distribution->total(), 1.0, 1e-12);
    EXPECT_NEAR(*c.prediction, (2.0 + std::sqrt(2.0)) / 4.0, 1e-12);
    EXPECT_TRUE(c.passed);
}

TEST(Presets, SurfacesCoverTheirGrids) {
    const ExperimentResult sep = run(preset("fig1_2"));
    EXPECT_EQ(sep.surface.size(), 21u * 21u);
    for (const auto& p : sep.surface) {
        EXPECT_GE(p.value, 0.25 - 1e-12);
        EXPECT_LE(p.value, 0.75 + 1e-12);
    }
    const ExperimentResult ent = run(preset("fig2_2"));
    EXPECT_EQ(ent.surface.size(), 21u * 22u / 2u);
    for (const auto& p : ent.surface) {
        EXPECT_LE(p.x + p.y, 1.0 + 1e-12);
        EXPECT_NEAR(p.value, (1.0 + 2.0 * (p.x + p.y)) / 4.0, 1e-12);
    }
}

TEST(Presets, ExchangeRunsMatchBellPredictions) {
    const ExperimentResult b = run(preset("bosons"));
    const ExperimentResult f = run(preset("fermions"));
    EXPECT_TRUE(b.passed());
    EXPECT_TRUE(f.passed());
    EXPECT_NEAR(*b.cases.front().prediction, 0.5, 1e-12);
    EXPECT_NEAR(*f.cases.front().prediction, 0.25, 1e-12);
}

TEST(Presets, InteractionGateOnShortRunFails) {
    ExperimentSpec s = preset("fig6");
    s.steps = 10;
    s.outputs.joint = false;
    const ExperimentResult r = run(s);
    ASSERT_EQ(r.cases.size(), 1u);
    EXPECT_FALSE(r.cases.front().prediction.has_value());
    EXPECT_EQ(r.passed(), r.cases.front().tail_average >= 0.78);
}

TEST(Validate, RejectsInconsistentSpecs) {
    ExperimentSpec s = preset("fig1");
    s.steps = -1;
    EXPECT_THROW(validate(s), SpecError);

    s = preset("fig1");
    s.cases.clear();
    EXPECT_THROW(validate(s), SpecError);

    s = preset("fig1");
    s.interaction_coin = delta_coin_default();
    EXPECT_THROW(validate(s), SpecError);

    s = preset("fig6");
    s.interaction_coin.reset();
    EXPECT_THROW(validate(s), SpecError);

    s = preset("fig1");
    s.cases.front().state = coin_left();
    EXPECT_THROW(validate(s), SpecError);

    s = preset("fig1_3");
    s.outputs.joint = true;
    EXPECT_THROW(validate(s), SpecError);

    s = preset("fig1_3");
    s.cases.front().state = CoinState{1.0, 1.0};
    EXPECT_THROW(validate(s), SpecError);

    s = preset("fig1");
    s.window = TailWindow{90, 80, true};
    EXPECT_THROW(validate(s), SpecError);
    s.window = TailWindow{99, 99, true};
    EXPECT_THROW(validate(s), SpecError);
    s.window = TailWindow{90, 120, true};
    EXPECT_THROW(validate(s), SpecError);

    s = preset("fig1_2");
    s.surface->points = 1;
    EXPECT_THROW(validate(s), SpecError);
}

TEST(Validate, ResourceCapAppliesToDeltaRuns) {
    ExperimentSpec s = preset("fig6");
    s.max_amplitudes = 100;
    EXPECT_THROW(run(s), ResourceLimitError);
}

TEST(Determinism, RepeatedRunsAreBitIdentical) {
    for (const auto& name : {"fig1", "fig2", "fig1_3", "fig2_2", "bosons"}) {
        const auto a = render(run(preset(name)), OutputFormat::json, "x.json");
        const auto b = render(run(preset(name)), OutputFormat::json, "x.json");
        ASSERT_EQ(a.size(), b.size());
        for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].contents, b[i].contents) << name;
    }
}

TEST(Sweep, SeededAndCloseToClosedForm) {
    const SweepSpec spec{5, 200, 42};
    const SweepResult a = run_sweep(spec);
    const SweepResult b = run_sweep(spec);
    ASSERT_EQ(a.rows.size(), 5u);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        EXPECT_EQ(a.rows[i].tail_average, b.rows[i].tail_average);
        EXPECT_NEAR(a.rows[i].closed_form, ps_entangled(a.rows[i].state), 1e-15);
        EXPECT_LE(a.rows[i].gap, 0.02);
    }
    EXPECT_THROW(run_sweep(SweepSpec{-1, 10, 1}), SpecError);
}

TEST(RandomStates, AreNormalizedAndSeeded) {
    std::mt19937_64 a{77};
    std::mt19937_64 b{77};
    for (int i = 0; i < 100; ++i) {
        const TwoCoinState x = random_two_coin_state(a);
        const TwoCoinState y = random_two_coin_state(b);
        EXPECT_NEAR(x.norm_squared(), 1.0, 1e-14);
        EXPECT_EQ(x.c, y.c);
        EXPECT_NEAR(random_coin_state(a).norm_squared(), 1.0, 1e-14);
        random_coin_state(b);
    }
}

}  // namespace
}  // namespace qwalk
