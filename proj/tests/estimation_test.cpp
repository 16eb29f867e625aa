#include "xnet/estimation.hpp"

#include <gtest/gtest.h>

namespace xnet {
namespace {

TEST(RunTrials, ReproducibleForSeed) {
    const TrialReport a = run_trials(SchemeId::scheme1(), 200, NoiseConfig::noiseless(), 9);
    const TrialReport b = run_trials(SchemeId::scheme1(), 200, NoiseConfig::noiseless(), 9);
    EXPECT_EQ(a.trials, b.trials);
    EXPECT_EQ(a.successes, b.successes);
    EXPECT_EQ(a.max_residual, b.max_residual);
    EXPECT_EQ(a.condition.p50, b.condition.p50);
    EXPECT_EQ(a.condition.p95, b.condition.p95);
    EXPECT_EQ(a.condition.max, b.condition.max);
    EXPECT_EQ(a.identifiability_failures, b.identifiability_failures);
}

TEST(RunTrials, Scheme2NoiselessAlwaysSucceeds) {
    const TrialReport r = run_trials(SchemeId::scheme2(), 1000, NoiseConfig::noiseless(), 1);
    EXPECT_EQ(r.successes, r.trials);
    EXPECT_EQ(r.identifiability_failures, 0);
    EXPECT_LE(r.max_residual, 1e-8);
}

TEST(RunTrials, SingleTrialResidualTiny) {
    const TrialReport r = run_trials(SchemeId::scheme1(), 1, NoiseConfig::noiseless(), 5);
    EXPECT_EQ(r.successes, 1);
    EXPECT_LE(r.max_residual, 1e-8);
}

TEST(RunTrials, ZeroTrialsRejected) {
    EXPECT_THROW(run_trials(SchemeId::scheme1(), 0, NoiseConfig::noiseless(), 1), InvalidDimension);
}

TEST(RunTrials, MildNoiseStillDecodesWithinBound) {
    const TrialReport r = run_trials(SchemeId::scheme2(), 500, NoiseConfig::with_variance(1e-9), 3);
    EXPECT_EQ(r.successes, r.trials);
}

TEST(RunTrials, DominatingPatternAlsoRuns) {
    const TrialReport r = run_trials(SchemeId::scheme2(), 100, NoiseConfig::noiseless(), 4,
                                     CsitPattern::parse("DD,DD,PP"));
    EXPECT_EQ(r.successes, r.trials);
}

TEST(RateSlope, SweepValidation) {
    EXPECT_THROW(rate_slope(SchemeId::scheme2(), {1e2, 1e3}, 10, 1), InvalidSweep);
    EXPECT_THROW(rate_slope(SchemeId::scheme2(), {1e2, 1e2, 1e2}, 10, 1), InvalidSweep);
    EXPECT_THROW(rate_slope(SchemeId::scheme2(), {1e2, 1e3, 1e4, 1e3}, 10, 1), InvalidSweep);
    EXPECT_THROW(rate_slope(SchemeId::scheme2(), {1e2, 2e2, 4e2}, 10, 1), InvalidSweep);
    EXPECT_THROW(rate_slope(SchemeId::scheme2(), {-1e2, 1e3, 1e6}, 10, 1), InvalidSweep);
}

TEST(RateSlope, DeterministicForSeed) {
    const std::vector<double> powers{1e2, 1e3, 1e4, 1e5, 1e6};
    const SlopeEstimate a = rate_slope(SchemeId::scheme2(), powers, 50, 7);
    const SlopeEstimate b = rate_slope(SchemeId::scheme2(), powers, 50, 7);
    EXPECT_EQ(a.slope, b.slope);
    EXPECT_EQ(a.r_squared, b.r_squared);
}

TEST(RateSlope, PointsCarryMeanAndSpread) {
    const SlopeEstimate e = rate_slope(SchemeId::scheme2(), {1e2, 1e4, 1e6}, 40, 7);
    ASSERT_EQ(e.snr_points.size(), 3u);
    for (const auto& pt : e.snr_points) {
        EXPECT_GT(pt.mean_rate, 0.0);
        EXPECT_GE(pt.std_rate, 0.0);
    }
    EXPECT_GT(e.snr_points[2].mean_rate, e.snr_points[0].mean_rate);
}

TEST(RateSlope, SlopeInvariantToPrecoderNormalization) {
    const std::vector<double> powers{1e2, 1e3, 1e4, 1e5, 1e6};
    const SlopeEstimate norm = rate_slope(SchemeId::scheme2(), powers, 60, 21, {1.0, true});
    const SlopeEstimate raw = rate_slope(SchemeId::scheme2(), powers, 60, 21, {1.0, false});
    EXPECT_NEAR(norm.slope, raw.slope, 0.15);
    EXPECT_NEAR(norm.slope, 4.0 / 3.0, 0.12);
}

TEST(RateSlope, PowerConfigValidated) {
    const std::vector<double> powers{1e2, 1e4, 1e6};
    EXPECT_THROW(rate_slope(SchemeId::scheme2(), powers, 5, 1, {0.0, true}), InvalidDimension);
    EXPECT_THROW(rate_slope(SchemeId::scheme2(), powers, 5, 1, {-2.0, true}), InvalidDimension);
}

TEST(RateSlope, MonotoneInKUserPopulation) {
    const std::vector<double> powers{1e2, 1e3, 1e4, 1e5, 1e6};
    double prev = 0.0;
    for (int k = 2; k <= 5; ++k) {
        const SlopeEstimate e = rate_slope(SchemeId::k_user(k), powers, 30, 11);
        EXPECT_GE(e.slope, prev - 0.02) << "k=" << k;
        prev = e.slope;
    }
}

TEST(CompareBaselines, PaperValues) {
    const std::vector<BaselineRow> rows = compare_baselines(10);
    EXPECT_EQ(rows[0].k, 2);
    EXPECT_EQ(rows[0].scheme_bound, Rational(4, 3));
    EXPECT_EQ(rows[0].delayed_bound, Rational(6, 5));
    EXPECT_EQ(rows[1].k, 3);
    EXPECT_EQ(rows[1].scheme_bound, Rational(3, 2));
    EXPECT_EQ(rows[1].delayed_bound, Rational(5, 4));  // 4/3 - 2/24
    EXPECT_EQ(rows[8].k, 10);
    EXPECT_EQ(rows[8].scheme_bound, Rational(20, 11));
    EXPECT_GT(rows[8].scheme_bound, rows[8].delayed_bound);
}

TEST(CompareBaselines, StrictDominanceThroughFifty) {
    const std::vector<BaselineRow> rows = compare_baselines(50);
    ASSERT_EQ(rows.size(), 49u);
    for (const auto& row : rows) EXPECT_GT(row.scheme_bound, row.delayed_bound) << row.k;
}

TEST(CompareBaselines, SmallKRejected) {
    EXPECT_THROW(compare_baselines(1), InvalidDimension);
}

}  // namespace
}  // namespace xnet
