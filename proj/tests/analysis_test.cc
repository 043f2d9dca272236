// Copyright 2026 The Remit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "remit/analysis.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace remit;

TEST(PowerLaw, RecoversExactLaw) {
    std::vector<CurvePoint> pts;
    for (int k = 6; k <= 13; k++) {
        double s = std::ldexp(1.0, k);
        pts.push_back({s, 3.0 * std::pow(s, -0.5)});
    }
    auto f = fit_power_law(pts);
    EXPECT_NEAR(f.alpha, -0.5, 1e-12);
    EXPECT_NEAR(f.prefactor(), 3.0, 1e-12);
    EXPECT_NEAR(f.residual, 0.0, 1e-12);
}

TEST(PowerLaw, ResidualIsLogRms) {
    // Alternating multiplicative noise e^{+-0.1} around a straight line in
    // log space over a symmetric grid leaves slope and intercept unchanged.
    std::vector<CurvePoint> pts;
    for (int k = 0; k < 4; k++) {
        double s = std::ldexp(1.0, k);
        double wiggle = (k == 0 || k == 3) ? 0.1 : -0.1;
        pts.push_back({s, std::exp(-0.3 * std::log(s) + 1 + wiggle)});
    }
    auto f = fit_power_law(pts);
    EXPECT_NEAR(f.alpha, -0.3, 1e-12);
    EXPECT_NEAR(f.beta, 1.0, 1e-12);
    EXPECT_NEAR(f.residual, 0.1, 1e-12);
}

TEST(PowerLaw, RejectsDegenerateInput) {
    std::vector<CurvePoint> two{{1, 1}, {2, 0.5}};
    EXPECT_THROW(fit_power_law(two), std::invalid_argument);
    std::vector<CurvePoint> same_s{{4, 1}, {4, 0.5}, {4, 0.2}};
    EXPECT_THROW(fit_power_law(same_s), std::invalid_argument);
    std::vector<CurvePoint> zero{{1, 1}, {2, 0}, {4, 0.2}};
    EXPECT_THROW(fit_power_law(zero), std::invalid_argument);
}

TEST(Histogram, KnownSample) {
    std::vector<double> v{2, 4, 4, 4, 5, 5, 7, 9};
    auto h = histogram_stats(v);
    EXPECT_DOUBLE_EQ(h.mean, 5.0);
    EXPECT_DOUBLE_EQ(h.gaussian_mean, 5.0);
    EXPECT_NEAR(h.gaussian_sigma, 2.0, 1e-15);
    EXPECT_NEAR(h.sample_std, std::sqrt(32.0 / 7.0), 1e-15);
    EXPECT_THROW(histogram_stats(std::vector<double>{1.0}), std::invalid_argument);
}

TEST(Histogram, GaussianFitOnLargeSample) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g(0.25, 0.04);
    std::vector<double> v(200000);
    for (auto& x : v) {
        x = g(rng);
    }
    auto h = histogram_stats(v);
    EXPECT_NEAR(h.gaussian_mean, 0.25, 5 * 0.04 / std::sqrt(200000.0));
    EXPECT_NEAR(h.gaussian_sigma, 0.04, 5 * 0.04 / std::sqrt(400000.0));
}

TEST(MeanError, StandardError) {
    std::vector<double> v{1, 2, 3, 4};
    auto m = mean_with_error(v);
    EXPECT_DOUBLE_EQ(m.mean, 2.5);
    EXPECT_NEAR(m.standard_error, std::sqrt(5.0 / 3.0 / 4.0), 1e-15);
}

TEST(SampleVarianceError, GaussianApproximation) {
    EXPECT_NEAR(sample_variance_standard_error(2.0, 51), 2.0 * std::sqrt(2.0 / 50.0), 1e-15);
    EXPECT_THROW(sample_variance_standard_error(1.0, 1), std::invalid_argument);
}

TEST(SampleVarianceError, MatchesSpreadOfSimulatedVariances) {
    // Draw many samples of size N from a unit Gaussian; the spread of their
    // sample variances should match the approximation.
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g;
    const int n = 400, reps = 4000;
    std::vector<double> vars;
    for (int r = 0; r < reps; r++) {
        std::vector<double> x(n);
        for (auto& y : x) {
            y = g(rng);
        }
        auto h = histogram_stats(x);
        vars.push_back(h.sample_std * h.sample_std);
    }
    auto spread = histogram_stats(vars).sample_std;
    EXPECT_NEAR(spread, sample_variance_standard_error(1.0, n), 0.05 * spread);
}

TEST(Compare, FlagsLargeDeviations) {
    std::vector<VarianceObservation> meas{{64, 0.0101, 10001}, {1024, 0.0013, 10001}};
    std::vector<CurvePoint> pred{{64, 0.01}, {1024, 0.001}};
    auto c = compare_variances(meas, pred);
    ASSERT_EQ(c.size(), 2u);
    double se = 0.0101 * std::sqrt(2.0 / 10000);
    EXPECT_NEAR(c[0].z_score, 0.0001 / se, 1e-9);
    EXPECT_FALSE(c[0].flagged);
    EXPECT_TRUE(c[1].flagged);
    EXPECT_NEAR(c[1].ratio, 1.3, 1e-12);
}

TEST(Compare, GridMismatch) {
    std::vector<VarianceObservation> meas{{64, 0.01, 100}};
    std::vector<CurvePoint> wrong_s{{128, 0.01}};
    std::vector<CurvePoint> wrong_len{{64, 0.01}, {128, 0.01}};
    EXPECT_THROW(compare_variances(meas, wrong_s), std::invalid_argument);
    EXPECT_THROW(compare_variances(meas, wrong_len), std::invalid_argument);
}
