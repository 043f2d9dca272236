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

#include "remit/calibration.h"

#include <gtest/gtest.h>

#include "remit/backend.h"
#include "remit/statevector.h"

using namespace remit;

TEST(Calibration, Circuits) {
    EXPECT_TRUE(all_zeros_circuit(3).gates().empty());
    auto ones = simulate(all_ones_circuit(3));
    EXPECT_NEAR(std::norm(ones[7]), 1.0, 1e-15);
}

TEST(Calibration, ExactBackendRecoversModelExactly) {
    auto truth =
        BitFlipModel::from_probabilities(std::vector<double>{0.01, 0.07, 0.12}, std::vector<double>{0.03, 0.0, 0.2});
    Rng rng(0);
    auto est = calibrate(ExactChannelBackend(truth), 3, 1000, rng);
    for (std::size_t q = 0; q < 3; q++) {
        EXPECT_NEAR(est.p0(q), truth.p0(q), 1e-14);
        EXPECT_NEAR(est.p1(q), truth.p1(q), 1e-14);
        EXPECT_EQ(est.qubit(q).shots_used, 1000u);
        ASSERT_TRUE(est.qubit(q).stderr0.has_value());
        EXPECT_NEAR(*est.qubit(q).stderr0, std::sqrt(truth.p0(q) * (1 - truth.p0(q)) / 1000), 1e-14);
    }
}

TEST(Calibration, SampledEstimatesWithinStandardErrors) {
    auto truth = BitFlipModel::from_probabilities(std::vector<double>{0.02, 0.05, 0.08, 0.04},
                                                  std::vector<double>{0.06, 0.03, 0.1, 0.09});
    Rng rng(1234);
    const std::uint64_t shots = 50000;
    auto est = calibrate(SampledReadoutBackend(truth), 4, shots, rng);
    for (std::size_t q = 0; q < 4; q++) {
        double s0 = std::sqrt(truth.p0(q) * (1 - truth.p0(q)) / shots);
        double s1 = std::sqrt(truth.p1(q) * (1 - truth.p1(q)) / shots);
        EXPECT_NEAR(est.p0(q), truth.p0(q), 5 * s0);
        EXPECT_NEAR(est.p1(q), truth.p1(q), 5 * s1);
    }
}

TEST(Calibration, NoiselessDeviceGivesZeroErrors) {
    Rng rng(2);
    auto est = calibrate(NoiselessBackend(), 2, 100, rng);
    EXPECT_TRUE(est.is_noiseless());
}

TEST(Calibration, RefusesNonInvertibleResult) {
    Rng rng(3);
    ExactChannelBackend backend(BitFlipModel::uniform(2, 0.5, 0.5));
    EXPECT_THROW(calibrate(backend, 2, 100, rng), NonInvertibleModel);
    EXPECT_THROW(calibrate(NoiselessBackend(), 2, 0, rng), std::invalid_argument);
}
