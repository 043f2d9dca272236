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

#include "remit/mitigation.h"

#include <gtest/gtest.h>

#include "oracles.h"
#include "remit/readout_noise.h"
#include "remit/statevector.h"

using namespace remit;
namespace rt = remit::testing;

TEST(Gamma, Factors) {
    EXPECT_DOUBLE_EQ(gamma(Factor::kZ, 0.1, 0.2), 0.7);
    EXPECT_DOUBLE_EQ(gamma(Factor::kIdentity, 0.1, 0.25), -0.15);
    EXPECT_DOUBLE_EQ(identity_offset(0.1, 0.25), 0.15);
}

TEST(Omega, SingleQubitEntries) {
    double p0 = 0.04, p1 = 0.11;
    auto w = build_omega(BitFlipModel::uniform(1, p0, p1));
    EXPECT_EQ(w(0, 0), 1.0);
    EXPECT_EQ(w(0, 1), 0.0);
    EXPECT_NEAR(w(1, 0), p1 - p0, 1e-16);
    EXPECT_NEAR(w(1, 1), 1 - p0 - p1, 1e-16);
}

TEST(Omega, MatchesChannelExpansion) {
    Rng rng(40);
    for (std::size_t q = 1; q <= 4; q++) {
        for (int trial = 0; trial < 4; trial++) {
            auto model = rt::random_model(q, rng, 0.0, 0.3);
            auto w = build_omega(model);
            auto want = rt::omega_from_channel(model);
            for (std::uint64_t r = 0; r < w.dimension(); r++) {
                for (std::uint64_t c = 0; c < w.dimension(); c++) {
                    ASSERT_NEAR(w(r, c), want[r][c], 1e-13) << "q=" << q << " r=" << r << " c=" << c;
                }
            }
        }
    }
}

TEST(Omega, LowerTriangularOnSubsets) {
    Rng rng(41);
    auto w = build_omega(rt::random_model(4, rng, 0.01, 0.2));
    for (std::uint64_t r = 0; r < 16; r++) {
        for (std::uint64_t c = 0; c < 16; c++) {
            if ((c & ~r) != 0) {
                EXPECT_EQ(w(r, c), 0.0);
            }
            if (c > r) {
                EXPECT_EQ(w(r, c), 0.0);
            }
        }
    }
}

TEST(Omega, RejectsSingularModel) {
    EXPECT_THROW(build_omega(BitFlipModel::uniform(2, 0.3, 0.7)), NonInvertibleModel);
    std::vector<double> noisy{1, 0.1, 0.1, 0.0};
    EXPECT_THROW(mitigate(noisy, BitFlipModel::uniform(2, 0.5, 0.5)), NonInvertibleModel);
}

TEST(Mitigate, RecoversExactExpectations) {
    Rng rng(42);
    for (std::size_t q = 1; q <= 5; q++) {
        for (int trial = 0; trial < 10; trial++) {
            auto model = rt::random_model(q, rng, 0.0, 0.25);
            auto state = rt::random_state(q, rng);
            auto x = mitigate(noisy_expectations_exact(state, model), model);
            EXPECT_EQ(x[0], 1.0);
            for (std::uint64_t m = 0; m < x.size(); m++) {
                EXPECT_NEAR(x[m], exact_expectation(state, PauliZString(q, m)), 1e-12);
            }
        }
    }
}

TEST(Mitigate, DeterministicFlipIsUndone) {
    // p0 = p1 = 1 is a perfect NOT: every Z-string picks up (-1)^weight.
    auto model = BitFlipModel::uniform(2, 1.0, 1.0);
    std::vector<double> noisy{1, -0.3, -0.5, 0.2};
    auto x = mitigate(noisy, model);
    EXPECT_NEAR(x[1], 0.3, 1e-15);
    EXPECT_NEAR(x[2], 0.5, 1e-15);
    EXPECT_NEAR(x[3], 0.2, 1e-15);
}

TEST(Mitigate, ValidatesInput) {
    auto model = BitFlipModel::uniform(2, 0.1, 0.1);
    EXPECT_THROW(mitigate(std::vector<double>{0.9, 0, 0, 0}, model), std::invalid_argument);
    EXPECT_THROW(mitigate(std::vector<double>{1, 0, 0}, model), std::invalid_argument);
}

TEST(Mitigate, FlagsOutOfRangeResults) {
    // Finite-shot noisy data can mitigate to values beyond [-1, 1]; they are
    // reported, not clipped.
    auto model = BitFlipModel::uniform(1, 0.1, 0.1);
    auto x = mitigate(std::vector<double>{1, 0.9}, model);
    EXPECT_NEAR(x[1], 1.125, 1e-15);
    EXPECT_EQ(out_of_range_operators(x), std::vector<std::uint64_t>{1});
}

TEST(Expansion, CoefficientsAreRowsOfInverseOmega) {
    Rng rng(43);
    auto model = rt::random_model(3, rng, 0.01, 0.2);
    auto inv = rt::invert(rt::omega_from_channel(model));
    for (std::uint64_t op = 0; op < 8; op++) {
        for (std::uint64_t s = 0; s < 8; s++) {
            EXPECT_NEAR(expansion_coefficient(model, op, s), inv[op][s], 1e-12) << op << " " << s;
        }
    }
}

TEST(Truncation, FullOrderEqualsSolve) {
    Rng rng(44);
    for (std::size_t q = 1; q <= 4; q++) {
        auto model = rt::random_model(q, rng, 0.0, 0.2);
        auto noisy = noisy_expectations_exact(rt::random_state(q, rng), model);
        auto full = mitigate(noisy, model);
        for (std::uint64_t m = 0; m < full.size(); m++) {
            EXPECT_NEAR(mitigate_truncated(PauliZString(q, m), noisy, model, q), full[m], 1e-13);
        }
    }
}

TEST(Truncation, SymmetricNoiseNeedsNoCorrectionTerms) {
    Rng rng(45);
    auto model = rt::random_symmetric_model(3, rng, 0.01, 0.2);
    auto state = rt::random_state(3, rng);
    auto noisy = noisy_expectations_exact(state, model);
    for (std::uint64_t m = 0; m < 8; m++) {
        EXPECT_NEAR(mitigate_truncated(PauliZString(3, m), noisy, model, 0),
                    exact_expectation(state, PauliZString(3, m)), 1e-13);
    }
}

TEST(Truncation, ZeroOrderRescalesOnly) {
    auto model = BitFlipModel::from_probabilities(std::vector<double>{0.1, 0.05}, std::vector<double>{0.02, 0.2});
    std::vector<double> noisy{1, 0.4, -0.2, 0.3};
    double g0 = 1 - 0.1 - 0.02, g1 = 1 - 0.05 - 0.2;
    EXPECT_NEAR(mitigate_truncated(PauliZString(2, 3), noisy, model, 0), 0.3 / (g0 * g1), 1e-15);
    EXPECT_THROW(mitigate_truncated(PauliZString(2, 3), noisy, model, 3), std::invalid_argument);
}
