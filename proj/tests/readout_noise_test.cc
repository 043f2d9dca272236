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

#include "remit/readout_noise.h"

#include <gtest/gtest.h>

#include <filesystem>

#include "oracles.h"
#include "remit/backend.h"
#include "remit/statevector.h"

using namespace remit;
namespace rt = remit::testing;

TEST(Channel, MatchesDenseTransitionMatrix) {
    Rng rng(21);
    for (std::size_t q = 1; q <= 4; q++) {
        for (int trial = 0; trial < 5; trial++) {
            auto model = rt::random_model(q, rng, 0.0, 0.4);
            auto p = rt::probabilities(rt::random_state(q, rng));
            auto want = rt::apply_matrix(rt::transition_matrix(model), p);
            auto got = channel_exact(OutcomeDistribution(q, p), model);
            for (std::size_t b = 0; b < want.size(); b++) {
                EXPECT_NEAR(got[b], want[b], 1e-14);
            }
        }
    }
}

TEST(Channel, SingleQubitNoisyZ) {
    // A flip-averaged noisy Z is (1 - p0 - p1) <Z> + (p1 - p0).
    Rng rng(4);
    for (int trial = 0; trial < 50; trial++) {
        auto model = rt::random_model(1, rng, 0.0, 0.5);
        auto state = rt::random_state(1, rng);
        double z = exact_expectation(state, PauliZString(1, 1));
        double want = (1 - model.p0(0) - model.p1(0)) * z + (model.p1(0) - model.p0(0));
        EXPECT_NEAR(noisy_expectation_exact(state, PauliZString(1, 1), model), want, 1e-14);
    }
}

TEST(Channel, NoiselessIsIdentity) {
    Rng rng(9);
    auto state = rt::random_state(3, rng);
    auto e = noisy_expectations_exact(state, BitFlipModel::noiseless(3));
    for (std::uint64_t m = 0; m < 8; m++) {
        EXPECT_NEAR(e[m], exact_expectation(state, PauliZString(3, m)), 1e-14);
    }
}

TEST(Channel, ProbabilitiesStayNormalized) {
    Rng rng(10);
    auto model = rt::random_model(3, rng, 0.0, 1.0);
    auto out = channel_exact(outcome_distribution(rt::random_state(3, rng)), model);
    double total = 0;
    for (double p : out.probabilities()) {
        EXPECT_GE(p, 0.0);
        total += p;
    }
    EXPECT_NEAR(total, 1.0, 1e-14);
}

TEST(Flips, DeterministicEdgeCases) {
    Rng rng(1);
    auto never = BitFlipModel::noiseless(3);
    auto always = BitFlipModel::uniform(3, 1.0, 1.0);
    for (std::uint64_t b = 0; b < 8; b++) {
        EXPECT_EQ(flip_outcome(b, never, rng), b);
        EXPECT_EQ(flip_outcome(b, always, rng), b ^ 7u);
    }
}

TEST(Flips, NoiselessModelLeavesHistogramAndStreamUntouched) {
    ShotHistogram h(2, {10, 20, 30, 40});
    Rng a(5), b(5);
    EXPECT_EQ(apply_readout_noise(h, BitFlipModel::noiseless(2), a), h);
    EXPECT_EQ(a(), b());
}

TEST(Flips, SampledRatesMatchChannel) {
    // Pushes a fixed histogram through per-shot flips and compares the observed
    // outcome frequencies with the exact channel applied to the same histogram.
    Rng rng(77);
    auto model =
        BitFlipModel::from_probabilities(std::vector<double>{0.02, 0.1, 0.2}, std::vector<double>{0.15, 0.05, 0.3});
    ShotHistogram h(3, {50000, 0, 30000, 0, 0, 20000, 0, 100000});
    auto noisy = apply_readout_noise(h, model, rng);
    EXPECT_EQ(noisy.shots(), h.shots());
    auto want = channel_exact(h.frequencies(), model);
    double n = static_cast<double>(h.shots());
    for (std::uint64_t b = 0; b < 8; b++) {
        double p = want[b];
        EXPECT_NEAR(noisy[b] / n, p, 5 * std::sqrt(p * (1 - p) / n) + 1e-12) << b;
    }
}

TEST(Backends, NoiselessSampledMatchesNoiselessBackend) {
    auto dist = outcome_distribution(simulate(build_ansatz(2, std::vector<double>(8, 0.9))));
    Rng a(31), b(31);
    auto x = NoiselessBackend().execute(dist, 512, a);
    auto y = SampledReadoutBackend(BitFlipModel::noiseless(2)).execute(dist, 512, b);
    for (std::uint64_t k = 0; k < 4; k++) {
        EXPECT_EQ(x.observed[k], y.observed[k]);
        EXPECT_EQ(x.ideal[k], y.observed[k]);
    }
}

TEST(Backends, ExactChannelIsDeterministic) {
    Rng rng(3);
    auto model = rt::random_model(2, rng);
    auto dist = outcome_distribution(rt::random_state(2, rng));
    ExactChannelBackend backend(model);
    Rng a(1), b(2);
    auto x = backend.execute(dist, 64, a);
    auto y = backend.execute(dist, 64, b);
    auto want = channel_exact(dist, model);
    for (std::uint64_t k = 0; k < 4; k++) {
        EXPECT_EQ(x.observed[k], y.observed[k]);
        EXPECT_DOUBLE_EQ(x.observed[k], want[k]);
        EXPECT_DOUBLE_EQ(x.ideal[k], dist[k]);
    }
}

TEST(Backends, RejectMismatchedModel) {
    SampledReadoutBackend backend(BitFlipModel::uniform(3, 0.1, 0.1));
    Rng rng(0);
    EXPECT_THROW(backend.execute(OutcomeDistribution(2, {1, 0, 0, 0}), 10, rng), std::exception);
}

TEST(ModelFiles, JsonRoundTrip) {
    std::vector<QubitReadout> r(2);
    r[0] = {0.0123456789012345, 0.2, 1000, 0.001, 0.002};
    r[1].p0 = 0.05;
    BitFlipModel model(r);
    EXPECT_EQ(model_from_json(model_to_json(model)), model);

    auto path = std::filesystem::temp_directory_path() / "remit_model_roundtrip.json";
    write_model(path, model);
    EXPECT_EQ(read_model(path), model);
    std::filesystem::remove(path);
}

TEST(ModelFiles, RejectsMalformedDocuments) {
    EXPECT_THROW(model_from_json(nlohmann::json::parse(R"({"qubits": []})")), std::exception);
    EXPECT_THROW(model_from_json(nlohmann::json::parse(R"({"qubits": [{"qubit": 0, "p0": 2, "p1": 0}]})")),
                 std::exception);
    EXPECT_THROW(read_model("/nonexistent/model.json"), std::exception);
}
