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

#ifndef REMIT_READOUT_NOISE_H_
#define REMIT_READOUT_NOISE_H_

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "json.hpp"
#include "remit/core.h"
#include "remit/rng.h"

namespace remit {

/// Flips each bit of `outcome` independently: a 0 on qubit q becomes 1 with
/// probability p0(q), a 1 becomes 0 with probability p1(q).
std::uint64_t flip_outcome(std::uint64_t outcome, const BitFlipModel& model, Rng& rng);

/// Applies flip_outcome to every shot of `hist`. Shots are processed in
/// ascending outcome order so the result is a function of (hist, rng state).
ShotHistogram apply_readout_noise(const ShotHistogram& hist, const BitFlipModel& model, Rng& rng);

/// Applies the single-qubit stochastic matrix [[1-p0, p1], [p0, 1-p1]] on `qubit`.
OutcomeDistribution apply_qubit_channel(const OutcomeDistribution& dist, std::size_t qubit, double p0, double p1);

/// The full product channel, applied qubit by qubit.
OutcomeDistribution channel_exact(const OutcomeDistribution& dist, const BitFlipModel& model);

/// Infinite-shot limit of the noisy estimator of `op`.
double noisy_expectation_exact(const StateVector& state, const PauliZString& op, const BitFlipModel& model);

/// Noisy expectations of all 2^Q operators.
std::vector<double> noisy_expectations_exact(const StateVector& state, const BitFlipModel& model);

// Model files: {"qubits": [{"qubit", "p0", "p1", "shots_used", "stderr0", "stderr1"}, ...]}.
nlohmann::json model_to_json(const BitFlipModel& model);
BitFlipModel model_from_json(const nlohmann::json& j);
void write_model(const std::filesystem::path& path, const BitFlipModel& model);
BitFlipModel read_model(const std::filesystem::path& path);

}  // namespace remit

#endif  // REMIT_READOUT_NOISE_H_
