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

#include "remit/backend.h"

#include "remit/readout_noise.h"

namespace remit {

Execution Backend::run(const Circuit& circuit, std::uint64_t shots, Rng& rng) const {
    return execute(outcome_distribution(simulate(circuit)), shots, rng);
}

Execution NoiselessBackend::execute(const OutcomeDistribution& prepared, std::uint64_t shots, Rng& rng) const {
    auto freq = sample_shots(prepared, shots, rng).frequencies();
    return {freq, freq};
}

Execution SampledReadoutBackend::execute(const OutcomeDistribution& prepared, std::uint64_t shots, Rng& rng) const {
    if (model_.qubit_count() != prepared.qubit_count()) {
        throw BackendError("device model has " + std::to_string(model_.qubit_count()) + " qubits, circuit has " +
                           std::to_string(prepared.qubit_count()));
    }
    auto ideal = sample_shots(prepared, shots, rng);
    auto observed = apply_readout_noise(ideal, model_, rng);
    return {ideal.frequencies(), observed.frequencies()};
}

Execution ExactChannelBackend::execute(const OutcomeDistribution& prepared, std::uint64_t shots, Rng&) const {
    if (shots == 0) {
        throw std::invalid_argument("shot count must be at least 1");
    }
    if (model_.qubit_count() != prepared.qubit_count()) {
        throw BackendError("device model has " + std::to_string(model_.qubit_count()) + " qubits, circuit has " +
                           std::to_string(prepared.qubit_count()));
    }
    return {prepared, channel_exact(prepared, model_)};
}

}  // namespace remit
