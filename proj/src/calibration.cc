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

#include <cmath>

namespace remit {

namespace {

// Probability that bit q of an outcome drawn from `freq` equals `value`.
double marginal(const OutcomeDistribution& freq, std::size_t q, bool value) {
    std::uint64_t bit = std::uint64_t{1} << q;
    double total = 0;
    for (std::uint64_t b = 0; b < freq.probabilities().size(); b++) {
        if (static_cast<bool>(b & bit) == value) {
            total += freq[b];
        }
    }
    return total;
}

}  // namespace

Circuit all_zeros_circuit(std::size_t qubit_count) { return Circuit(qubit_count); }

Circuit all_ones_circuit(std::size_t qubit_count) {
    Circuit c(qubit_count);
    for (std::size_t q = 0; q < qubit_count; q++) {
        c.append(Gate::x(q));
    }
    return c;
}

BitFlipModel calibrate(const Backend& backend, std::size_t qubit_count, std::uint64_t shots_per_state, Rng& rng) {
    if (shots_per_state == 0) {
        throw std::invalid_argument("calibration needs at least one shot per state");
    }
    auto zeros = backend.run(all_zeros_circuit(qubit_count), shots_per_state, rng).observed;
    auto ones = backend.run(all_ones_circuit(qubit_count), shots_per_state, rng).observed;

    double n = static_cast<double>(shots_per_state);
    std::vector<QubitReadout> qubits(qubit_count);
    for (std::size_t q = 0; q < qubit_count; q++) {
        auto& r = qubits[q];
        r.p0 = marginal(zeros, q, true);
        r.p1 = marginal(ones, q, false);
        r.shots_used = shots_per_state;
        r.stderr0 = std::sqrt(r.p0 * (1 - r.p0) / n);
        r.stderr1 = std::sqrt(r.p1 * (1 - r.p1) / n);
        if (r.p0 + r.p1 >= 1) {
            throw NonInvertibleModel("non-invertible noise model: calibrated p0 + p1 = " + std::to_string(r.p0 + r.p1) +
                                     " >= 1 on qubit " + std::to_string(q));
        }
    }
    return BitFlipModel(std::move(qubits));
}

}  // namespace remit
