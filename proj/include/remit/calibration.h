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

#ifndef REMIT_CALIBRATION_H_
#define REMIT_CALIBRATION_H_

#include "remit/backend.h"
#include "remit/core.h"

namespace remit {

inline constexpr std::uint64_t kDefaultCalibrationShots = 8192;

/// Circuits used for calibration: nothing (all qubits |0>) and X on every qubit.
Circuit all_zeros_circuit(std::size_t qubit_count);
Circuit all_ones_circuit(std::size_t qubit_count);

/// Estimates per-qubit readout errors by measuring |0...0> and |1...1> with
/// `shots_per_state` shots each. p0(q) is the fraction of all-zeros shots with
/// bit q read as 1; p1(q) the fraction of all-ones shots with bit q read as 0.
/// Binomial standard errors sqrt(p(1-p)/shots) are attached to every estimate.
///
/// Throws NonInvertibleModel if any qubit has p0 + p1 >= 1.
BitFlipModel calibrate(const Backend& backend, std::size_t qubit_count, std::uint64_t shots_per_state, Rng& rng);

}  // namespace remit

#endif  // REMIT_CALIBRATION_H_
