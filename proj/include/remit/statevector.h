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

#ifndef REMIT_STATEVECTOR_H_
#define REMIT_STATEVECTOR_H_

#include <iosfwd>
#include <span>
#include <vector>

#include "remit/core.h"
#include "remit/rng.h"

namespace remit {

enum class GateKind { kRX, kRZ, kCNOT, kX };

struct Gate {
    GateKind kind;
    std::size_t target = 0;
    std::size_t control = 0;  // CNOT only
    double angle = 0;         // RX / RZ only, radians

    static Gate rx(std::size_t q, double theta) { return {GateKind::kRX, q, 0, theta}; }
    static Gate rz(std::size_t q, double theta) { return {GateKind::kRZ, q, 0, theta}; }
    static Gate x(std::size_t q) { return {GateKind::kX, q, 0, 0}; }
    static Gate cnot(std::size_t control, std::size_t target) { return {GateKind::kCNOT, target, control, 0}; }

    bool operator==(const Gate&) const = default;
};

class Circuit {
 public:
    explicit Circuit(std::size_t qubit_count, std::vector<Gate> gates = {});

    std::size_t qubit_count() const { return qubit_count_; }
    const std::vector<Gate>& gates() const { return gates_; }
    void append(const Gate& gate);

    bool operator==(const Circuit&) const = default;

 private:
    std::size_t qubit_count_;
    std::vector<Gate> gates_;
};

/// Dense simulation is refused above this many qubits unless asked otherwise.
struct SimulatorLimits {
    std::size_t max_qubits = kDefaultMaxQubits;
};

StateVector apply_gate(StateVector state, const Gate& gate);
StateVector simulate(const Circuit& circuit, SimulatorLimits limits = {});

/// Number of angles consumed by a layered ansatz: two (RX, RZ) per qubit per
/// rotation column, with `layers + 1` columns.
std::size_t ansatz_parameter_count(std::size_t qubit_count, std::size_t layers);

/// Default entangling depth: two layers for three or more qubits, one for two.
std::size_t default_ansatz_layers(std::size_t qubit_count);

/// Hardware-efficient ansatz. Each layer is a rotation column (RX then RZ on
/// every qubit) followed by the CNOT chain q0->q1->...; a final rotation column
/// closes the circuit. Angles are consumed in gate order.
Circuit build_layered_ansatz(std::size_t qubit_count, std::size_t layers, std::span<const double> params);

/// The benchmark circuits: Q = 3 uses two layers, Q = 2 its one-layer sub-circuit.
Circuit build_ansatz(std::size_t qubit_count, std::span<const double> params);

/// Angles drawn uniformly from [0, 2pi).
std::vector<double> random_angles(std::size_t count, Rng& rng);

/// Sum_b |psi_b|^2 (-1)^{popcount(b & mask)}.
double exact_expectation(const StateVector& state, const PauliZString& op);
OutcomeDistribution outcome_distribution(const StateVector& state);

/// Draws `shots` independent outcomes from `dist`.
ShotHistogram sample_shots(const OutcomeDistribution& dist, std::uint64_t shots, Rng& rng);

/// Inverse-CDF sampler, reusable across many experiments on the same distribution.
class OutcomeSampler {
 public:
    explicit OutcomeSampler(const OutcomeDistribution& dist);
    std::uint64_t draw(Rng& rng) const;
    std::size_t qubit_count() const { return qubit_count_; }

 private:
    std::size_t qubit_count_;
    std::vector<double> cumulative_;
};

/// One gate per line ("RX 0 1.2345", "CNOT 0 1", ...) after a "QUBITS n" header.
/// Angles are written with 17 significant digits so parsing restores them exactly.
void write_circuit(std::ostream& out, const Circuit& circuit);
Circuit read_circuit(std::istream& in);

}  // namespace remit

#endif  // REMIT_STATEVECTOR_H_
