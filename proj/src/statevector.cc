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

#include "remit/statevector.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace remit {

namespace {

void check_gate(const Gate& gate, std::size_t qubit_count) {
    if (gate.target >= qubit_count) {
        throw std::out_of_range("gate target " + std::to_string(gate.target) + " out of range for " +
                                std::to_string(qubit_count) + " qubits");
    }
    if (gate.kind == GateKind::kCNOT) {
        if (gate.control >= qubit_count) {
            throw std::out_of_range("CNOT control " + std::to_string(gate.control) + " out of range");
        }
        if (gate.control == gate.target) {
            throw std::invalid_argument("CNOT control equals target");
        }
    }
}

const char* gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::kRX:
            return "RX";
        case GateKind::kRZ:
            return "RZ";
        case GateKind::kCNOT:
            return "CNOT";
        case GateKind::kX:
            return "X";
    }
    return "?";
}

}  // namespace

Circuit::Circuit(std::size_t qubit_count, std::vector<Gate> gates) : qubit_count_(qubit_count) {
    if (qubit_count == 0 || qubit_count > 62) {
        throw std::invalid_argument("circuit qubit count must be in [1, 62]");
    }
    for (const auto& g : gates) {
        append(g);
    }
}

void Circuit::append(const Gate& gate) {
    check_gate(gate, qubit_count_);
    gates_.push_back(gate);
}

StateVector apply_gate(StateVector state, const Gate& gate) {
    check_gate(gate, state.qubit_count());
    using C = StateVector::Amplitude;
    std::vector<C> amps(state.amplitudes().begin(), state.amplitudes().end());
    const std::uint64_t n = amps.size();
    const std::uint64_t t = std::uint64_t{1} << gate.target;
    switch (gate.kind) {
        case GateKind::kX:
            for (std::uint64_t i = 0; i < n; i++) {
                if (!(i & t)) {
                    std::swap(amps[i], amps[i | t]);
                }
            }
            break;
        case GateKind::kRX: {
            double c = std::cos(gate.angle / 2);
            double s = std::sin(gate.angle / 2);
            C off(0, -s);
            for (std::uint64_t i = 0; i < n; i++) {
                if (!(i & t)) {
                    C a0 = amps[i];
                    C a1 = amps[i | t];
                    amps[i] = c * a0 + off * a1;
                    amps[i | t] = off * a0 + c * a1;
                }
            }
            break;
        }
        case GateKind::kRZ: {
            C lo = std::polar(1.0, -gate.angle / 2);
            C hi = std::polar(1.0, gate.angle / 2);
            for (std::uint64_t i = 0; i < n; i++) {
                amps[i] *= (i & t) ? hi : lo;
            }
            break;
        }
        case GateKind::kCNOT: {
            const std::uint64_t c = std::uint64_t{1} << gate.control;
            for (std::uint64_t i = 0; i < n; i++) {
                if ((i & c) && !(i & t)) {
                    std::swap(amps[i], amps[i | t]);
                }
            }
            break;
        }
    }
    return StateVector::from_amplitudes(std::move(amps));
}

StateVector simulate(const Circuit& circuit, SimulatorLimits limits) {
    if (circuit.qubit_count() > limits.max_qubits) {
        throw std::invalid_argument("circuit has " + std::to_string(circuit.qubit_count()) +
                                    " qubits; dense simulation is capped at " + std::to_string(limits.max_qubits));
    }
    StateVector state = StateVector::basis(circuit.qubit_count());
    for (const auto& g : circuit.gates()) {
        state = apply_gate(std::move(state), g);
    }
    return state;
}

std::size_t ansatz_parameter_count(std::size_t qubit_count, std::size_t layers) {
    return 2 * qubit_count * (layers + 1);
}

std::size_t default_ansatz_layers(std::size_t qubit_count) { return qubit_count >= 3 ? 2 : 1; }

Circuit build_layered_ansatz(std::size_t qubit_count, std::size_t layers, std::span<const double> params) {
    std::size_t expected = ansatz_parameter_count(qubit_count, layers);
    if (params.size() != expected) {
        throw std::invalid_argument("ansatz with " + std::to_string(qubit_count) + " qubits and " +
                                    std::to_string(layers) + " layers takes " + std::to_string(expected) +
                                    " angles, got " + std::to_string(params.size()));
    }
    Circuit circuit(qubit_count);
    std::size_t k = 0;
    auto rotation_column = [&]() {
        for (std::size_t q = 0; q < qubit_count; q++) {
            circuit.append(Gate::rx(q, params[k++]));
            circuit.append(Gate::rz(q, params[k++]));
        }
    };
    for (std::size_t layer = 0; layer < layers; layer++) {
        rotation_column();
        for (std::size_t q = 0; q + 1 < qubit_count; q++) {
            circuit.append(Gate::cnot(q, q + 1));
        }
    }
    rotation_column();
    return circuit;
}

Circuit build_ansatz(std::size_t qubit_count, std::span<const double> params) {
    if (qubit_count != 2 && qubit_count != 3) {
        throw std::invalid_argument("benchmark ansatz is defined for 2 or 3 qubits");
    }
    return build_layered_ansatz(qubit_count, default_ansatz_layers(qubit_count), params);
}

std::vector<double> random_angles(std::size_t count, Rng& rng) {
    std::vector<double> out(count);
    for (auto& a : out) {
        a = 2 * std::numbers::pi * uniform01(rng);
    }
    return out;
}

double exact_expectation(const StateVector& state, const PauliZString& op) {
    if (op.qubit_count() != state.qubit_count()) {
        throw std::invalid_argument("operator and state qubit counts differ");
    }
    if (op.is_identity()) {
        return 1.0;
    }
    double total = 0;
    auto amps = state.amplitudes();
    for (std::uint64_t b = 0; b < amps.size(); b++) {
        total += std::norm(amps[b]) * parity_sign(b, op.z_mask());
    }
    return total;
}

OutcomeDistribution outcome_distribution(const StateVector& state) {
    std::vector<double> probs(state.dimension());
    double total = 0;
    for (std::uint64_t b = 0; b < probs.size(); b++) {
        probs[b] = std::norm(state[b]);
        total += probs[b];
    }
    for (auto& p : probs) {
        p /= total;
    }
    return {state.qubit_count(), std::move(probs)};
}

OutcomeSampler::OutcomeSampler(const OutcomeDistribution& dist)
    : qubit_count_(dist.qubit_count()), cumulative_(dist.probabilities().size()) {
    double acc = 0;
    auto probs = dist.probabilities();
    for (std::size_t k = 0; k < probs.size(); k++) {
        acc += probs[k];
        cumulative_[k] = acc;
    }
    // Outcomes with zero probability must never be drawn, including at the top end.
    std::size_t last = probs.size();
    while (last > 0 && probs[last - 1] == 0) {
        last--;
    }
    for (std::size_t k = last - 1; k < cumulative_.size(); k++) {
        cumulative_[k] = 2.0;
    }
}

std::uint64_t OutcomeSampler::draw(Rng& rng) const {
    double u = uniform01(rng);
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return static_cast<std::uint64_t>(it - cumulative_.begin());
}

ShotHistogram sample_shots(const OutcomeDistribution& dist, std::uint64_t shots, Rng& rng) {
    if (shots == 0) {
        throw std::invalid_argument("shot count must be at least 1");
    }
    OutcomeSampler sampler(dist);
    std::vector<std::uint64_t> counts(dist.probabilities().size());
    for (std::uint64_t k = 0; k < shots; k++) {
        counts[sampler.draw(rng)]++;
    }
    return {dist.qubit_count(), std::move(counts)};
}

void write_circuit(std::ostream& out, const Circuit& circuit) {
    out << "QUBITS " << circuit.qubit_count() << '\n';
    for (const auto& g : circuit.gates()) {
        out << gate_name(g.kind);
        switch (g.kind) {
            case GateKind::kRX:
            case GateKind::kRZ: {
                std::ostringstream angle;
                angle << std::setprecision(17) << g.angle;
                out << ' ' << g.target << ' ' << angle.str();
                break;
            }
            case GateKind::kX:
                out << ' ' << g.target;
                break;
            case GateKind::kCNOT:
                out << ' ' << g.control << ' ' << g.target;
                break;
        }
        out << '\n';
    }
}

Circuit read_circuit(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::optional<Circuit> circuit;
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("circuit line " + std::to_string(line_no) + ": " + why);
    };
    while (std::getline(in, line)) {
        line_no++;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        std::string op;
        if (!(fields >> op)) {
            continue;
        }
        if (!circuit) {
            std::size_t n = 0;
            if (op != "QUBITS" || !(fields >> n)) {
                fail("expected 'QUBITS n' header");
            }
            circuit.emplace(n);
            continue;
        }
        std::size_t a = 0, b = 0;
        if (op == "RX" || op == "RZ") {
            std::string angle_text;
            if (!(fields >> a >> angle_text)) {
                fail("expected '" + op + " qubit angle'");
            }
            double angle = std::stod(angle_text);
            circuit->append(op == "RX" ? Gate::rx(a, angle) : Gate::rz(a, angle));
        } else if (op == "X") {
            if (!(fields >> a)) {
                fail("expected 'X qubit'");
            }
            circuit->append(Gate::x(a));
        } else if (op == "CNOT") {
            if (!(fields >> a >> b)) {
                fail("expected 'CNOT control target'");
            }
            circuit->append(Gate::cnot(a, b));
        } else {
            fail("unknown gate '" + op + "'");
        }
    }
    if (!circuit) {
        throw std::invalid_argument("empty circuit file");
    }
    return *std::move(circuit);
}

}  // namespace remit
