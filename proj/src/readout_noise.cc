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

#include <fstream>

#include "remit/statevector.h"

namespace remit {

namespace {

void check_model_size(const BitFlipModel& model, std::size_t qubit_count) {
    if (model.qubit_count() != qubit_count) {
        throw std::invalid_argument("bit-flip model covers " + std::to_string(model.qubit_count()) +
                                    " qubits but the data has " + std::to_string(qubit_count));
    }
}

}  // namespace

std::uint64_t flip_outcome(std::uint64_t outcome, const BitFlipModel& model, Rng& rng) {
    for (std::size_t q = 0; q < model.qubit_count(); q++) {
        const auto& r = model.qubit(q);
        std::uint64_t bit = std::uint64_t{1} << q;
        double p = (outcome & bit) ? r.p1 : r.p0;
        if (p > 0 && uniform01(rng) < p) {
            outcome ^= bit;
        }
    }
    return outcome;
}

ShotHistogram apply_readout_noise(const ShotHistogram& hist, const BitFlipModel& model, Rng& rng) {
    check_model_size(model, hist.qubit_count());
    std::vector<std::uint64_t> counts(hist.counts().size());
    for (std::uint64_t b = 0; b < counts.size(); b++) {
        for (std::uint64_t k = 0; k < hist[b]; k++) {
            counts[flip_outcome(b, model, rng)]++;
        }
    }
    return {hist.qubit_count(), std::move(counts)};
}

OutcomeDistribution apply_qubit_channel(const OutcomeDistribution& dist, std::size_t qubit, double p0, double p1) {
    if (qubit >= dist.qubit_count()) {
        throw std::out_of_range("channel qubit out of range");
    }
    std::vector<double> out(dist.probabilities().begin(), dist.probabilities().end());
    std::uint64_t bit = std::uint64_t{1} << qubit;
    for (std::uint64_t b = 0; b < out.size(); b++) {
        if (!(b & bit)) {
            double zero = out[b];
            double one = out[b | bit];
            out[b] = (1 - p0) * zero + p1 * one;
            out[b | bit] = p0 * zero + (1 - p1) * one;
        }
    }
    return {dist.qubit_count(), std::move(out)};
}

OutcomeDistribution channel_exact(const OutcomeDistribution& dist, const BitFlipModel& model) {
    check_model_size(model, dist.qubit_count());
    OutcomeDistribution out = dist;
    for (std::size_t q = 0; q < model.qubit_count(); q++) {
        out = apply_qubit_channel(out, q, model.p0(q), model.p1(q));
    }
    return out;
}

double noisy_expectation_exact(const StateVector& state, const PauliZString& op, const BitFlipModel& model) {
    if (op.qubit_count() != state.qubit_count()) {
        throw std::invalid_argument("operator and state qubit counts differ");
    }
    if (op.is_identity()) {
        return 1.0;
    }
    auto noisy = channel_exact(outcome_distribution(state), model);
    double total = 0;
    for (std::uint64_t b = 0; b < noisy.probabilities().size(); b++) {
        total += noisy[b] * parity_sign(b, op.z_mask());
    }
    return total;
}

std::vector<double> noisy_expectations_exact(const StateVector& state, const BitFlipModel& model) {
    return expectation_vector(channel_exact(outcome_distribution(state), model));
}

nlohmann::json model_to_json(const BitFlipModel& model) {
    nlohmann::json qubits = nlohmann::json::array();
    for (std::size_t q = 0; q < model.qubit_count(); q++) {
        const auto& r = model.qubit(q);
        nlohmann::json rec = {{"qubit", q}, {"p0", r.p0}, {"p1", r.p1}, {"shots_used", r.shots_used}};
        rec["stderr0"] = r.stderr0 ? nlohmann::json(*r.stderr0) : nlohmann::json(nullptr);
        rec["stderr1"] = r.stderr1 ? nlohmann::json(*r.stderr1) : nlohmann::json(nullptr);
        qubits.push_back(std::move(rec));
    }
    return {{"qubits", std::move(qubits)}};
}

BitFlipModel model_from_json(const nlohmann::json& j) {
    const auto& qubits = j.at("qubits");
    std::vector<QubitReadout> records(qubits.size());
    std::vector<bool> seen(qubits.size(), false);
    for (const auto& rec : qubits) {
        auto q = rec.at("qubit").get<std::size_t>();
        if (q >= records.size() || seen[q]) {
            throw std::invalid_argument("model file has a missing or duplicate qubit index " + std::to_string(q));
        }
        seen[q] = true;
        auto& r = records[q];
        r.p0 = rec.at("p0").get<double>();
        r.p1 = rec.at("p1").get<double>();
        r.shots_used = rec.value("shots_used", std::uint64_t{0});
        if (rec.contains("stderr0") && !rec["stderr0"].is_null()) {
            r.stderr0 = rec["stderr0"].get<double>();
        }
        if (rec.contains("stderr1") && !rec["stderr1"].is_null()) {
            r.stderr1 = rec["stderr1"].get<double>();
        }
    }
    return BitFlipModel(std::move(records));
}

void write_model(const std::filesystem::path& path, const BitFlipModel& model) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write model file " + path.string());
    }
    out << model_to_json(model).dump(2) << '\n';
}

BitFlipModel read_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read model file " + path.string());
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("malformed model file " + path.string() + ": " + e.what());
    }
    return model_from_json(j);
}

}  // namespace remit
