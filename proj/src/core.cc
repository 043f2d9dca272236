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

#include "remit/core.h"

#include <bit>
#include <cmath>
#include <numeric>

namespace remit {

namespace {

void check_qubit_count(std::size_t qubit_count) {
    if (qubit_count == 0 || qubit_count > 62) {
        throw std::invalid_argument("qubit count must be in [1, 62], got " + std::to_string(qubit_count));
    }
}

void check_probability(double p, const char* name, std::size_t q) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " of qubit " + std::to_string(q) +
                                    " is outside [0, 1]: " + std::to_string(p));
    }
}

// Minimum distance of p0 + p1 from 1 before the channel is considered singular.
constexpr double kSingularTolerance = 1e-9;

}  // namespace

PauliZString::PauliZString(std::size_t qubit_count, std::uint64_t z_mask) : qubit_count_(qubit_count), z_mask_(z_mask) {
    check_qubit_count(qubit_count);
    if (z_mask >= dimension(qubit_count)) {
        throw std::invalid_argument("z_mask " + std::to_string(z_mask) + " does not fit in " +
                                    std::to_string(qubit_count) + " qubits");
    }
}

PauliZString PauliZString::from_str(std::string_view text) {
    std::uint64_t mask = 0;
    std::size_t n = text.size();
    for (std::size_t k = 0; k < n; k++) {
        char c = text[n - 1 - k];
        if (c == 'Z' || c == 'z') {
            mask |= std::uint64_t{1} << k;
        } else if (c != 'I' && c != 'i' && c != '_') {
            throw std::invalid_argument("not an {I, Z} string: " + std::string(text));
        }
    }
    return {n, mask};
}

std::size_t PauliZString::weight() const { return std::popcount(z_mask_); }

std::string PauliZString::str() const {
    std::string out(qubit_count_, 'I');
    for (std::size_t q = 0; q < qubit_count_; q++) {
        if (has_z(q)) {
            out[qubit_count_ - 1 - q] = 'Z';
        }
    }
    return out;
}

BitFlipModel::BitFlipModel(std::vector<QubitReadout> qubits) : qubits_(std::move(qubits)) {
    if (qubits_.empty()) {
        throw std::invalid_argument("bit-flip model needs at least one qubit");
    }
    for (std::size_t q = 0; q < qubits_.size(); q++) {
        check_probability(qubits_[q].p0, "p0", q);
        check_probability(qubits_[q].p1, "p1", q);
    }
}

BitFlipModel BitFlipModel::noiseless(std::size_t qubit_count) { return uniform(qubit_count, 0, 0); }

BitFlipModel BitFlipModel::uniform(std::size_t qubit_count, double p0, double p1) {
    check_qubit_count(qubit_count);
    std::vector<QubitReadout> qubits(qubit_count);
    for (auto& r : qubits) {
        r.p0 = p0;
        r.p1 = p1;
    }
    return BitFlipModel(std::move(qubits));
}

BitFlipModel BitFlipModel::from_probabilities(std::span<const double> p0, std::span<const double> p1) {
    if (p0.size() != p1.size()) {
        throw std::invalid_argument("p0 and p1 lists differ in length");
    }
    std::vector<QubitReadout> qubits(p0.size());
    for (std::size_t q = 0; q < p0.size(); q++) {
        qubits[q].p0 = p0[q];
        qubits[q].p1 = p1[q];
    }
    return BitFlipModel(std::move(qubits));
}

bool BitFlipModel::is_invertible() const {
    for (const auto& r : qubits_) {
        if (std::abs(1.0 - r.p0 - r.p1) <= kSingularTolerance) {
            return false;
        }
    }
    return true;
}

void BitFlipModel::require_invertible() const {
    for (std::size_t q = 0; q < qubits_.size(); q++) {
        const auto& r = qubits_[q];
        if (std::abs(1.0 - r.p0 - r.p1) <= kSingularTolerance) {
            throw NonInvertibleModel("non-invertible noise model: p0 + p1 = 1 on qubit " + std::to_string(q));
        }
    }
}

bool BitFlipModel::is_noiseless() const {
    for (const auto& r : qubits_) {
        if (r.p0 != 0 || r.p1 != 0) {
            return false;
        }
    }
    return true;
}

StateVector StateVector::basis(std::size_t qubit_count, std::uint64_t index) {
    check_qubit_count(qubit_count);
    std::vector<Amplitude> amps(remit::dimension(qubit_count));
    if (index >= amps.size()) {
        throw std::invalid_argument("basis index out of range");
    }
    amps[index] = 1;
    return {qubit_count, std::move(amps)};
}

static std::size_t qubits_for_dimension(std::size_t n) {
    if (n < 2 || !std::has_single_bit(n)) {
        throw std::invalid_argument("amplitude count must be a power of two >= 2, got " + std::to_string(n));
    }
    return std::countr_zero(n);
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amplitudes) {
    std::size_t q = qubits_for_dimension(amplitudes.size());
    StateVector result(q, std::move(amplitudes));
    double n = result.norm_squared();
    if (std::abs(n - 1.0) > kNormTolerance) {
        throw std::invalid_argument("state is not normalized: |psi|^2 = " + std::to_string(n));
    }
    return result;
}

StateVector StateVector::normalized(std::vector<Amplitude> amplitudes) {
    std::size_t q = qubits_for_dimension(amplitudes.size());
    double n = 0;
    for (const auto& a : amplitudes) {
        n += std::norm(a);
    }
    if (!(n > 0)) {
        throw std::invalid_argument("cannot normalize the zero vector");
    }
    double scale = 1.0 / std::sqrt(n);
    for (auto& a : amplitudes) {
        a *= scale;
    }
    return {q, std::move(amplitudes)};
}

double StateVector::norm_squared() const {
    double n = 0;
    for (const auto& a : amplitudes_) {
        n += std::norm(a);
    }
    return n;
}

OutcomeDistribution::OutcomeDistribution(std::size_t qubit_count, std::vector<double> probabilities)
    : qubit_count_(qubit_count), probabilities_(std::move(probabilities)) {
    check_qubit_count(qubit_count);
    if (probabilities_.size() != remit::dimension(qubit_count)) {
        throw std::invalid_argument("distribution size does not match 2^Q");
    }
    double total = 0;
    for (double p : probabilities_) {
        if (!(p >= 0)) {
            throw std::invalid_argument("negative or NaN probability in distribution");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > kNormTolerance) {
        throw std::invalid_argument("distribution does not sum to 1: " + std::to_string(total));
    }
}

ShotHistogram::ShotHistogram(std::size_t qubit_count, std::vector<std::uint64_t> counts)
    : qubit_count_(qubit_count), counts_(std::move(counts)) {
    check_qubit_count(qubit_count);
    if (counts_.size() != remit::dimension(qubit_count)) {
        throw std::invalid_argument("histogram size does not match 2^Q");
    }
    shots_ = std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
    if (shots_ == 0) {
        throw std::invalid_argument("histogram has no shots");
    }
}

OutcomeDistribution ShotHistogram::frequencies() const {
    std::vector<double> f(counts_.size());
    double inv = 1.0 / static_cast<double>(shots_);
    for (std::size_t k = 0; k < counts_.size(); k++) {
        f[k] = static_cast<double>(counts_[k]) * inv;
    }
    return {qubit_count_, std::move(f)};
}

double PowerLawFit::prefactor() const { return std::exp(beta); }

double PowerLawFit::evaluate(double s) const { return std::exp(beta) * std::pow(s, alpha); }

std::vector<double> expectation_vector(const OutcomeDistribution& dist) {
    // In-place Walsh-Hadamard transform: entry m becomes sum_b P(b) (-1)^{|b & m|}.
    std::vector<double> e(dist.probabilities().begin(), dist.probabilities().end());
    std::size_t n = e.size();
    for (std::size_t h = 1; h < n; h <<= 1) {
        for (std::size_t i = 0; i < n; i += h << 1) {
            for (std::size_t j = i; j < i + h; j++) {
                double a = e[j];
                double b = e[j + h];
                e[j] = a + b;
                e[j + h] = a - b;
            }
        }
    }
    e[0] = 1.0;
    return e;
}

}  // namespace remit
