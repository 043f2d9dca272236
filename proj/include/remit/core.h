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

#ifndef REMIT_CORE_H_
#define REMIT_CORE_H_

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace remit {

// Bit conventions used everywhere in the toolkit: qubit q is bit q (qubit 0 is
// the least significant bit) of both measured bitstrings and Z-support masks.

inline constexpr std::size_t kDefaultMaxQubits = 12;
inline constexpr double kNormTolerance = 1e-12;

/// Raised when a bit-flip model has p0 + p1 == 1 on some qubit, so the noisy
/// operators no longer determine the noise-free ones.
class NonInvertibleModel : public std::invalid_argument {
 public:
    explicit NonInvertibleModel(const std::string& what) : std::invalid_argument(what) {}
};

inline std::uint64_t dimension(std::size_t qubit_count) { return std::uint64_t{1} << qubit_count; }

/// An observable in {I, Z}^Q. Bit q of the mask selects Z on qubit q.
class PauliZString {
 public:
    PauliZString(std::size_t qubit_count, std::uint64_t z_mask);

    static PauliZString identity(std::size_t qubit_count) { return {qubit_count, 0}; }
    static PauliZString all_z(std::size_t qubit_count) { return {qubit_count, dimension(qubit_count) - 1}; }
    /// Parses a string like "ZIZ"; the rightmost character is qubit 0.
    static PauliZString from_str(std::string_view text);

    std::size_t qubit_count() const { return qubit_count_; }
    std::uint64_t z_mask() const { return z_mask_; }
    std::size_t weight() const;
    bool has_z(std::size_t qubit) const { return (z_mask_ >> qubit) & 1; }
    bool is_identity() const { return z_mask_ == 0; }
    std::string str() const;

    bool operator==(const PauliZString&) const = default;

 private:
    std::size_t qubit_count_;
    std::uint64_t z_mask_;
};

/// Position of `op` in the operator ordering that makes the omega matrix lower
/// triangular. This is simply the Z-support mask.
inline std::uint64_t operator_index(const PauliZString& op) { return op.z_mask(); }

/// +1 or -1: the eigenvalue of the Z-string `z_mask` on basis state `outcome`.
inline double parity_sign(std::uint64_t outcome, std::uint64_t z_mask) {
    return (__builtin_popcountll(outcome & z_mask) & 1) ? -1.0 : 1.0;
}

struct QubitReadout {
    double p0 = 0;  // P(read 1 | prepared 0)
    double p1 = 0;  // P(read 0 | prepared 1)
    std::uint64_t shots_used = 0;
    std::optional<double> stderr0;
    std::optional<double> stderr1;

    bool operator==(const QubitReadout&) const = default;
};

/// Uncorrelated per-qubit readout errors.
///
/// Probabilities may be anywhere in [0, 1] so that deterministic-flip edge
/// cases can be expressed; anything that inverts the channel calls
/// `require_invertible()` first.
class BitFlipModel {
 public:
    BitFlipModel() = default;
    explicit BitFlipModel(std::vector<QubitReadout> qubits);

    static BitFlipModel noiseless(std::size_t qubit_count);
    static BitFlipModel uniform(std::size_t qubit_count, double p0, double p1);
    static BitFlipModel from_probabilities(std::span<const double> p0, std::span<const double> p1);

    std::size_t qubit_count() const { return qubits_.size(); }
    const QubitReadout& qubit(std::size_t q) const { return qubits_.at(q); }
    const std::vector<QubitReadout>& qubits() const { return qubits_; }
    double p0(std::size_t q) const { return qubits_.at(q).p0; }
    double p1(std::size_t q) const { return qubits_.at(q).p1; }

    bool is_invertible() const;
    void require_invertible() const;
    bool is_noiseless() const;

    bool operator==(const BitFlipModel&) const = default;

 private:
    std::vector<QubitReadout> qubits_;
};

class StateVector {
 public:
    using Amplitude = std::complex<double>;

    /// Computational basis state |index>.
    static StateVector basis(std::size_t qubit_count, std::uint64_t index = 0);
    /// Validates that the amplitudes have unit norm.
    static StateVector from_amplitudes(std::vector<Amplitude> amplitudes);
    /// Normalizes arbitrary non-zero amplitudes.
    static StateVector normalized(std::vector<Amplitude> amplitudes);

    std::size_t qubit_count() const { return qubit_count_; }
    std::uint64_t dimension() const { return amplitudes_.size(); }
    std::span<const Amplitude> amplitudes() const { return amplitudes_; }
    const Amplitude& operator[](std::uint64_t i) const { return amplitudes_[i]; }
    double norm_squared() const;

 private:
    StateVector(std::size_t qubit_count, std::vector<Amplitude> amplitudes)
        : qubit_count_(qubit_count), amplitudes_(std::move(amplitudes)) {}

    std::size_t qubit_count_ = 0;
    std::vector<Amplitude> amplitudes_;
};

/// Probability of every basis outcome. Also used for empirical frequencies.
class OutcomeDistribution {
 public:
    OutcomeDistribution(std::size_t qubit_count, std::vector<double> probabilities);

    std::size_t qubit_count() const { return qubit_count_; }
    std::span<const double> probabilities() const { return probabilities_; }
    double operator[](std::uint64_t outcome) const { return probabilities_[outcome]; }

 private:
    std::size_t qubit_count_;
    std::vector<double> probabilities_;
};

/// Counts of measured bitstrings over `shots` repetitions (dense over 2^Q).
class ShotHistogram {
 public:
    ShotHistogram(std::size_t qubit_count, std::vector<std::uint64_t> counts);

    std::size_t qubit_count() const { return qubit_count_; }
    std::uint64_t shots() const { return shots_; }
    std::span<const std::uint64_t> counts() const { return counts_; }
    std::uint64_t operator[](std::uint64_t outcome) const { return counts_[outcome]; }
    OutcomeDistribution frequencies() const;

    bool operator==(const ShotHistogram&) const = default;

 private:
    std::size_t qubit_count_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t shots_;
};

/// Fit of C * s^alpha with C = exp(beta).
struct PowerLawFit {
    double alpha = 0;
    double beta = 0;
    double residual = 0;  // RMS of the log-space residuals

    double prefactor() const;
    double evaluate(double s) const;
};

/// Expectation of every {I, Z}^Q string, indexed by operator_index.
/// Entry 0 (identity) is exactly 1.
std::vector<double> expectation_vector(const OutcomeDistribution& dist);

}  // namespace remit

#endif  // REMIT_CORE_H_
