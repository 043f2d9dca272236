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

#ifndef REMIT_MITIGATION_H_
#define REMIT_MITIGATION_H_

#include <span>
#include <vector>

#include "remit/core.h"

namespace remit {

enum class Factor { kIdentity, kZ };

/// Per-qubit expansion coefficient: 1 - p0 - p1 for Z, p0 - p1 for the identity.
double gamma(Factor which, double p0, double p1);

/// Identity coefficient of a flip-averaged noisy Z:
///   E[noisy Z] = gamma(Z) <Z> + identity_offset(p0, p1).
/// With p0 = P(read 1 | 0) this is p1 - p0 = -gamma(I).
inline double identity_offset(double p0, double p1) { return -gamma(Factor::kIdentity, p0, p1); }

/// Maps noise-free expectations to flip-averaged noisy ones:
///   E[noisy O_row] = sum_col omega(row, col) <O_col>.
/// Rows and columns are in operator_index order; entry (row, col) is non-zero
/// only when the Z-support of col is a subset of that of row, which makes the
/// matrix lower triangular with diagonal prod_{q in row} gamma(Z_q).
class OmegaMatrix {
 public:
    OmegaMatrix(std::size_t qubit_count, std::vector<double> entries);

    std::size_t qubit_count() const { return qubit_count_; }
    std::uint64_t dimension() const { return dim_; }
    double operator()(std::uint64_t row, std::uint64_t col) const { return entries_[row * dim_ + col]; }
    std::span<const double> entries() const { return entries_; }

 private:
    std::size_t qubit_count_;
    std::uint64_t dim_;
    std::vector<double> entries_;
};

/// Product over qubits of the single-qubit factors. Throws NonInvertibleModel.
OmegaMatrix build_omega(const BitFlipModel& model);

/// Solves omega * x = noisy by forward substitution over Z-support subsets.
/// `noisy[0]` must be 1; the result has x[0] == 1 exactly. Results are not
/// clipped to [-1, 1]; see out_of_range_operators.
std::vector<double> mitigate(std::span<const double> noisy, const OmegaMatrix& omega);
std::vector<double> mitigate(std::span<const double> noisy, const BitFlipModel& model);

/// Operators whose (mitigated) expectation lies outside [-1, 1].
std::vector<std::uint64_t> out_of_range_operators(std::span<const double> expectations);

/// Coefficient of the noisy operator `noisy_mask` in the expansion of the
/// noise-free operator `op_mask`: prod_{q in noisy} 1/gamma(Z_q) times
/// prod_{q in op \ noisy} gamma(I_q)/gamma(Z_q). Zero unless noisy is a subset of op.
double expansion_coefficient(const BitFlipModel& model, std::uint64_t op_mask, std::uint64_t noisy_mask);

/// Expansion of `op` in noisy operators, keeping only terms that correct for at
/// most `max_order` simultaneous flips (terms with at most `max_order` factors
/// of gamma(I)). max_order == Q reproduces mitigate().
double mitigate_truncated(const PauliZString& op, std::span<const double> noisy, const BitFlipModel& model,
                          std::size_t max_order);

}  // namespace remit

#endif  // REMIT_MITIGATION_H_
