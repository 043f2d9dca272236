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

#include "remit/mitigation.h"

#include <bit>
#include <cmath>

namespace remit {

namespace {

constexpr double kIdentityRowTolerance = 1e-12;

void check_noisy_vector(std::span<const double> noisy, std::size_t qubit_count) {
    if (noisy.size() != dimension(qubit_count)) {
        throw std::invalid_argument("expectation vector has " + std::to_string(noisy.size()) + " entries, expected " +
                                    std::to_string(dimension(qubit_count)));
    }
    if (std::abs(noisy[0] - 1.0) > kIdentityRowTolerance) {
        throw std::invalid_argument("identity entry of the expectation vector must be 1");
    }
}

}  // namespace

double gamma(Factor which, double p0, double p1) { return which == Factor::kZ ? 1 - p0 - p1 : p0 - p1; }

OmegaMatrix::OmegaMatrix(std::size_t qubit_count, std::vector<double> entries)
    : qubit_count_(qubit_count), dim_(remit::dimension(qubit_count)), entries_(std::move(entries)) {
    if (entries_.size() != dim_ * dim_) {
        throw std::invalid_argument("omega matrix entry count does not match 4^Q");
    }
}

OmegaMatrix build_omega(const BitFlipModel& model) {
    model.require_invertible();
    std::size_t n = model.qubit_count();
    std::uint64_t dim = dimension(n);
    std::vector<double> gz(n), off(n);
    for (std::size_t q = 0; q < n; q++) {
        gz[q] = gamma(Factor::kZ, model.p0(q), model.p1(q));
        off[q] = identity_offset(model.p0(q), model.p1(q));
    }
    std::vector<double> entries(dim * dim, 0.0);
    for (std::uint64_t row = 0; row < dim; row++) {
        // Walk all subsets col of row, including row itself and 0.
        std::uint64_t col = row;
        while (true) {
            double v = 1;
            for (std::size_t q = 0; q < n; q++) {
                std::uint64_t bit = std::uint64_t{1} << q;
                if (row & bit) {
                    v *= (col & bit) ? gz[q] : off[q];
                }
            }
            entries[row * dim + col] = v;
            if (col == 0) {
                break;
            }
            col = (col - 1) & row;
        }
    }
    return {n, std::move(entries)};
}

std::vector<double> mitigate(std::span<const double> noisy, const OmegaMatrix& omega) {
    check_noisy_vector(noisy, omega.qubit_count());
    std::uint64_t dim = omega.dimension();
    std::vector<double> x(dim);
    x[0] = 1.0;
    for (std::uint64_t row = 1; row < dim; row++) {
        double acc = noisy[row];
        for (std::uint64_t col = (row - 1) & row;; col = (col - 1) & row) {
            acc -= omega(row, col) * x[col];
            if (col == 0) {
                break;
            }
        }
        x[row] = acc / omega(row, row);
    }
    return x;
}

std::vector<double> mitigate(std::span<const double> noisy, const BitFlipModel& model) {
    return mitigate(noisy, build_omega(model));
}

std::vector<std::uint64_t> out_of_range_operators(std::span<const double> expectations) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t k = 0; k < expectations.size(); k++) {
        if (std::abs(expectations[k]) > 1) {
            out.push_back(k);
        }
    }
    return out;
}

double expansion_coefficient(const BitFlipModel& model, std::uint64_t op_mask, std::uint64_t noisy_mask) {
    if ((noisy_mask & ~op_mask) != 0) {
        return 0;
    }
    double c = 1;
    for (std::size_t q = 0; q < model.qubit_count(); q++) {
        std::uint64_t bit = std::uint64_t{1} << q;
        if (!(op_mask & bit)) {
            continue;
        }
        double gz = gamma(Factor::kZ, model.p0(q), model.p1(q));
        c *= (noisy_mask & bit) ? 1 / gz : gamma(Factor::kIdentity, model.p0(q), model.p1(q)) / gz;
    }
    return c;
}

double mitigate_truncated(const PauliZString& op, std::span<const double> noisy, const BitFlipModel& model,
                          std::size_t max_order) {
    model.require_invertible();
    if (op.qubit_count() != model.qubit_count()) {
        throw std::invalid_argument("operator and model qubit counts differ");
    }
    if (max_order > op.qubit_count()) {
        throw std::invalid_argument("truncation order " + std::to_string(max_order) + " exceeds qubit count " +
                                    std::to_string(op.qubit_count()));
    }
    check_noisy_vector(noisy, op.qubit_count());
    std::uint64_t support = op.z_mask();
    double total = 0;
    for (std::uint64_t sub = support;; sub = (sub - 1) & support) {
        auto flips = static_cast<std::size_t>(std::popcount(support & ~sub));
        if (flips <= max_order) {
            total += expansion_coefficient(model, support, sub) * noisy[sub];
        }
        if (sub == 0) {
            break;
        }
    }
    return total;
}

}  // namespace remit
