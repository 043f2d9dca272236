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

// Reference implementations used only by the tests. They work directly on
// dense transition matrices and outcome enumerations, so they share no code
// path with the library routines they check.

#ifndef REMIT_TESTS_ORACLES_H_
#define REMIT_TESTS_ORACLES_H_

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "remit/core.h"
#include "remit/rng.h"

namespace remit::testing {

inline int sign_of(std::uint64_t bits, std::uint64_t mask) {
    int parity = 0;
    for (std::uint64_t x = bits & mask; x; x >>= 1) {
        parity ^= static_cast<int>(x & 1);
    }
    return parity ? -1 : 1;
}

/// T[observed][prepared] of the product readout channel, built entry by entry.
inline std::vector<std::vector<double>> transition_matrix(const BitFlipModel& model) {
    std::size_t n = model.qubit_count();
    std::size_t dim = std::size_t{1} << n;
    std::vector<std::vector<double>> t(dim, std::vector<double>(dim, 1.0));
    for (std::size_t out = 0; out < dim; out++) {
        for (std::size_t in = 0; in < dim; in++) {
            for (std::size_t q = 0; q < n; q++) {
                int a = (in >> q) & 1;
                int b = (out >> q) & 1;
                double p0 = model.p0(q);
                double p1 = model.p1(q);
                double pr;
                if (a == 0) {
                    pr = b == 0 ? 1 - p0 : p0;
                } else {
                    pr = b == 1 ? 1 - p1 : p1;
                }
                t[out][in] *= pr;
            }
        }
    }
    return t;
}

inline std::vector<double> probabilities(const StateVector& state) {
    std::vector<double> p;
    for (const auto& a : state.amplitudes()) {
        p.push_back(std::norm(a));
    }
    return p;
}

inline std::vector<double> apply_matrix(const std::vector<std::vector<double>>& t, const std::vector<double>& p) {
    std::vector<double> out(t.size(), 0.0);
    for (std::size_t i = 0; i < t.size(); i++) {
        for (std::size_t j = 0; j < p.size(); j++) {
            out[i] += t[i][j] * p[j];
        }
    }
    return out;
}

/// Sum_b P(b) (-1)^{b.mask} for every mask, by direct summation.
inline std::vector<double> expectations(const std::vector<double>& p) {
    std::vector<double> e(p.size(), 0.0);
    for (std::size_t m = 0; m < p.size(); m++) {
        for (std::size_t b = 0; b < p.size(); b++) {
            e[m] += p[b] * sign_of(b, m);
        }
    }
    return e;
}

inline StateVector random_state(std::size_t qubits, Rng& rng) {
    std::normal_distribution<double> g;
    std::vector<StateVector::Amplitude> amps(std::size_t{1} << qubits);
    for (auto& a : amps) {
        a = {g(rng), g(rng)};
    }
    return StateVector::normalized(std::move(amps));
}

/// Independent p0, p1 per qubit drawn from [lo, hi].
inline BitFlipModel random_model(std::size_t qubits, Rng& rng, double lo = 0.0, double hi = 0.2) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<QubitReadout> r(qubits);
    for (auto& x : r) {
        x.p0 = u(rng);
        x.p1 = u(rng);
    }
    return BitFlipModel(r);
}

inline BitFlipModel random_symmetric_model(std::size_t qubits, Rng& rng, double lo = 0.0, double hi = 0.2) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<QubitReadout> r(qubits);
    for (auto& x : r) {
        x.p0 = x.p1 = u(rng);
    }
    return BitFlipModel(r);
}

/// omega(row, col): coefficient of <O_col> in the flip-averaged <noisy O_row>,
/// obtained by expanding the basis probabilities in Z-string expectations:
/// P(b) = 2^-Q sum_col (-1)^{b.col} <O_col>.
inline std::vector<std::vector<double>> omega_from_channel(const BitFlipModel& model) {
    auto t = transition_matrix(model);
    std::size_t dim = t.size();
    std::vector<std::vector<double>> w(dim, std::vector<double>(dim, 0.0));
    for (std::size_t row = 0; row < dim; row++) {
        for (std::size_t col = 0; col < dim; col++) {
            double acc = 0;
            for (std::size_t in = 0; in < dim; in++) {
                double noisy_row = 0;
                for (std::size_t out = 0; out < dim; out++) {
                    noisy_row += t[out][in] * sign_of(out, row);
                }
                acc += sign_of(in, col) * noisy_row;
            }
            w[row][col] = acc / static_cast<double>(dim);
        }
    }
    return w;
}

/// Dense Gauss-Jordan inverse with partial pivoting.
inline std::vector<std::vector<double>> invert(std::vector<std::vector<double>> a) {
    std::size_t n = a.size();
    std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; i++) {
        inv[i][i] = 1;
    }
    for (std::size_t c = 0; c < n; c++) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; r++) {
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) {
                piv = r;
            }
        }
        std::swap(a[c], a[piv]);
        std::swap(inv[c], inv[piv]);
        double d = a[c][c];
        for (std::size_t k = 0; k < n; k++) {
            a[c][k] /= d;
            inv[c][k] /= d;
        }
        for (std::size_t r = 0; r < n; r++) {
            if (r != c && a[r][c] != 0) {
                double f = a[r][c];
                for (std::size_t k = 0; k < n; k++) {
                    a[r][k] -= f * a[c][k];
                    inv[r][k] -= f * inv[c][k];
                }
            }
        }
    }
    return inv;
}

/// Exact per-shot mean and variance of the mitigated estimator of `op_mask`:
/// each shot contributes sum_S c_S (-1)^{b.S}, with c the row of omega^-1,
/// evaluated over the noisy outcome distribution.
struct Moments {
    double mean;
    double variance;
};

inline Moments mitigated_shot_moments(const StateVector& state, const BitFlipModel& model, std::uint64_t op_mask) {
    auto noisy_p = apply_matrix(transition_matrix(model), probabilities(state));
    auto c = invert(omega_from_channel(model))[op_mask];
    double m1 = 0, m2 = 0;
    for (std::size_t b = 0; b < noisy_p.size(); b++) {
        double f = 0;
        for (std::size_t s = 0; s < c.size(); s++) {
            f += c[s] * sign_of(b, s);
        }
        m1 += noisy_p[b] * f;
        m2 += noisy_p[b] * f * f;
    }
    return {m1, m2 - m1 * m1};
}

}  // namespace remit::testing

#endif  // REMIT_TESTS_ORACLES_H_
