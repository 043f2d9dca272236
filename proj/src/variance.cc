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

#include "remit/variance.h"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "remit/mitigation.h"

namespace remit {

namespace {

void check_vector(std::span<const double> exps, std::size_t qubit_count, const char* what) {
    if (exps.size() != dimension(qubit_count)) {
        throw std::invalid_argument(std::string(what) + " expectation vector has " + std::to_string(exps.size()) +
                                    " entries, expected " + std::to_string(dimension(qubit_count)));
    }
}

std::vector<std::uint64_t> nonempty_subsets(std::uint64_t support) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t sub = support; sub != 0; sub = (sub - 1) & support) {
        out.push_back(sub);
    }
    return out;
}

}  // namespace

BitFlipCoefficients bitflip_coefficients(double p0, double p1) {
    return {
        (p1 + p0) * (1 - p0 - p1) + 2 * p0 * p1,
        (1 - p0 - p1) * (p1 - p0),
        p0 + p1 - p0 * p0 - p1 * p1,
    };
}

double single_qubit_bf_variance(double mitigated_z, double p0, double p1) {
    auto [a1, a2, a3] = bitflip_coefficients(p0, p1);
    return a1 * mitigated_z * mitigated_z - 2 * a2 * mitigated_z + a3;
}

double single_qubit_qm_variance(double noisy_z) {
    if (std::abs(noisy_z) > 1) {
        throw std::invalid_argument("expectation of a +-1 observable must lie in [-1, 1], got " +
                                    std::to_string(noisy_z));
    }
    return 1 - noisy_z * noisy_z;
}

double product_variance(double var_a, double mean_a, double var_b, double mean_b) {
    return var_a * var_b + var_a * mean_b * mean_b + mean_a * mean_a * var_b;
}

VariancePrediction predicted_noisy_variance(const PauliZString& op, std::span<const double> noisy_exps,
                                            std::span<const double> mitigated_exps, const BitFlipModel& model) {
    std::size_t n = op.qubit_count();
    if (model.qubit_count() != n) {
        throw std::invalid_argument("operator and model qubit counts differ");
    }
    check_vector(noisy_exps, n, "noisy");
    check_vector(mitigated_exps, n, "mitigated");
    if (op.is_identity()) {
        return {};
    }

    double bf_var = 0;
    double bf_mean = 1;
    bool first = true;
    for (std::size_t q = 0; q < n; q++) {
        if (!op.has_z(q)) {
            continue;
        }
        std::uint64_t single = std::uint64_t{1} << q;
        double v = single_qubit_bf_variance(mitigated_exps[single], model.p0(q), model.p1(q));
        double e = noisy_exps[single];
        if (first) {
            bf_var = v;
            bf_mean = e;
            first = false;
        } else {
            bf_var = product_variance(bf_var, bf_mean, v, e);
            bf_mean *= e;
        }
    }

    double total = single_qubit_qm_variance(noisy_exps[op.z_mask()]);
    return {bf_var, total - bf_var};
}

MitigatedVariancePrediction predicted_mitigated_variance(const PauliZString& op, std::span<const double> noisy_exps,
                                                         const BitFlipModel& model) {
    std::size_t n = op.qubit_count();
    if (model.qubit_count() != n) {
        throw std::invalid_argument("operator and model qubit counts differ");
    }
    model.require_invertible();
    check_vector(noisy_exps, n, "noisy");

    // The mitigated estimate is sum_S c_S * (noisy estimate of S) over subsets S
    // of the support, all taken from the same shots. For +-1 variables the
    // product of the S and S' outcomes is the S xor S' outcome, which gives the
    // per-shot covariance E[S ^ S'] - E[S] E[S'].
    auto subsets = nonempty_subsets(op.z_mask());
    std::vector<double> coeff(subsets.size());
    for (std::size_t k = 0; k < subsets.size(); k++) {
        coeff[k] = expansion_coefficient(model, op.z_mask(), subsets[k]);
    }

    MitigatedVariancePrediction out;
    for (std::size_t i = 0; i < subsets.size(); i++) {
        double ei = noisy_exps[subsets[i]];
        out.independent_terms += coeff[i] * coeff[i] * (1 - ei * ei);
        for (std::size_t j = 0; j < subsets.size(); j++) {
            if (i == j || coeff[i] == 0 || coeff[j] == 0) {
                continue;
            }
            double ej = noisy_exps[subsets[j]];
            out.covariance_terms += coeff[i] * coeff[j] * (noisy_exps[subsets[i] ^ subsets[j]] - ei * ej);
        }
    }
    return out;
}

double two_qubit_mitigated_variance(double var2, double mean2, double var1, double mean1, const QubitReadout& q2,
                                    const QubitReadout& q1) {
    double g2 = gamma(Factor::kZ, q2.p0, q2.p1);
    double g1 = gamma(Factor::kZ, q1.p0, q1.p1);
    if (g2 == 0 || g1 == 0) {
        throw NonInvertibleModel("non-invertible noise model: p0 + p1 = 1");
    }
    double gi2 = gamma(Factor::kIdentity, q2.p0, q2.p1);
    double gi1 = gamma(Factor::kIdentity, q1.p0, q1.p1);
    double inv = 1 / (g2 * g1);
    return inv * inv * product_variance(var2, mean2, var1, mean1) + (gi1 * inv) * (gi1 * inv) * var2 +
           (gi2 * inv) * (gi2 * inv) * var1;
}

double OverheadRatio::at(double s0) const { return prefactor * std::pow(s0, exponent); }

OverheadRatio overhead_ratio(const PowerLawFit& noisy, const PowerLawFit& mitigated, double constant_threshold) {
    if (mitigated.alpha == 0) {
        throw std::invalid_argument("mitigated variance fit has zero exponent; overhead ratio is undefined");
    }
    OverheadRatio r{
        std::exp((noisy.beta - mitigated.beta) / mitigated.alpha),
        noisy.alpha / mitigated.alpha - 1,
        std::nullopt,
    };
    if (std::abs(noisy.alpha - mitigated.alpha) < constant_threshold) {
        r.large_statistics_constant = r.prefactor;
    }
    return r;
}

double overhead_ratio_at(const PowerLawFit& noisy, const PowerLawFit& mitigated, double s0) {
    return overhead_ratio(noisy, mitigated).at(s0);
}

}  // namespace remit
