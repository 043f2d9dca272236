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

#ifndef REMIT_VARIANCE_H_
#define REMIT_VARIANCE_H_

#include <cstdint>
#include <optional>
#include <span>

#include "remit/core.h"

namespace remit {

// Variances here are per shot unless a shot count is passed: the variance of
// an s-shot estimate is the per-shot value divided by s.

struct BitFlipCoefficients {
    double a1;
    double a2;
    double a3;
};

BitFlipCoefficients bitflip_coefficients(double p0, double p1);

/// Variance over bit flips of the quantum expectation of a noisy single-qubit
/// Z, given the noise-free expectation z: a1 z^2 - 2 a2 z + a3.
double single_qubit_bf_variance(double mitigated_z, double p0, double p1);

/// 1 - z^2 for a +-1 observable with expectation z. Throws if |z| > 1.
double single_qubit_qm_variance(double noisy_z);

/// Variance of a product of independent variables:
///   V_a V_b + V_a E_b^2 + E_a^2 V_b.
double product_variance(double var_a, double mean_a, double var_b, double mean_b);

struct VariancePrediction {
    double bitflip_component = 0;  // per shot
    double qm_component = 0;       // per shot

    double per_shot() const { return bitflip_component + qm_component; }
    double total(std::uint64_t shots) const { return per_shot() / static_cast<double>(shots); }
};

/// Predicted variance of the unmitigated estimate of `op`.
///
/// The bit-flip component combines the single-qubit bit-flip variances over the
/// Z-support with product_variance, using mitigated single-qubit expectations
/// for z and noisy single-qubit expectations for the means. The quantum
/// component is the flip average of 1 - <psi|noisy O|psi>^2, i.e.
/// 1 - E[noisy O]^2 minus the bit-flip component, so that the total equals the
/// exact per-shot variance 1 - E[noisy O]^2.
///
/// Both expectation vectors are indexed by operator_index.
VariancePrediction predicted_noisy_variance(const PauliZString& op, std::span<const double> noisy_exps,
                                            std::span<const double> mitigated_exps, const BitFlipModel& model);

struct MitigatedVariancePrediction {
    /// sum over noisy sub-operators S of coefficient(S)^2 * (1 - E[noisy S]^2).
    double independent_terms = 0;
    /// Same-shot covariances between the noisy sub-operators; zero for
    /// symmetric noise, where only the full-support term survives.
    double covariance_terms = 0;

    double per_shot() const { return independent_terms + covariance_terms; }
    double total(std::uint64_t shots) const { return per_shot() / static_cast<double>(shots); }
};

/// Predicted variance of the mitigated estimate of `op`, from the noisy
/// expectation vector measured in the same run.
MitigatedVariancePrediction predicted_mitigated_variance(const PauliZString& op, std::span<const double> noisy_exps,
                                                         const BitFlipModel& model);

/// Two-qubit formula for the mitigated Z2 Z1 variance from single-qubit noisy
/// variances and expectations:
///   (1/(g2 g1))^2 (V2 V1 + V2 E1^2 + E2^2 V1) + (gI1/(g2 g1))^2 V2 + (gI2/(g2 g1))^2 V1
/// with g = gamma(Z), gI = gamma(I). Variances are per shot.
double two_qubit_mitigated_variance(double var2, double mean2, double var1, double mean1, const QubitReadout& q2,
                                    const QubitReadout& q1);

/// Shot overhead s1/s0 needed for mitigated data (fit index 1) to match the
/// variance of unmitigated data (fit index 0):
///   exp((beta0 - beta1)/alpha1) * s0^(alpha0/alpha1 - 1).
struct OverheadRatio {
    double prefactor;  // exp((beta0 - beta1)/alpha1)
    double exponent;   // alpha0/alpha1 - 1
    /// Set when |alpha0 - alpha1| is below the threshold: the ratio is then
    /// approximately the constant `prefactor`.
    std::optional<double> large_statistics_constant;

    double at(double s0) const;
};

inline constexpr double kDefaultConstantRegimeThreshold = 0.01;

OverheadRatio overhead_ratio(const PowerLawFit& noisy, const PowerLawFit& mitigated,
                             double constant_threshold = kDefaultConstantRegimeThreshold);
double overhead_ratio_at(const PowerLawFit& noisy, const PowerLawFit& mitigated, double s0);

}  // namespace remit

#endif  // REMIT_VARIANCE_H_
