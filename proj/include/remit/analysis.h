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

#ifndef REMIT_ANALYSIS_H_
#define REMIT_ANALYSIS_H_

#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "remit/core.h"

namespace remit {

inline double absolute_error(double measured, double exact) { return std::abs(measured - exact); }

struct CurvePoint {
    double s;
    double value;
};

/// Least-squares line through (ln s, ln value): alpha is the slope, beta the
/// intercept, residual the RMS of the log residuals. Needs at least three
/// points with distinct s and positive values.
PowerLawFit fit_power_law(std::span<const CurvePoint> points);

struct HistogramStats {
    double mean;
    double sample_std;      // unbiased (N - 1) estimator
    double gaussian_mean;   // maximum-likelihood Gaussian fit
    double gaussian_sigma;  // maximum-likelihood Gaussian fit (N denominator)
};

/// Needs at least two values.
HistogramStats histogram_stats(std::span<const double> values);

/// Mean and its standard error over experiments.
struct MeanWithError {
    double mean;
    double standard_error;
};
MeanWithError mean_with_error(std::span<const double> values);

/// Standard error of an unbiased sample variance from `experiments` draws,
/// Gaussian approximation: variance * sqrt(2 / (N - 1)).
double sample_variance_standard_error(double variance, std::uint64_t experiments);

struct VarianceObservation {
    double s;
    double measured;            // sample variance across experiments
    std::uint64_t experiments;  // N
};

struct VarianceComparison {
    double s;
    double measured;
    double predicted;
    double ratio;    // measured / predicted
    double z_score;  // (measured - predicted) / standard error of measured
    bool flagged;    // |z| beyond the threshold
};

inline constexpr double kDefaultFlagThreshold = 3.0;

/// Compares measured against predicted variances point by point. The grids
/// must list the same shot counts in the same order.
std::vector<VarianceComparison> compare_variances(std::span<const VarianceObservation> measured,
                                                  std::span<const CurvePoint> predicted,
                                                  double flag_threshold = kDefaultFlagThreshold);

}  // namespace remit

#endif  // REMIT_ANALYSIS_H_
