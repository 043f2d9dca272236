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

#include "remit/analysis.h"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace remit {

PowerLawFit fit_power_law(std::span<const CurvePoint> points) {
    if (points.size() < 3) {
        throw std::invalid_argument("power-law fit needs at least 3 points, got " + std::to_string(points.size()));
    }
    std::set<double> distinct;
    for (const auto& p : points) {
        if (!(p.value > 0) || !std::isfinite(p.value)) {
            throw std::invalid_argument("power-law fit needs positive values, got " + std::to_string(p.value));
        }
        if (!(p.s > 0)) {
            throw std::invalid_argument("power-law fit needs positive shot counts");
        }
        distinct.insert(p.s);
    }
    if (distinct.size() < 2) {
        throw std::invalid_argument("power-law fit needs at least two distinct shot counts");
    }

    double n = static_cast<double>(points.size());
    double mx = 0, my = 0;
    for (const auto& p : points) {
        mx += std::log(p.s);
        my += std::log(p.value);
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (const auto& p : points) {
        double dx = std::log(p.s) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(p.value) - my);
    }
    PowerLawFit fit;
    fit.alpha = sxy / sxx;
    fit.beta = my - fit.alpha * mx;
    double ss = 0;
    for (const auto& p : points) {
        double r = std::log(p.value) - (fit.beta + fit.alpha * std::log(p.s));
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

HistogramStats histogram_stats(std::span<const double> values) {
    if (values.size() < 2) {
        throw std::invalid_argument("histogram statistics need at least 2 values");
    }
    double n = static_cast<double>(values.size());
    double mean = 0;
    for (double v : values) {
        mean += v;
    }
    mean /= n;
    double ss = 0;
    for (double v : values) {
        ss += (v - mean) * (v - mean);
    }
    return {mean, std::sqrt(ss / (n - 1)), mean, std::sqrt(ss / n)};
}

MeanWithError mean_with_error(std::span<const double> values) {
    if (values.empty()) {
        throw std::invalid_argument("mean of an empty sample");
    }
    if (values.size() == 1) {
        return {values[0], 0};
    }
    auto h = histogram_stats(values);
    return {h.mean, h.sample_std / std::sqrt(static_cast<double>(values.size()))};
}

double sample_variance_standard_error(double variance, std::uint64_t experiments) {
    if (experiments < 2) {
        throw std::invalid_argument("sample variance needs at least 2 experiments");
    }
    return variance * std::sqrt(2.0 / static_cast<double>(experiments - 1));
}

std::vector<VarianceComparison> compare_variances(std::span<const VarianceObservation> measured,
                                                  std::span<const CurvePoint> predicted, double flag_threshold) {
    if (measured.size() != predicted.size()) {
        throw std::invalid_argument("measured and predicted variance grids differ in length");
    }
    std::vector<VarianceComparison> out;
    out.reserve(measured.size());
    for (std::size_t k = 0; k < measured.size(); k++) {
        const auto& m = measured[k];
        if (m.s != predicted[k].s) {
            throw std::invalid_argument("variance grids differ at position " + std::to_string(k) +
                                        ": s = " + std::to_string(m.s) + " vs " + std::to_string(predicted[k].s));
        }
        double p = predicted[k].value;
        double se = sample_variance_standard_error(m.measured, m.experiments);
        double z = m.measured == p ? 0.0 : (m.measured - p) / se;
        out.push_back({m.s, m.measured, p, m.measured / p, z, std::abs(z) > flag_threshold});
    }
    return out;
}

}  // namespace remit
