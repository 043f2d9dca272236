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

#ifndef REMIT_EXPERIMENT_H_
#define REMIT_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "remit/analysis.h"
#include "remit/core.h"
#include "remit/statevector.h"
#include "remit/variance.h"

namespace remit {

enum class Mode { kNoiseFree, kNoisy, kNoisyMitigated };
enum class ModelSource { kExplicit, kCalibrated };
enum class BackendKind { kSampled, kExactChannel };

std::string to_string(Mode mode);
Mode parse_mode(std::string_view text);

/// Raised for configurations that are rejected before any work starts.
class ConfigError : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
    std::size_t qubit_count = 3;
    std::size_t layers = 0;      // 0: default_ansatz_layers(qubit_count)
    std::vector<double> angles;  // empty: drawn uniformly in [0, 2pi) from the seed
    std::vector<std::uint64_t> shot_grid = {64, 128, 256, 512, 1024, 2048, 4096, 8192};
    std::uint64_t experiments = 1000;  // N per grid point
    std::uint64_t seed = 0;
    std::optional<std::size_t> truncation;    // max flip order; nullopt = full inversion
    std::optional<std::uint64_t> observable;  // Z-support mask; nullopt = Z on every qubit
    BitFlipModel device;                      // readout errors of the simulated device
    ModelSource model_source = ModelSource::kExplicit;
    std::uint64_t calibration_shots = 8192;
    bool recalibrate_each_batch = false;
    BackendKind backend = BackendKind::kSampled;

    PauliZString target() const;
};

/// Throws ConfigError (or NonInvertibleModel) on invalid settings.
void validate(const ExperimentConfig& config);

/// Fills every defaulted field (layers, angles, observable) so the returned
/// config fully describes the run.
ExperimentConfig resolve(ExperimentConfig config);

nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig read_config(const std::filesystem::path& path);

Circuit build_circuit(const ExperimentConfig& resolved);

struct ExperimentResult {
    std::uint64_t shots;
    std::uint64_t index;
    std::uint64_t stream_seed;
    std::vector<double> ideal;      // expectations from the pre-readout outcomes
    std::vector<double> noisy;      // expectations as reported by the backend
    std::vector<double> mitigated;  // empty unless mitigation ran

    bool operator==(const ExperimentResult&) const = default;
};

struct SuiteRun {
    ExperimentConfig config;  // resolved
    Mode mode;
    std::vector<double> exact;              // noise-free expectation of every operator
    std::vector<ExperimentResult> results;  // sorted by (s, index)
    /// Model used to mitigate (and predict) each batch, keyed by shot count.
    std::map<std::uint64_t, BitFlipModel> models;
};

/// Seed of the stream of experiment `index` at shot count `shots`.
std::uint64_t experiment_seed(std::uint64_t master, std::uint64_t shots, std::uint64_t index);

/// Runs N experiments at every grid point. Output is identical for any
/// worker count (0 means hardware concurrency).
SuiteRun run_suite(const ExperimentConfig& config, Mode mode, std::size_t workers = 0);

struct ShotGridRow {
    std::uint64_t s;
    std::uint64_t experiments;
    MeanWithError error_ideal;
    MeanWithError error_noisy;
    std::optional<MeanWithError> error_mitigated;
    HistogramStats hist_noisy;
    std::optional<HistogramStats> hist_mitigated;
    double measured_var_noisy;
    std::optional<double> measured_var_mitigated;
    std::optional<VariancePrediction> predicted_noisy;
    std::optional<MitigatedVariancePrediction> predicted_mitigated;
};

/// Per-s statistics of the target observable. Predictions use the noisy
/// expectation vector pooled over the batch and the batch's mitigation model.
std::vector<ShotGridRow> summarize(const SuiteRun& run);

// On-disk layout of a run directory.
inline constexpr const char* kConfigFile = "config.json";
inline constexpr const char* kResultsFile = "results.csv";
inline constexpr const char* kRunFile = "run.json";  // mode and per-batch models
inline constexpr const char* kCircuitFile = "circuit.txt";

void write_results_csv(std::ostream& out, const SuiteRun& run);
std::vector<ExperimentResult> read_results_csv(std::istream& in, std::size_t qubit_count);

/// Writes config, results, run metadata and circuit into `dir`.
void write_run(const std::filesystem::path& dir, const SuiteRun& run);
SuiteRun read_run(const std::filesystem::path& dir);

/// Writes summary.csv, variance_comparison.csv, fits.json and plot-ready .dat
/// files (x y y_err) into `out_dir`. Returns the fits document.
nlohmann::json write_analysis(const SuiteRun& run, const std::filesystem::path& out_dir);

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);

}  // namespace remit

#endif  // REMIT_EXPERIMENT_H_
