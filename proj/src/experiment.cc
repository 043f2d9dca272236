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

#include "remit/experiment.h"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <exception>
#include <fstream>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "remit/backend.h"
#include "remit/calibration.h"
#include "remit/mitigation.h"
#include "remit/readout_noise.h"

namespace remit {

using nlohmann::json;

std::string to_string(Mode mode) {
    switch (mode) {
        case Mode::kNoiseFree:
            return "noise-free";
        case Mode::kNoisy:
            return "noisy";
        case Mode::kNoisyMitigated:
            return "noisy+mitigated";
    }
    return "?";
}

Mode parse_mode(std::string_view text) {
    if (text == "noise-free") return Mode::kNoiseFree;
    if (text == "noisy") return Mode::kNoisy;
    if (text == "noisy+mitigated") return Mode::kNoisyMitigated;
    throw ConfigError("unknown mode '" + std::string(text) + "' (expected noise-free, noisy or noisy+mitigated)");
}

PauliZString ExperimentConfig::target() const {
    return observable ? PauliZString(qubit_count, *observable) : PauliZString::all_z(qubit_count);
}

void validate(const ExperimentConfig& c) {
    if (c.qubit_count == 0 || c.qubit_count > kDefaultMaxQubits) {
        throw ConfigError("qubits must be in [1, " + std::to_string(kDefaultMaxQubits) + "]");
    }
    if (c.shot_grid.empty()) {
        throw ConfigError("shot grid is empty");
    }
    std::set<std::uint64_t> seen;
    for (auto s : c.shot_grid) {
        if (s == 0) {
            throw ConfigError("shot counts must be positive");
        }
        if (!seen.insert(s).second) {
            throw ConfigError("shot grid lists " + std::to_string(s) + " twice");
        }
    }
    if (c.experiments < 2) {
        throw ConfigError("experiments per point must be at least 2 to form a sample variance");
    }
    std::size_t layers = c.layers ? c.layers : default_ansatz_layers(c.qubit_count);
    if (!c.angles.empty() && c.angles.size() != ansatz_parameter_count(c.qubit_count, layers)) {
        throw ConfigError("expected " + std::to_string(ansatz_parameter_count(c.qubit_count, layers)) +
                          " angles, got " + std::to_string(c.angles.size()));
    }
    if (c.truncation && *c.truncation > c.qubit_count) {
        throw ConfigError("truncation order exceeds qubit count");
    }
    if (c.observable && *c.observable >= dimension(c.qubit_count)) {
        throw ConfigError("observable mask does not fit the qubit count");
    }
    if (c.device.qubit_count() != c.qubit_count) {
        throw ConfigError("device model covers " + std::to_string(c.device.qubit_count()) + " qubits, config has " +
                          std::to_string(c.qubit_count));
    }
    c.device.require_invertible();
    if (c.model_source == ModelSource::kCalibrated && c.calibration_shots == 0) {
        throw ConfigError("calibration_shots must be positive");
    }
}

ExperimentConfig resolve(ExperimentConfig c) {
    if (c.device.qubit_count() == 0) {
        c.device = BitFlipModel::noiseless(c.qubit_count);
    }
    validate(c);
    if (c.layers == 0) {
        c.layers = default_ansatz_layers(c.qubit_count);
    }
    if (c.angles.empty()) {
        Rng rng = make_stream(c.seed, {stream_tag::kAngles});
        c.angles = random_angles(ansatz_parameter_count(c.qubit_count, c.layers), rng);
    }
    if (!c.observable) {
        c.observable = dimension(c.qubit_count) - 1;
    }
    return c;
}

json config_to_json(const ExperimentConfig& c) {
    std::vector<double> p0, p1;
    for (const auto& r : c.device.qubits()) {
        p0.push_back(r.p0);
        p1.push_back(r.p1);
    }
    json j;
    j["qubits"] = c.qubit_count;
    j["layers"] = c.layers;
    j["angles"] = c.angles;
    j["shots"] = c.shot_grid;
    j["experiments"] = c.experiments;
    j["seed"] = c.seed;
    j["truncation"] = c.truncation ? json(*c.truncation) : json("full");
    j["observable"] = c.observable ? json(PauliZString(c.qubit_count, *c.observable).str()) : json(nullptr);
    j["device"] = {{"p0", p0}, {"p1", p1}};
    j["model_source"] = c.model_source == ModelSource::kExplicit ? "explicit" : "calibrated";
    j["calibration_shots"] = c.calibration_shots;
    j["recalibrate_each_batch"] = c.recalibrate_each_batch;
    j["backend"] = c.backend == BackendKind::kSampled ? "sampled" : "exact";
    return j;
}

ExperimentConfig config_from_json(const json& j) {
    static const std::set<std::string> known = {
        "qubits",     "layers",     "angles", "shots",        "experiments",       "seed",
        "truncation", "observable", "device", "model_source", "calibration_shots", "recalibrate_each_batch",
        "backend"};
    if (!j.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    for (const auto& [key, _] : j.items()) {
        if (!known.contains(key)) {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    ExperimentConfig c;
    try {
        c.qubit_count = j.at("qubits").get<std::size_t>();
        c.layers = j.value("layers", std::size_t{0});
        c.angles = j.value("angles", std::vector<double>{});
        if (j.contains("shots")) c.shot_grid = j["shots"].get<std::vector<std::uint64_t>>();
        c.experiments = j.value("experiments", c.experiments);
        c.seed = j.value("seed", c.seed);
        if (j.contains("truncation")) {
            const auto& t = j["truncation"];
            if (t.is_string()) {
                if (t.get<std::string>() != "full") throw ConfigError("truncation must be an integer or \"full\"");
            } else {
                c.truncation = t.get<std::size_t>();
            }
        }
        if (j.contains("observable") && !j["observable"].is_null()) {
            const auto& o = j["observable"];
            if (o.is_string()) {
                auto op = PauliZString::from_str(o.get<std::string>());
                if (op.qubit_count() != c.qubit_count) throw ConfigError("observable length does not match qubits");
                c.observable = op.z_mask();
            } else {
                c.observable = o.get<std::uint64_t>();
            }
        }
        if (j.contains("device")) {
            const auto& d = j["device"];
            if (d.contains("qubits")) {
                c.device = model_from_json(d);
            } else {
                auto p0 = d.at("p0").get<std::vector<double>>();
                auto p1 = d.at("p1").get<std::vector<double>>();
                c.device = BitFlipModel::from_probabilities(p0, p1);
            }
        }
        auto source = j.value("model_source", std::string("explicit"));
        if (source == "explicit") {
            c.model_source = ModelSource::kExplicit;
        } else if (source == "calibrated") {
            c.model_source = ModelSource::kCalibrated;
        } else {
            throw ConfigError("model_source must be \"explicit\" or \"calibrated\"");
        }
        c.calibration_shots = j.value("calibration_shots", c.calibration_shots);
        c.recalibrate_each_batch = j.value("recalibrate_each_batch", false);
        auto backend = j.value("backend", std::string("sampled"));
        if (backend == "sampled") {
            c.backend = BackendKind::kSampled;
        } else if (backend == "exact") {
            c.backend = BackendKind::kExactChannel;
        } else {
            throw ConfigError("backend must be \"sampled\" or \"exact\"");
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    if (c.device.qubit_count() == 0) {
        c.device = BitFlipModel::noiseless(c.qubit_count);
    }
    return c;
}

ExperimentConfig read_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file " + path.string());
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("malformed config file " + path.string() + ": " + e.what());
    }
    return config_from_json(j);
}

Circuit build_circuit(const ExperimentConfig& resolved) {
    return build_layered_ansatz(resolved.qubit_count, resolved.layers, resolved.angles);
}

std::uint64_t experiment_seed(std::uint64_t master, std::uint64_t shots, std::uint64_t index) {
    return derive_seed(master, {stream_tag::kExperiment, shots, index});
}

namespace {

std::unique_ptr<Backend> make_backend(const ExperimentConfig& c, Mode mode) {
    if (mode == Mode::kNoiseFree) {
        return std::make_unique<NoiselessBackend>();
    }
    if (c.backend == BackendKind::kExactChannel) {
        return std::make_unique<ExactChannelBackend>(c.device);
    }
    return std::make_unique<SampledReadoutBackend>(c.device);
}

std::vector<double> mitigate_vector(std::span<const double> noisy, const BitFlipModel& model, const OmegaMatrix& omega,
                                    std::optional<std::size_t> truncation) {
    if (!truncation) {
        return mitigate(noisy, omega);
    }
    std::size_t n = model.qubit_count();
    std::vector<double> out(noisy.size());
    for (std::uint64_t m = 0; m < out.size(); m++) {
        out[m] = mitigate_truncated(PauliZString(n, m), noisy, model, std::min(*truncation, n));
    }
    return out;
}

// Runs fn(k) for k in [0, count) on `workers` threads and rethrows the first failure.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t workers, Fn fn) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t k = 0; k < count; k++) {
            fn(k);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(workers, count); w++) {
        pool.emplace_back([&] {
            while (true) {
                std::size_t k = next.fetch_add(1);
                if (k >= count) {
                    return;
                }
                try {
                    fn(k);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                    next = count;
                }
            }
        });
    }
    pool.clear();
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace

SuiteRun run_suite(const ExperimentConfig& config, Mode mode, std::size_t workers) {
    SuiteRun run{resolve(config), mode, {}, {}, {}};
    const auto& c = run.config;
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }

    auto state = simulate(build_circuit(c));
    auto prepared = outcome_distribution(state);
    run.exact = expectation_vector(prepared);
    auto backend = make_backend(c, mode);

    if (mode != Mode::kNoiseFree) {
        std::optional<BitFlipModel> shared;
        for (auto s : c.shot_grid) {
            if (c.model_source == ModelSource::kExplicit) {
                run.models.emplace(s, c.device);
            } else if (c.recalibrate_each_batch) {
                Rng rng = make_stream(c.seed, {stream_tag::kCalibration, s});
                run.models.emplace(s, calibrate(*backend, c.qubit_count, c.calibration_shots, rng));
            } else {
                if (!shared) {
                    Rng rng = make_stream(c.seed, {stream_tag::kCalibration});
                    shared = calibrate(*backend, c.qubit_count, c.calibration_shots, rng);
                }
                run.models.emplace(s, *shared);
            }
        }
    }
    std::map<std::uint64_t, OmegaMatrix> omegas;
    if (mode == Mode::kNoisyMitigated) {
        for (const auto& [s, model] : run.models) {
            omegas.emplace(s, build_omega(model));
        }
    }

    std::size_t n_exp = c.experiments;
    std::size_t total = c.shot_grid.size() * n_exp;
    run.results.resize(total);
    parallel_for(total, workers, [&](std::size_t k) {
        std::uint64_t s = c.shot_grid[k / n_exp];
        std::uint64_t index = k % n_exp;
        std::uint64_t seed = experiment_seed(c.seed, s, index);
        Rng rng(seed);
        auto exec = backend->execute(prepared, s, rng);
        ExperimentResult r{s, index, seed, expectation_vector(exec.ideal), expectation_vector(exec.observed), {}};
        if (mode == Mode::kNoisyMitigated) {
            r.mitigated = mitigate_vector(r.noisy, run.models.at(s), omegas.at(s), c.truncation);
        }
        run.results[k] = std::move(r);
    });

    std::stable_sort(run.results.begin(), run.results.end(), [](const auto& a, const auto& b) {
        return std::tie(a.shots, a.index) < std::tie(b.shots, b.index);
    });
    return run;
}

std::vector<ShotGridRow> summarize(const SuiteRun& run) {
    const auto& c = run.config;
    auto target = c.target();
    std::uint64_t t = target.z_mask();
    double exact = run.exact.at(t);
    std::vector<ShotGridRow> rows;

    auto begin = run.results.begin();
    while (begin != run.results.end()) {
        auto end = std::find_if(begin, run.results.end(), [&](const auto& r) { return r.shots != begin->shots; });
        std::uint64_t s = begin->shots;
        std::size_t n = static_cast<std::size_t>(end - begin);
        bool mitigated = !begin->mitigated.empty();

        std::vector<double> err_ideal, err_noisy, err_mit, noisy_vals, mit_vals;
        std::vector<double> pooled(begin->noisy.size(), 0.0);
        for (auto it = begin; it != end; ++it) {
            err_ideal.push_back(absolute_error(it->ideal[t], exact));
            err_noisy.push_back(absolute_error(it->noisy[t], exact));
            noisy_vals.push_back(it->noisy[t]);
            if (mitigated) {
                err_mit.push_back(absolute_error(it->mitigated[t], exact));
                mit_vals.push_back(it->mitigated[t]);
            }
            for (std::size_t m = 0; m < pooled.size(); m++) {
                pooled[m] += it->noisy[m];
            }
        }
        for (auto& v : pooled) {
            v /= static_cast<double>(n);
        }
        pooled[0] = 1.0;

        ShotGridRow row{s,
                        n,
                        mean_with_error(err_ideal),
                        mean_with_error(err_noisy),
                        std::nullopt,
                        histogram_stats(noisy_vals),
                        std::nullopt,
                        0,
                        std::nullopt,
                        std::nullopt,
                        std::nullopt};
        row.measured_var_noisy = row.hist_noisy.sample_std * row.hist_noisy.sample_std;

        auto model_it = run.models.find(s);
        BitFlipModel model = model_it != run.models.end() ? model_it->second : BitFlipModel::noiseless(c.qubit_count);
        auto pooled_mitigated = mitigate(pooled, model);
        row.predicted_noisy = predicted_noisy_variance(target, pooled, pooled_mitigated, model);

        if (mitigated) {
            row.error_mitigated = mean_with_error(err_mit);
            row.hist_mitigated = histogram_stats(mit_vals);
            row.measured_var_mitigated = row.hist_mitigated->sample_std * row.hist_mitigated->sample_std;
            // The closed form describes full inversion only.
            if (!c.truncation || *c.truncation >= c.qubit_count) {
                row.predicted_mitigated = predicted_mitigated_variance(target, pooled, model);
            }
        }
        rows.push_back(row);
        begin = end;
    }
    return rows;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

namespace {

double parse_double(std::string_view text) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
    return v;
}

std::uint64_t parse_uint(std::string_view text) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw std::invalid_argument("not an unsigned integer: '" + std::string(text) + "'");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

std::string optional_cell(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << text;
}

}  // namespace

void write_results_csv(std::ostream& out, const SuiteRun& run) {
    std::uint64_t dim = dimension(run.config.qubit_count);
    bool mitigated = run.mode == Mode::kNoisyMitigated;
    out << "s,experiment,stream_seed";
    for (const char* prefix : {"ideal_", "noisy_", "mitigated_"}) {
        if (prefix[0] == 'm' && !mitigated) {
            continue;
        }
        for (std::uint64_t m = 1; m < dim; m++) {
            out << ',' << prefix << m;
        }
    }
    out << '\n';
    for (const auto& r : run.results) {
        out << r.shots << ',' << r.index << ',' << r.stream_seed;
        for (const auto* vec : {&r.ideal, &r.noisy, &r.mitigated}) {
            for (std::size_t m = 1; m < vec->size(); m++) {
                out << ',' << format_double((*vec)[m]);
            }
        }
        out << '\n';
    }
}

std::vector<ExperimentResult> read_results_csv(std::istream& in, std::size_t qubit_count) {
    std::uint64_t dim = dimension(qubit_count);
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("results file is empty");
    }
    std::size_t columns = split(line, ',').size();
    std::size_t vectors = (columns - 3) / (dim - 1);
    if (columns < 3 || (columns - 3) % (dim - 1) != 0 || vectors < 2 || vectors > 3) {
        throw std::invalid_argument("results header does not match " + std::to_string(qubit_count) + " qubits");
    }
    std::vector<ExperimentResult> out;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        auto cells = split(line, ',');
        if (cells.size() != columns) {
            throw std::invalid_argument("results row has " + std::to_string(cells.size()) + " cells, expected " +
                                        std::to_string(columns));
        }
        ExperimentResult r{parse_uint(cells[0]), parse_uint(cells[1]), parse_uint(cells[2]), {}, {}, {}};
        std::size_t k = 3;
        for (std::size_t v = 0; v < vectors; v++) {
            auto& vec = v == 0 ? r.ideal : v == 1 ? r.noisy : r.mitigated;
            vec.assign(dim, 1.0);
            for (std::uint64_t m = 1; m < dim; m++) {
                vec[m] = parse_double(cells[k++]);
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

void write_run(const std::filesystem::path& dir, const SuiteRun& run) {
    std::filesystem::create_directories(dir);
    write_text(dir / kConfigFile, config_to_json(run.config).dump(2) + "\n");

    json meta;
    meta["mode"] = to_string(run.mode);
    meta["models"] = json::array();
    for (const auto& [s, model] : run.models) {
        meta["models"].push_back({{"shots", s}, {"model", model_to_json(model)}});
    }
    write_text(dir / kRunFile, meta.dump(2) + "\n");

    std::ostringstream circuit;
    write_circuit(circuit, build_circuit(run.config));
    write_text(dir / kCircuitFile, circuit.str());

    std::ostringstream results;
    write_results_csv(results, run);
    write_text(dir / kResultsFile, results.str());
}

SuiteRun read_run(const std::filesystem::path& dir) {
    SuiteRun run{resolve(read_config(dir / kConfigFile)), Mode::kNoiseFree, {}, {}, {}};
    std::ifstream meta_in(dir / kRunFile);
    if (!meta_in) {
        throw std::runtime_error("missing " + (dir / kRunFile).string());
    }
    auto meta = json::parse(meta_in);
    run.mode = parse_mode(meta.at("mode").get<std::string>());
    for (const auto& entry : meta.at("models")) {
        run.models.emplace(entry.at("shots").get<std::uint64_t>(), model_from_json(entry.at("model")));
    }
    run.exact = expectation_vector(outcome_distribution(simulate(build_circuit(run.config))));
    std::ifstream results_in(dir / kResultsFile);
    if (!results_in) {
        throw std::runtime_error("missing " + (dir / kResultsFile).string());
    }
    run.results = read_results_csv(results_in, run.config.qubit_count);
    return run;
}

namespace {

json fit_or_reason(const std::vector<CurvePoint>& points) {
    try {
        auto f = fit_power_law(points);
        return {{"alpha", f.alpha}, {"beta", f.beta}, {"C", f.prefactor()}, {"residual", f.residual}};
    } catch (const std::invalid_argument& e) {
        return {{"skipped", e.what()}};
    }
}

std::string dat_file(const char* header, const std::vector<std::array<double, 3>>& rows) {
    std::string out = std::string("# ") + header + "\n";
    for (const auto& r : rows) {
        out += format_double(r[0]) + ' ' + format_double(r[1]) + ' ' + format_double(r[2]) + '\n';
    }
    return out;
}

}  // namespace

json write_analysis(const SuiteRun& run, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    auto rows = summarize(run);

    std::ostringstream summary;
    summary << "s,experiments,mae_ideal,mae_ideal_se,mae_noisy,mae_noisy_se,mae_mitigated,mae_mitigated_se,"
               "mean_noisy,std_noisy,gauss_mean_noisy,gauss_sigma_noisy,"
               "mean_mitigated,std_mitigated,gauss_mean_mitigated,gauss_sigma_mitigated,"
               "var_noisy,var_mitigated,pred_var_noisy,pred_bf_noisy,pred_qm_noisy,"
               "pred_var_mitigated,pred_independent_mitigated,pred_covariance_mitigated\n";
    for (const auto& r : rows) {
        auto sd = static_cast<double>(r.s);
        summary << r.s << ',' << r.experiments << ',' << format_double(r.error_ideal.mean) << ','
                << format_double(r.error_ideal.standard_error) << ',' << format_double(r.error_noisy.mean) << ','
                << format_double(r.error_noisy.standard_error) << ','
                << optional_cell(r.error_mitigated ? std::optional(r.error_mitigated->mean) : std::nullopt) << ','
                << optional_cell(r.error_mitigated ? std::optional(r.error_mitigated->standard_error) : std::nullopt)
                << ',' << format_double(r.hist_noisy.mean) << ',' << format_double(r.hist_noisy.sample_std) << ','
                << format_double(r.hist_noisy.gaussian_mean) << ',' << format_double(r.hist_noisy.gaussian_sigma);
        for (auto field : {&HistogramStats::mean, &HistogramStats::sample_std, &HistogramStats::gaussian_mean,
                           &HistogramStats::gaussian_sigma}) {
            summary << ','
                    << optional_cell(r.hist_mitigated ? std::optional((*r.hist_mitigated).*field) : std::nullopt);
        }
        summary << ',' << format_double(r.measured_var_noisy) << ',' << optional_cell(r.measured_var_mitigated);
        summary << ',' << format_double(r.predicted_noisy->total(r.s)) << ','
                << format_double(r.predicted_noisy->bitflip_component / sd) << ','
                << format_double(r.predicted_noisy->qm_component / sd);
        if (r.predicted_mitigated) {
            summary << ',' << format_double(r.predicted_mitigated->total(r.s)) << ','
                    << format_double(r.predicted_mitigated->independent_terms / sd) << ','
                    << format_double(r.predicted_mitigated->covariance_terms / sd);
        } else {
            summary << ",,,";
        }
        summary << '\n';
    }
    write_text(out_dir / "summary.csv", summary.str());

    std::vector<VarianceObservation> noisy_obs, mit_obs;
    std::vector<CurvePoint> noisy_pred, mit_pred;
    for (const auto& r : rows) {
        auto sd = static_cast<double>(r.s);
        noisy_obs.push_back({sd, r.measured_var_noisy, r.experiments});
        noisy_pred.push_back({sd, r.predicted_noisy->total(r.s)});
        if (r.measured_var_mitigated && r.predicted_mitigated) {
            mit_obs.push_back({sd, *r.measured_var_mitigated, r.experiments});
            mit_pred.push_back({sd, r.predicted_mitigated->total(r.s)});
        }
    }
    std::ostringstream comparison;
    comparison << "kind,s,measured,predicted,ratio,z_score,flagged\n";
    auto emit = [&](const char* kind, const std::vector<VarianceComparison>& cmp) {
        for (const auto& v : cmp) {
            comparison << kind << ',' << format_double(v.s) << ',' << format_double(v.measured) << ','
                       << format_double(v.predicted) << ',' << format_double(v.ratio) << ',' << format_double(v.z_score)
                       << ',' << (v.flagged ? 1 : 0) << '\n';
        }
    };
    emit("noisy", compare_variances(noisy_obs, noisy_pred));
    emit("mitigated", compare_variances(mit_obs, mit_pred));
    write_text(out_dir / "variance_comparison.csv", comparison.str());

    std::vector<CurvePoint> err_ideal, err_noisy, err_mit, var_noisy, var_mit;
    std::vector<std::array<double, 3>> d_ideal, d_noisy, d_mit, dv_noisy, dv_mit, dp_noisy, dp_mit;
    for (const auto& r : rows) {
        auto sd = static_cast<double>(r.s);
        err_ideal.push_back({sd, r.error_ideal.mean});
        err_noisy.push_back({sd, r.error_noisy.mean});
        d_ideal.push_back({sd, r.error_ideal.mean, r.error_ideal.standard_error});
        d_noisy.push_back({sd, r.error_noisy.mean, r.error_noisy.standard_error});
        var_noisy.push_back({sd, r.measured_var_noisy});
        dv_noisy.push_back(
            {sd, r.measured_var_noisy, sample_variance_standard_error(r.measured_var_noisy, r.experiments)});
        dp_noisy.push_back({sd, r.predicted_noisy->total(r.s), 0});
        if (r.error_mitigated) {
            err_mit.push_back({sd, r.error_mitigated->mean});
            d_mit.push_back({sd, r.error_mitigated->mean, r.error_mitigated->standard_error});
            var_mit.push_back({sd, *r.measured_var_mitigated});
            dv_mit.push_back({sd, *r.measured_var_mitigated,
                              sample_variance_standard_error(*r.measured_var_mitigated, r.experiments)});
        }
        if (r.predicted_mitigated) {
            dp_mit.push_back({sd, r.predicted_mitigated->total(r.s), 0});
        }
    }

    json fits;
    fits["mode"] = to_string(run.mode);
    fits["observable"] = run.config.target().str();
    fits["error_ideal"] = fit_or_reason(err_ideal);
    fits["error_noisy"] = fit_or_reason(err_noisy);
    fits["variance_noisy"] = fit_or_reason(var_noisy);
    if (!err_mit.empty()) {
        fits["error_mitigated"] = fit_or_reason(err_mit);
        fits["variance_mitigated"] = fit_or_reason(var_mit);
        if (fits["variance_noisy"].contains("alpha") && fits["variance_mitigated"].contains("alpha")) {
            PowerLawFit f0{fits["variance_noisy"]["alpha"], fits["variance_noisy"]["beta"], 0};
            PowerLawFit f1{fits["variance_mitigated"]["alpha"], fits["variance_mitigated"]["beta"], 0};
            auto ratio = overhead_ratio(f0, f1);
            fits["overhead"] = {
                {"prefactor", ratio.prefactor},
                {"exponent", ratio.exponent},
                {"large_statistics_constant",
                 ratio.large_statistics_constant ? json(*ratio.large_statistics_constant) : json(nullptr)}};
        }
    }
    write_text(out_dir / "fits.json", fits.dump(2) + "\n");

    write_text(out_dir / "error_ideal.dat", dat_file("s mean_abs_error standard_error", d_ideal));
    write_text(out_dir / "error_noisy.dat", dat_file("s mean_abs_error standard_error", d_noisy));
    write_text(out_dir / "variance_noisy_measured.dat", dat_file("s sample_variance standard_error", dv_noisy));
    write_text(out_dir / "variance_noisy_predicted.dat", dat_file("s predicted_variance 0", dp_noisy));
    if (!d_mit.empty()) {
        write_text(out_dir / "error_mitigated.dat", dat_file("s mean_abs_error standard_error", d_mit));
        write_text(out_dir / "variance_mitigated_measured.dat", dat_file("s sample_variance standard_error", dv_mit));
    }
    if (!dp_mit.empty()) {
        write_text(out_dir / "variance_mitigated_predicted.dat", dat_file("s predicted_variance 0", dp_mit));
    }
    return fits;
}

}  // namespace remit
