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

#include "cli.h"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "remit/backend.h"
#include "remit/calibration.h"
#include "remit/experiment.h"
#include "remit/mitigation.h"
#include "remit/readout_noise.h"
#include "remit/variance.h"

namespace remit::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string utc_now() {
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string sha256_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path.string());
    }
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
    std::vector<char> buf(1 << 16);
    while (in) {
        in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
        EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), digest, &len);
    std::ostringstream hex;
    for (unsigned int k = 0; k < len; k++) {
        hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[k]);
    }
    return hex.str();
}

/// Everything needed to re-run a job: argv, resolved settings, input digests.
struct RunManifest {
    RunManifest(std::string command, std::vector<std::string> arguments, std::uint64_t seed, std::size_t workers)
        : command(std::move(command)), arguments(std::move(arguments)), seed(seed), workers(workers) {}

    std::string command;
    std::vector<std::string> arguments;
    std::uint64_t seed = 0;
    std::size_t workers = 0;
    json settings = json::object();
    std::vector<fs::path> inputs;
    std::string started_at = utc_now();

    void write(const fs::path& path) const {
        json j;
        j["tool"] = "remit";
        j["version"] = kToolVersion;
        j["command"] = command;
        j["arguments"] = arguments;
        j["seed"] = seed;
        j["workers"] = workers;
        j["settings"] = settings;
        j["inputs"] = json::object();
        for (const auto& p : inputs) {
            j["inputs"][p.string()] = {{"sha256", sha256_file(p)}};
        }
        j["started_at"] = started_at;
        j["finished_at"] = utc_now();
        std::ofstream out(path);
        if (!out) {
            throw std::runtime_error("cannot write manifest " + path.string());
        }
        out << j.dump(2) << '\n';
    }
};

fs::path sidecar_manifest(const fs::path& output_file) { return fs::path(output_file.string() + ".manifest.json"); }

// A model file that cannot be parsed is bad input, not a runtime failure.
BitFlipModel load_model(const fs::path& path) {
    try {
        return read_model(path);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
}

void report(std::ostream& err, const char* kind, const std::string& message) {
    err << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

/// Reads "operator_mask,expectation" rows. A header row and '#' comments are
/// skipped. The identity entry defaults to 1; every other operator is required.
std::vector<double> read_expectations_csv(const fs::path& path, std::size_t qubit_count) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read " + path.string());
    }
    std::uint64_t dim = dimension(qubit_count);
    std::vector<double> exps(dim, 0.0);
    std::vector<bool> seen(dim, false);
    exps[0] = 1;
    seen[0] = true;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw ConfigError("expected 'operator_mask,expectation' in " + path.string() + ": " + line);
        }
        std::string mask_text = line.substr(0, comma);
        if (first && !mask_text.empty() && !std::isdigit(static_cast<unsigned char>(mask_text[0]))) {
            first = false;
            continue;
        }
        first = false;
        std::uint64_t mask = std::stoull(mask_text);
        double value = std::stod(line.substr(comma + 1));
        if (mask >= dim) {
            throw ConfigError("operator mask " + std::to_string(mask) + " does not fit " + std::to_string(qubit_count) +
                              " qubits");
        }
        exps[mask] = value;
        seen[mask] = true;
    }
    for (std::uint64_t m = 0; m < dim; m++) {
        if (!seen[m]) {
            throw ConfigError("expectation of operator " + std::to_string(m) + " missing from " + path.string());
        }
    }
    return exps;
}

void write_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << text;
}

struct CommonFlags {
    std::uint64_t seed = 0;
    std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--seed", flags.seed, "Master seed");
    cmd->add_option("--workers", flags.workers, "Worker threads (output is identical for any count)")
        ->check(CLI::PositiveNumber);
}

int cmd_calibrate(const std::vector<std::string>& args, std::size_t qubits, std::uint64_t shots,
                  const CommonFlags& common, const fs::path& model_out, const std::optional<fs::path>& device,
                  bool exact, std::ostream& out) {
    RunManifest manifest("calibrate", args, common.seed, common.workers);
    BitFlipModel truth = BitFlipModel::noiseless(qubits);
    if (device) {
        truth = load_model(*device);
        manifest.inputs.push_back(*device);
        if (truth.qubit_count() != qubits) {
            throw ConfigError("device model has " + std::to_string(truth.qubit_count()) + " qubits, --qubits is " +
                              std::to_string(qubits));
        }
    }
    std::unique_ptr<Backend> backend;
    if (exact) {
        backend = std::make_unique<ExactChannelBackend>(truth);
    } else {
        backend = std::make_unique<SampledReadoutBackend>(truth);
    }
    Rng rng = make_stream(common.seed, {stream_tag::kCalibration});
    auto model = calibrate(*backend, qubits, shots, rng);
    if (model_out.has_parent_path()) {
        fs::create_directories(model_out.parent_path());
    }
    write_model(model_out, model);
    manifest.settings = {{"qubits", qubits},
                         {"shots", shots},
                         {"backend", exact ? "exact" : "sampled"},
                         {"device", model_to_json(truth)}};
    manifest.write(sidecar_manifest(model_out));
    out << model_to_json(model).dump(2) << '\n';
    return kExitOk;
}

int cmd_run(const std::vector<std::string>& args, const fs::path& config_path, const std::string& mode_text,
            const fs::path& out_dir, const CommonFlags& common, bool seed_given, std::ostream& out) {
    auto mode = parse_mode(mode_text);
    auto config = read_config(config_path);
    if (seed_given) {
        config.seed = common.seed;
    }
    RunManifest manifest("run", args, config.seed, common.workers);
    auto run = run_suite(config, mode, common.workers);
    write_run(out_dir, run);
    manifest.settings = {{"mode", to_string(mode)}, {"config", config_to_json(run.config)}};
    manifest.inputs.push_back(config_path);
    manifest.write(out_dir / "manifest.json");
    out << "wrote " << run.results.size() << " experiments to " << out_dir.string() << '\n';
    return kExitOk;
}

int cmd_mitigate(const std::vector<std::string>& args, const fs::path& model_path, const fs::path& in_path,
                 const fs::path& out_path, std::optional<std::size_t> truncate, const CommonFlags& common) {
    auto model = load_model(model_path);
    model.require_invertible();
    auto noisy = read_expectations_csv(in_path, model.qubit_count());
    std::vector<double> mitigated;
    if (truncate) {
        if (*truncate > model.qubit_count()) {
            throw ConfigError("--truncate exceeds the qubit count");
        }
        mitigated.resize(noisy.size());
        for (std::uint64_t m = 0; m < noisy.size(); m++) {
            mitigated[m] = mitigate_truncated(PauliZString(model.qubit_count(), m), noisy, model, *truncate);
        }
    } else {
        mitigated = mitigate(noisy, model);
    }
    std::ostringstream csv;
    csv << "operator_mask,expectation,in_range\n";
    for (std::uint64_t m = 0; m < mitigated.size(); m++) {
        csv << m << ',' << format_double(mitigated[m]) << ',' << (std::abs(mitigated[m]) <= 1 ? 1 : 0) << '\n';
    }
    write_file(out_path, csv.str());
    RunManifest manifest("mitigate", args, common.seed, common.workers);
    manifest.settings = {{"truncate", truncate ? json(*truncate) : json("full")}};
    manifest.inputs = {model_path, in_path};
    manifest.write(sidecar_manifest(out_path));
    return kExitOk;
}

int cmd_predict(const std::vector<std::string>& args, const fs::path& model_path, const fs::path& exps_path,
                std::uint64_t shots, const fs::path& out_path, const CommonFlags& common) {
    auto model = load_model(model_path);
    model.require_invertible();
    std::size_t n = model.qubit_count();
    auto noisy = read_expectations_csv(exps_path, n);
    auto mitigated = mitigate(noisy, model);
    std::ostringstream csv;
    csv << "operator_mask,operator,noisy_expectation,mitigated_expectation,pred_bf_noisy,pred_qm_noisy,"
           "pred_var_noisy,pred_independent_mitigated,pred_covariance_mitigated,pred_var_mitigated\n";
    auto sd = static_cast<double>(shots);
    for (std::uint64_t m = 1; m < noisy.size(); m++) {
        PauliZString op(n, m);
        auto pn = predicted_noisy_variance(op, noisy, mitigated, model);
        auto pm = predicted_mitigated_variance(op, noisy, model);
        csv << m << ',' << op.str() << ',' << format_double(noisy[m]) << ',' << format_double(mitigated[m]) << ','
            << format_double(pn.bitflip_component / sd) << ',' << format_double(pn.qm_component / sd) << ','
            << format_double(pn.total(shots)) << ',' << format_double(pm.independent_terms / sd) << ','
            << format_double(pm.covariance_terms / sd) << ',' << format_double(pm.total(shots)) << '\n';
    }
    write_file(out_path, csv.str());
    RunManifest manifest("predict-variance", args, common.seed, common.workers);
    manifest.settings = {{"shots", shots}};
    manifest.inputs = {model_path, exps_path};
    manifest.write(sidecar_manifest(out_path));
    return kExitOk;
}

int cmd_analyze(const std::vector<std::string>& args, const fs::path& in_dir, const fs::path& out_dir,
                const CommonFlags& common, std::ostream& out) {
    auto run = read_run(in_dir);
    auto fits = write_analysis(run, out_dir);
    RunManifest manifest("analyze", args, run.config.seed, common.workers);
    manifest.settings = {{"mode", to_string(run.mode)}, {"config", config_to_json(run.config)}};
    for (const char* f : {kConfigFile, kRunFile, kResultsFile}) {
        manifest.inputs.push_back(in_dir / f);
    }
    manifest.write(out_dir / "manifest.json");
    out << fits.dump(2) << '\n';
    return kExitOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Readout-error mitigation toolkit: calibration, suites, mitigation, variance prediction"};
    app.name("remit");
    app.require_subcommand(1, 1);
    app.set_version_flag("--version", kToolVersion);

    CommonFlags common;

    auto* calibrate_cmd = app.add_subcommand("calibrate", "Estimate a bit-flip model on a simulated device");
    std::size_t qubits = 0;
    std::uint64_t cal_shots = kDefaultCalibrationShots;
    fs::path model_out;
    std::optional<fs::path> device;
    bool exact = false;
    calibrate_cmd->add_option("--qubits", qubits, "Number of qubits")->required()->check(CLI::Range(1, 12));
    calibrate_cmd->add_option("--shots", cal_shots, "Shots per calibration state")->check(CLI::PositiveNumber);
    calibrate_cmd->add_option("--model-out,--out", model_out, "Output model file")->required();
    calibrate_cmd->add_option("--device", device, "True readout model of the simulated device (default: noiseless)")
        ->check(CLI::ExistingFile);
    calibrate_cmd->add_flag("--exact", exact, "Use the exact-channel backend instead of sampling");
    add_common(calibrate_cmd, common);

    auto* run_cmd = app.add_subcommand("run", "Run an experiment suite");
    fs::path config_path, run_out;
    std::string mode = "noisy+mitigated";
    run_cmd->add_option("--config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--mode", mode, "noise-free | noisy | noisy+mitigated")
        ->check(CLI::IsMember({"noise-free", "noisy", "noisy+mitigated"}));
    run_cmd->add_option("--out", run_out, "Output directory")->required();
    add_common(run_cmd, common);

    auto* mitigate_cmd = app.add_subcommand("mitigate", "Mitigate a noisy expectation vector");
    fs::path model_path, in_path, out_path;
    std::optional<std::size_t> truncate;
    mitigate_cmd->add_option("--model", model_path, "Bit-flip model file")->required()->check(CLI::ExistingFile);
    mitigate_cmd->add_option("--in", in_path, "CSV of operator_mask,expectation")->required()->check(CLI::ExistingFile);
    mitigate_cmd->add_option("--out", out_path, "Output CSV")->required();
    mitigate_cmd->add_option("--truncate", truncate, "Keep terms correcting at most k simultaneous flips");
    add_common(mitigate_cmd, common);

    auto* predict_cmd = app.add_subcommand("predict-variance", "Predict noisy and mitigated variances");
    fs::path exps_path;
    std::uint64_t shots = 0;
    predict_cmd->add_option("--model", model_path, "Bit-flip model file")->required()->check(CLI::ExistingFile);
    predict_cmd->add_option("--exps", exps_path, "CSV of noisy operator_mask,expectation")
        ->required()
        ->check(CLI::ExistingFile);
    predict_cmd->add_option("--shots", shots, "Shots per experiment")->required()->check(CLI::PositiveNumber);
    predict_cmd->add_option("--out", out_path, "Output CSV")->required();
    add_common(predict_cmd, common);

    auto* analyze_cmd = app.add_subcommand("analyze", "Summarize and fit a run directory");
    fs::path analyze_in, analyze_out;
    analyze_cmd->add_option("--in", analyze_in, "Run directory")->required()->check(CLI::ExistingDirectory);
    analyze_cmd->add_option("--out", analyze_out, "Output directory")->required();
    add_common(analyze_cmd, common);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        report(err, "usage", e.what());
        err << app.help();
        return kExitUsage;
    }

    try {
        if (calibrate_cmd->parsed()) {
            return cmd_calibrate(args, qubits, cal_shots, common, model_out, device, exact, out);
        }
        if (run_cmd->parsed()) {
            bool seed_given = run_cmd->count("--seed") > 0;
            return cmd_run(args, config_path, mode, run_out, common, seed_given, out);
        }
        if (mitigate_cmd->parsed()) {
            return cmd_mitigate(args, model_path, in_path, out_path, truncate, common);
        }
        if (predict_cmd->parsed()) {
            return cmd_predict(args, model_path, exps_path, shots, out_path, common);
        }
        if (analyze_cmd->parsed()) {
            return cmd_analyze(args, analyze_in, analyze_out, common, out);
        }
    } catch (const NonInvertibleModel& e) {
        report(err, "config", e.what());
        return kExitUsage;
    } catch (const ConfigError& e) {
        report(err, "config", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        report(err, "runtime", e.what());
        return kExitFailure;
    }
    report(err, "usage", "no subcommand");
    return kExitUsage;
}

}  // namespace remit::cli
