/*
 * Copyright 2026 qdsim developers
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line front end for the qdsim shared library. Scenarios:
//   model   predicted state and entanglement metrics as JSON
//   oracle  closed forms cross-checked against the brute-force engine
//   sweep   parameter sweep rendered as CSV
//   tomo    simulated tomography and maximum-likelihood reconstruction
//
// Configuration is flat `key = value` text with '#' comments. Model keys
// are forwarded to the library; scenario keys (seed, shots, noiseless,
// dataset_in, dataset_out, state_file, sweep1, sweep2, out) are handled
// here. Unknown keys abort with a diagnostic naming the key.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdsim.h"

namespace {

struct CliError {
    int code;
    std::string message;
};

void check(qdsim_status status, const std::string& context) {
    if (status != QDSIM_OK)
        throw CliError{1, context + ": " + qdsim_last_error()};
}

// Owned C string from the library.
std::string take_string(char* s) {
    std::string out = s ? s : "";
    qdsim_string_free(s);
    return out;
}

using ParamsPtr = std::unique_ptr<qdsim_params, decltype(&qdsim_params_free)>;
using StatePtr = std::unique_ptr<qdsim_state, decltype(&qdsim_state_free)>;
using DatasetPtr =
    std::unique_ptr<qdsim_dataset, decltype(&qdsim_dataset_free)>;

struct SweepAxisSpec {
    std::string name;
    double start = 0.0;
    double stop = 0.0;
    int count = 1;
};

struct ScenarioConfig {
    std::optional<std::uint64_t> seed;
    long long shots = 10000;
    bool noiseless = false;
    std::optional<std::string> dataset_in;
    std::optional<std::string> dataset_out;
    std::optional<std::string> state_file;
    std::optional<std::string> out;
    std::vector<SweepAxisSpec> sweep_axes;
};

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

SweepAxisSpec parse_sweep_axis(const std::string& key,
                               const std::string& value) {
    std::istringstream is(value);
    SweepAxisSpec ax;
    if (!(is >> ax.name >> ax.start >> ax.stop >> ax.count))
        throw CliError{1, "key '" + key +
                              "': expected '<param> <start> <stop> <count>', "
                              "got '" +
                              value + "'"};
    std::string extra;
    if (is >> extra)
        throw CliError{1, "key '" + key + "': trailing tokens in '" + value +
                              "'"};
    return ax;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw CliError{1, "key '" + key + "': expected a boolean, got '" + value +
                          "'"};
}

// Loads the config file, forwarding model keys to the params handle and
// collecting scenario keys.
void load_config(const std::string& path, qdsim_params* params,
                 ScenarioConfig& scenario) {
    std::ifstream f(path);
    if (!f) throw CliError{1, "cannot open config file '" + path + "'"};
    std::string line;
    int line_no = 0;
    while (std::getline(f, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CliError{1, path + ":" + std::to_string(line_no) +
                                  ": expected 'key = value'"};
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw CliError{1, path + ":" + std::to_string(line_no) +
                                  ": empty key or value"};

        if (key == "seed") {
            scenario.seed = std::stoull(value);
        } else if (key == "shots") {
            scenario.shots = std::stoll(value);
        } else if (key == "noiseless") {
            scenario.noiseless = parse_bool(key, value);
        } else if (key == "dataset_in") {
            scenario.dataset_in = value;
        } else if (key == "dataset_out") {
            scenario.dataset_out = value;
        } else if (key == "state_file") {
            scenario.state_file = value;
        } else if (key == "out") {
            scenario.out = value;
        } else if (key == "sweep1" || key == "sweep2") {
            scenario.sweep_axes.push_back(parse_sweep_axis(key, value));
        } else {
            const qdsim_status st =
                qdsim_params_set(params, key.c_str(), value.c_str());
            if (st != QDSIM_OK)
                throw CliError{1, path + ":" + std::to_string(line_no) +
                                      ": " + qdsim_last_error()};
        }
    }
}

void emit(const std::optional<std::string>& out_path,
          const std::string& payload) {
    if (out_path) {
        std::ofstream f(*out_path, std::ios::binary);
        if (!f) throw CliError{1, "cannot open '" + *out_path + "'"};
        f << payload;
        if (!f) throw CliError{1, "failed writing '" + *out_path + "'"};
    } else {
        std::cout << payload;
    }
}

int sweep_threads() {
    const char* env = std::getenv("QDSIM_THREADS");
    if (!env || !*env) return 0;
    try {
        return std::stoi(env);
    } catch (const std::exception&) {
        throw CliError{1, "QDSIM_THREADS must be an integer"};
    }
}

void require_format(const std::string& format, const std::string& natural,
                    const std::string& scenario) {
    if (!format.empty() && format != natural)
        throw CliError{1, "scenario '" + scenario + "' produces " + natural +
                              " output"};
}

StatePtr source_state(qdsim_params* params, const ScenarioConfig& scenario) {
    qdsim_state* raw = nullptr;
    if (scenario.state_file) {
        std::ifstream f(*scenario.state_file);
        if (!f)
            throw CliError{1, "cannot open state file '" +
                                  *scenario.state_file + "'"};
        std::ostringstream os;
        os << f.rdbuf();
        check(qdsim_state_from_json(os.str().c_str(), &raw),
              "loading state file");
        return StatePtr(raw, &qdsim_state_free);
    }
    check(qdsim_model_build_state(params, &raw), "building model state");
    StatePtr rho(raw, &qdsim_state_free);

    char* c_wn_text = nullptr;
    check(qdsim_params_get(params, "c_wn", &c_wn_text), "reading c_wn");
    const double c_wn = std::stod(take_string(c_wn_text));
    if (c_wn < 1.0) {
        qdsim_state* noisy = nullptr;
        check(qdsim_state_apply_werner(rho.get(), c_wn, &noisy),
              "applying white noise");
        rho.reset(noisy);
    }
    return rho;
}

int run_model(qdsim_params* params, const ScenarioConfig& scenario) {
    char* json = nullptr;
    check(qdsim_model_report_json(params, &json), "model evaluation");
    emit(scenario.out, take_string(json) + "\n");
    return 0;
}

int run_oracle(qdsim_params* params, const ScenarioConfig& scenario,
               double tolerance, double corrupt_v) {
    int ok = 0;
    char* json = nullptr;
    check(qdsim_oracle_compare_json(params, tolerance, corrupt_v, &ok, &json),
          "oracle comparison");
    const std::string report = take_string(json);

    // Human-readable deltas alongside the JSON payload.
    const auto parsed = nlohmann::json::parse(report);
    std::ostringstream os;
    for (const char* k : {"delta_rho11", "delta_rho12_2", "delta_rho02",
                          "delta_rho_l", "delta_rho_exp"})
        os << k << " = " << parsed[k].get<double>() << "\n";
    os << "tolerance = " << tolerance << "\n";
    os << (ok ? "OK" : "MISMATCH") << "\n";
    std::cerr << os.str();

    emit(scenario.out, report + "\n");
    return ok ? 0 : 2;
}

int run_sweep(qdsim_params* params, const ScenarioConfig& scenario) {
    if (scenario.sweep_axes.empty())
        throw CliError{1, "sweep needs a 'sweep1 = <param> <start> <stop> "
                          "<count>' config entry"};
    std::vector<qdsim_sweep_axis> axes;
    axes.reserve(scenario.sweep_axes.size());
    for (const auto& ax : scenario.sweep_axes)
        axes.push_back(qdsim_sweep_axis{ax.name.c_str(), ax.start, ax.stop,
                                        ax.count});
    char* csv = nullptr;
    check(qdsim_sweep_csv(params, axes.data(),
                          static_cast<int>(axes.size()), sweep_threads(),
                          &csv),
          "sweep evaluation");
    emit(scenario.out, take_string(csv));
    return 0;
}

int run_tomo(qdsim_params* params, const ScenarioConfig& scenario) {
    const std::uint64_t seed = scenario.seed.value_or(0);

    // The truth state is known unless the dataset comes from a file.
    StatePtr truth(nullptr, &qdsim_state_free);
    DatasetPtr dataset(nullptr, &qdsim_dataset_free);

    if (scenario.dataset_in) {
        qdsim_dataset* raw = nullptr;
        check(qdsim_dataset_load(scenario.dataset_in->c_str(), &raw),
              "loading dataset");
        dataset.reset(raw);
    } else {
        truth = source_state(params, scenario);
        qdsim_dataset* raw = nullptr;
        if (scenario.noiseless)
            check(qdsim_tomo_expected(truth.get(), scenario.shots, &raw),
                  "computing expected counts");
        else
            check(qdsim_tomo_sample(truth.get(), scenario.shots, seed, &raw),
                  "sampling counts");
        dataset.reset(raw);
        if (scenario.dataset_out) {
            check(qdsim_dataset_save(dataset.get(),
                                     scenario.dataset_out->c_str()),
                  "writing dataset");
        }
    }

    qdsim_mle_result diag{};
    qdsim_state* raw_estimate = nullptr;
    check(qdsim_mle_reconstruct(dataset.get(), nullptr, &raw_estimate, &diag),
          "maximum-likelihood reconstruction");
    StatePtr estimate(raw_estimate, &qdsim_state_free);

    nlohmann::ordered_json j;
    j["shots"] = scenario.shots;
    j["seed"] = seed;
    j["noiseless"] = scenario.noiseless;
    if (scenario.dataset_in) j["dataset_in"] = *scenario.dataset_in;
    if (scenario.dataset_out) j["dataset_out"] = *scenario.dataset_out;

    nlohmann::ordered_json d;
    d["log_likelihood"] = diag.log_likelihood;
    d["iterations"] = diag.iterations;
    d["converged"] = diag.converged != 0;
    d["monotone"] = diag.monotone != 0;
    j["diagnostics"] = std::move(d);

    double value = 0.0;
    check(qdsim_purity(estimate.get(), &value), "purity");
    j["purity"] = value;

    if (truth) {
        check(qdsim_fidelity(truth.get(), estimate.get(), 1, &value),
              "fidelity");
        j["fidelity_to_truth"] = value;
        check(qdsim_trace_distance(truth.get(), estimate.get(), &value),
              "trace distance");
        j["trace_distance_to_truth"] = value;
    }

    char* state_json = nullptr;
    check(qdsim_state_to_json(estimate.get(), &state_json),
          "serializing estimate");
    j["rho_mle"] = nlohmann::ordered_json::parse(take_string(state_json));

    emit(scenario.out, j.dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Noise model and tomography toolkit for a quantum-dot "
                 "entangled-photon source"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string format;
    std::uint64_t seed_flag = 0;
    bool seed_given = false;
    double tolerance = 1e-8;
    double corrupt_v = 0.0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "configuration file")
            ->required();
        cmd->add_option("--out", out_path, "output path (default: stdout)");
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option_function<std::uint64_t>(
            "--seed",
            [&](const std::uint64_t& v) {
                seed_flag = v;
                seed_given = true;
            },
            "random seed (overrides the config)");
    };

    CLI::App* model =
        app.add_subcommand("model", "predicted state and metrics");
    CLI::App* oracle =
        app.add_subcommand("oracle", "closed forms vs brute-force engine");
    CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep as CSV");
    CLI::App* tomo =
        app.add_subcommand("tomo", "simulated tomography and reconstruction");
    for (CLI::App* cmd : {model, oracle, sweep, tomo}) add_common(cmd);
    oracle->add_option("--tolerance", tolerance,
                       "maximum allowed entrywise deviation");
    oracle->add_option("--corrupt-v", corrupt_v, "")->group(""); // test hook

    CLI11_PARSE(app, argc, argv);

    try {
        ParamsPtr params(qdsim_params_new(), &qdsim_params_free);
        if (!params) throw CliError{1, "out of memory"};
        ScenarioConfig scenario;
        load_config(config_path, params.get(), scenario);
        if (!out_path.empty()) scenario.out = out_path;
        if (seed_given) scenario.seed = seed_flag;

        if (app.got_subcommand(model)) {
            require_format(format, "json", "model");
            return run_model(params.get(), scenario);
        }
        if (app.got_subcommand(oracle)) {
            require_format(format, "json", "oracle");
            return run_oracle(params.get(), scenario, tolerance, corrupt_v);
        }
        if (app.got_subcommand(sweep)) {
            require_format(format, "csv", "sweep");
            return run_sweep(params.get(), scenario);
        }
        require_format(format, "json", "tomo");
        return run_tomo(params.get(), scenario);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
