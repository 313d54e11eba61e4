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

#ifndef QDSIM_REPORT_HPP
#define QDSIM_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "qdsim/photon_stats.hpp"
#include "qdsim/source_model.hpp"

namespace qdsim::report {

/// Model inputs at the configuration level: source parameters plus the
/// alternative photon-statistics entry point (g2 and, for LA, the dot
/// brightness) and an optional coincidence-rate budget. Keys map one to
/// one onto the flat `key = value` configuration format.
class ModelConfig {
public:
    /// Sets a key from its textual value. Unknown keys and malformed or
    /// out-of-range values throw std::invalid_argument naming the key.
    void set(const std::string& key, const std::string& value);

    /// Numeric setter used by parameter sweeps (no string round trip).
    void set_numeric(const std::string& key, double value);

    /// Textual value of a key as currently stored.
    std::string get(const std::string& key) const;

    /// Resolves emission probabilities (from g2 when given) and validates
    /// everything; the result is ready for the model routines.
    source_model::SourceParams materialize() const;

    /// Rate budget when all of eta_qdsps, eta_fl, eta_mzi, eta_d are set.
    std::optional<photon_stats::RateBudget> budget() const;

    static bool is_sweep_axis(const std::string& key);

private:
    source_model::SourceParams params_;
    std::optional<double> g2_;
    std::optional<double> brightness_;
    bool probs_set_ = false;
    std::optional<double> eta_qdsps_, eta_fl_, eta_mzi_, eta_d_;
    double pump_rate_hz_ = 79e6;
};

/// One sweep axis: the named key takes `count` evenly spaced values from
/// start to stop inclusive.
struct SweepAxis {
    std::string name;
    double start = 0.0;
    double stop = 0.0;
    int count = 1;
};

/// Full model report as a deterministic JSON document: the state, CHSH and
/// fidelity (closed form where available plus numeric), concurrence,
/// Horodecki bound, purity, the Werner-extended values, and the rate
/// budget when configured.
std::string model_report_json(const ModelConfig& config);

/// Result of the closed-form versus brute-force comparison.
struct OracleReport {
    double delta_rho11 = 0.0;
    double delta_rho12_2 = 0.0;
    double delta_rho02 = 0.0;
    double delta_rho_l = 0.0;
    double delta_rho_exp = 0.0;
    double tolerance = 0.0;
    bool ok = false;

    std::string to_json() const;
};

/// Compares every closed-form component matrix and the composed state
/// against the second-quantization oracle. `corrupt_v` shifts v on the
/// closed-form side only (a hook for verifying that the comparison can
/// fail); leave it at 0 for real checks.
OracleReport oracle_compare(const ModelConfig& config, double tolerance,
                            double corrupt_v = 0.0);

/// Evaluates the model over the sweep grid (row-major over axes) and
/// renders CSV with 17-significant-digit floats. `threads` caps the
/// worker count (0 = hardware concurrency); row order is deterministic
/// regardless of the execution schedule.
std::string sweep_csv(const ModelConfig& base,
                      const std::vector<SweepAxis>& axes, int threads);

/// Shared float formatting for CSV output (%.17g, locale-independent).
std::string format_double(double x);

} // namespace qdsim::report

#endif
