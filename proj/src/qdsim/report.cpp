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

#include "qdsim/report.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "qdsim/ent_metrics.hpp"
#include "qdsim/fock.hpp"

namespace qdsim::report {

namespace {

double parse_double(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("key '" + key +
                                    "': cannot parse number '" + value + "'");
    }
    while (pos < value.size() && std::isspace(
                                     static_cast<unsigned char>(value[pos])))
        ++pos;
    if (pos != value.size())
        throw std::invalid_argument("key '" + key +
                                    "': trailing characters in '" + value +
                                    "'");
    return x;
}

fock::ComponentParams to_component_params(
    const source_model::SourceParams& p) {
    fock::ComponentParams cp;
    cp.t1 = p.t1;
    cp.r1 = p.r1;
    cp.t2 = p.t2;
    cp.r2 = p.r2;
    cp.v = p.v;
    cp.v_l = p.v_l;
    cp.q = p.q;
    cp.chi = p.chi;
    return cp;
}

} // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void ModelConfig::set(const std::string& key, const std::string& value) {
    if (key == "scheme") {
        if (value == "LA" || value == "la")
            params_.scheme = photon_stats::Scheme::LA;
        else if (value == "RF" || value == "rf")
            params_.scheme = photon_stats::Scheme::RF;
        else
            throw std::invalid_argument("key 'scheme': expected LA or RF, got '" +
                                        value + "'");
        return;
    }
    set_numeric(key, parse_double(key, value));
}

void ModelConfig::set_numeric(const std::string& key, double value) {
    auto in_unit = [&](double lo, double hi) {
        if (!(value >= lo && value <= hi)) {
            std::ostringstream os;
            os << "key '" << key << "': value " << value << " outside ["
               << lo << ", " << hi << "]";
            throw std::invalid_argument(os.str());
        }
    };
    if (key == "t1") { in_unit(0, 1); params_.t1 = value; }
    else if (key == "r1") { in_unit(0, 1); params_.r1 = value; }
    else if (key == "t2") { in_unit(0, 1); params_.t2 = value; }
    else if (key == "r2") { in_unit(0, 1); params_.r2 = value; }
    else if (key == "v") { in_unit(0, 1); params_.v = value; }
    else if (key == "v_l") { in_unit(0, 1); params_.v_l = value; }
    else if (key == "q") { in_unit(0, 1); params_.q = value; }
    else if (key == "chi") { params_.chi = value; }
    else if (key == "eta") {
        if (!(value > 0.0 && value < 1.0))
            throw std::invalid_argument("key 'eta': value must lie in (0, 1)");
        params_.eta = value;
    }
    else if (key == "c_wn") { in_unit(0, 1); params_.c_wn = value; }
    else if (key == "p0") { in_unit(0, 1); params_.probs.p0 = value; probs_set_ = true; }
    else if (key == "p1") { in_unit(0, 1); params_.probs.p1 = value; probs_set_ = true; }
    else if (key == "p2") { in_unit(0, 1); params_.probs.p2 = value; probs_set_ = true; }
    else if (key == "g2") {
        if (!(value >= 0.0 && value < 0.5))
            throw std::invalid_argument("key 'g2': value must lie in [0, 0.5)");
        g2_ = value;
    }
    else if (key == "brightness") {
        if (!(value > 0.0 && value <= 1.0))
            throw std::invalid_argument(
                "key 'brightness': value must lie in (0, 1]");
        brightness_ = value;
    }
    else if (key == "eta_qdsps") { in_unit(0, 1); eta_qdsps_ = value; }
    else if (key == "eta_fl") { in_unit(0, 1); eta_fl_ = value; }
    else if (key == "eta_mzi") { in_unit(0, 1); eta_mzi_ = value; }
    else if (key == "eta_d") { in_unit(0, 1); eta_d_ = value; }
    else if (key == "r_qd") {
        if (!(value > 0.0))
            throw std::invalid_argument("key 'r_qd': value must be positive");
        pump_rate_hz_ = value;
    }
    else {
        throw std::invalid_argument("unknown configuration key '" + key + "'");
    }
}

std::string ModelConfig::get(const std::string& key) const {
    if (key == "scheme")
        return params_.scheme == photon_stats::Scheme::LA ? "LA" : "RF";
    auto num = [&]() -> double {
        if (key == "t1") return params_.t1;
        if (key == "r1") return params_.r1;
        if (key == "t2") return params_.t2;
        if (key == "r2") return params_.r2;
        if (key == "v") return params_.v;
        if (key == "v_l") return params_.v_l;
        if (key == "q") return params_.q;
        if (key == "chi") return params_.chi;
        if (key == "eta") return params_.eta;
        if (key == "c_wn") return params_.c_wn;
        if (key == "p0") return params_.probs.p0;
        if (key == "p1") return params_.probs.p1;
        if (key == "p2") return params_.probs.p2;
        if (key == "g2" && g2_) return *g2_;
        if (key == "brightness" && brightness_) return *brightness_;
        if (key == "r_qd") return pump_rate_hz_;
        throw std::invalid_argument("unknown or unset configuration key '" +
                                    key + "'");
    };
    return format_double(num());
}

source_model::SourceParams ModelConfig::materialize() const {
    source_model::SourceParams p = params_;
    if (g2_) {
        if (probs_set_)
            throw std::invalid_argument(
                "give either g2 or explicit p0/p1/p2, not both");
        if (p.scheme == photon_stats::Scheme::LA && !brightness_)
            throw std::invalid_argument(
                "LA excitation needs the dot brightness to invert g2");
        const double b = brightness_ ? *brightness_ : 1.0;
        p.probs = photon_stats::g2_to_probabilities(*g2_, b, p.scheme);
    }
    p.validate();
    return p;
}

std::optional<photon_stats::RateBudget> ModelConfig::budget() const {
    if (!(eta_qdsps_ && eta_fl_ && eta_mzi_ && eta_d_)) return std::nullopt;
    photon_stats::RateBudget b;
    b.eta_qdsps = *eta_qdsps_;
    b.eta_fl = *eta_fl_;
    b.eta_mzi = *eta_mzi_;
    b.eta_d = *eta_d_;
    b.pump_rate_hz = pump_rate_hz_;
    return b;
}

bool ModelConfig::is_sweep_axis(const std::string& key) {
    static const std::vector<std::string> axes{"v",   "v_l",        "q",
                                               "chi", "eta",        "c_wn",
                                               "g2",  "brightness", "p2"};
    return std::find(axes.begin(), axes.end(), key) != axes.end();
}

namespace {

struct PointMetrics {
    double s_model = 0.0;
    double s_werner = 0.0;
    double f_model = 0.0;
    double f_werner = 0.0;
    double concurrence = 0.0;
    double horodecki = 0.0;
};

PointMetrics evaluate_point(const source_model::SourceParams& p) {
    const TwoQubitState rho = source_model::build_rho_exp(p);
    const TwoQubitState rho_wn = source_model::apply_werner(rho, p.c_wn);
    const auto settings = ent_metrics::canonical_chsh_settings();
    const Vec4 target = singlet();

    PointMetrics m;
    m.s_model = std::abs(ent_metrics::chsh_value(rho, settings));
    m.s_werner = std::abs(ent_metrics::chsh_value(rho_wn, settings));
    m.f_model = ent_metrics::fidelity_pure(rho, target);
    m.f_werner = ent_metrics::fidelity_pure(rho_wn, target);
    m.concurrence = ent_metrics::concurrence(rho);
    m.horodecki = ent_metrics::horodecki_max(rho);
    return m;
}

} // namespace

std::string model_report_json(const ModelConfig& config) {
    const source_model::SourceParams p = config.materialize();
    const TwoQubitState rho = source_model::build_rho_exp(p);
    const TwoQubitState rho_wn = source_model::apply_werner(rho, p.c_wn);
    const auto settings = ent_metrics::canonical_chsh_settings();
    const Vec4 target = singlet();

    nlohmann::ordered_json params;
    params["scheme"] = p.scheme == photon_stats::Scheme::LA ? "LA" : "RF";
    params["t1"] = p.t1;
    params["r1"] = p.r1;
    params["t2"] = p.t2;
    params["r2"] = p.r2;
    params["v"] = p.v;
    params["v_l"] = p.v_l;
    params["q"] = p.q;
    params["chi"] = p.chi;
    params["eta"] = p.eta;
    params["c_wn"] = p.c_wn;
    params["p0"] = p.probs.p0;
    params["p1"] = p.probs.p1;
    params["p2"] = p.probs.p2;
    params["g2"] = photon_stats::g2_from_probabilities(p.probs);

    nlohmann::ordered_json chsh;
    const double s_signed = ent_metrics::chsh_value(rho, settings);
    chsh["numeric_signed"] = s_signed;
    chsh["numeric"] = std::abs(s_signed);
    if (p.balanced())
        chsh["closed_form"] = source_model::model_chsh(p);
    else
        chsh["closed_form"] = nullptr;
    chsh["werner"] = std::abs(ent_metrics::chsh_value(rho_wn, settings));

    nlohmann::ordered_json fid;
    fid["numeric"] = ent_metrics::fidelity_pure(rho, target);
    if (p.balanced())
        fid["closed_form"] = source_model::model_fidelity(p);
    else
        fid["closed_form"] = nullptr;
    fid["werner"] = ent_metrics::fidelity_pure(rho_wn, target);

    nlohmann::ordered_json j;
    j["params"] = std::move(params);
    j["rho_exp"] = nlohmann::ordered_json::parse(rho.to_json());
    j["chsh"] = std::move(chsh);
    j["fidelity"] = std::move(fid);
    j["concurrence"] = ent_metrics::concurrence(rho);
    j["concurrence_werner"] = ent_metrics::concurrence(rho_wn);
    j["horodecki_max"] = ent_metrics::horodecki_max(rho);
    j["horodecki_max_werner"] = ent_metrics::horodecki_max(rho_wn);
    j["purity"] = ent_metrics::purity(rho);

    if (const auto budget = config.budget()) {
        nlohmann::ordered_json rb;
        rb["eta_qdsps"] = budget->eta_qdsps;
        rb["eta_fl"] = budget->eta_fl;
        rb["eta_mzi"] = budget->eta_mzi;
        rb["eta_d"] = budget->eta_d;
        rb["r_qd_hz"] = budget->pump_rate_hz;
        rb["expected_rate_hz"] =
            photon_stats::expected_coincidence_rate(*budget);
        j["rate_budget"] = std::move(rb);
    }
    return j.dump(2);
}

std::string OracleReport::to_json() const {
    nlohmann::ordered_json j;
    j["delta_rho11"] = delta_rho11;
    j["delta_rho12_2"] = delta_rho12_2;
    j["delta_rho02"] = delta_rho02;
    j["delta_rho_l"] = delta_rho_l;
    j["delta_rho_exp"] = delta_rho_exp;
    j["tolerance"] = tolerance;
    j["ok"] = ok;
    return j.dump(2);
}

OracleReport oracle_compare(const ModelConfig& config, double tolerance,
                            double corrupt_v) {
    source_model::SourceParams p = config.materialize();
    const fock::ComponentParams oracle_params = to_component_params(p);

    // The corruption hook shifts v on the closed-form side only, so a
    // nonzero value must trip the comparison.
    if (corrupt_v != 0.0)
        p.v = std::clamp(p.v + corrupt_v, 0.0, 1.0);

    const auto closed = source_model::component_matrices(p);

    OracleReport r;
    r.tolerance = tolerance;
    r.delta_rho11 = max_abs_diff(
        closed.rho11,
        fock::derive_component(fock::ComponentKind::Rho11, oracle_params));
    r.delta_rho12_2 = max_abs_diff(
        closed.rho12_2,
        fock::derive_component(fock::ComponentKind::Rho12_2, oracle_params));
    r.delta_rho02 = max_abs_diff(
        closed.rho02,
        fock::derive_component(fock::ComponentKind::Rho02, oracle_params));
    r.delta_rho_l = max_abs_diff(
        closed.rho_l,
        fock::derive_component(fock::ComponentKind::Rho22_4, oracle_params));

    const Mat4 oracle_state = fock::oracle_rho_exp(
        oracle_params, p.probs.p0, p.probs.p1, p.probs.p2, p.eta);
    r.delta_rho_exp =
        max_abs_diff(source_model::build_rho_exp(p).matrix(), oracle_state);

    r.ok = r.delta_rho11 <= tolerance && r.delta_rho12_2 <= tolerance &&
           r.delta_rho02 <= tolerance && r.delta_rho_l <= tolerance &&
           r.delta_rho_exp <= tolerance;
    return r;
}

std::string sweep_csv(const ModelConfig& base,
                      const std::vector<SweepAxis>& axes, int threads) {
    if (axes.empty())
        throw std::invalid_argument("sweep needs at least one axis");
    for (const auto& ax : axes) {
        if (!ModelConfig::is_sweep_axis(ax.name))
            throw std::invalid_argument("'" + ax.name +
                                        "' is not a sweepable parameter");
        if (ax.count < 1)
            throw std::invalid_argument("sweep axis count must be >= 1");
    }

    std::size_t total = 1;
    for (const auto& ax : axes) total *= static_cast<std::size_t>(ax.count);

    auto axis_value = [](const SweepAxis& ax, int i) {
        if (ax.count == 1) return ax.start;
        return ax.start + (ax.stop - ax.start) * i / (ax.count - 1);
    };

    struct Row {
        std::vector<double> coords;
        PointMetrics metrics;
    };
    std::vector<Row> rows(total);

    auto run_point = [&](std::size_t flat) {
        std::size_t rem = flat;
        std::vector<double> coords(axes.size());
        // Row-major: the last axis varies fastest.
        for (std::size_t a = axes.size(); a-- > 0;) {
            const int i = static_cast<int>(rem % axes[a].count);
            rem /= axes[a].count;
            coords[a] = axis_value(axes[a], i);
        }
        ModelConfig cfg = base;
        for (std::size_t a = 0; a < axes.size(); ++a)
            cfg.set_numeric(axes[a].name, coords[a]);
        rows[flat] = Row{std::move(coords), evaluate_point(cfg.materialize())};
    };

    int workers = threads;
    if (workers <= 0)
        workers = static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min<int>(workers, 64));

    if (workers == 1 || total < 2) {
        for (std::size_t i = 0; i < total; ++i) run_point(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        std::exception_ptr error;
        std::mutex error_mutex;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&]() {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= total) return;
                    try {
                        run_point(i);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(error_mutex);
                        if (!error) error = std::current_exception();
                        return;
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        if (error) std::rethrow_exception(error);
    }

    std::ostringstream os;
    for (const auto& ax : axes) os << ax.name << ",";
    os << "s_model,s_werner,f_model,f_werner,concurrence,horodecki\n";
    for (const Row& row : rows) {
        for (double c : row.coords) os << format_double(c) << ",";
        os << format_double(row.metrics.s_model) << ","
           << format_double(row.metrics.s_werner) << ","
           << format_double(row.metrics.f_model) << ","
           << format_double(row.metrics.f_werner) << ","
           << format_double(row.metrics.concurrence) << ","
           << format_double(row.metrics.horodecki) << "\n";
    }
    return os.str();
}

} // namespace qdsim::report
