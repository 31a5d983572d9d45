// Copyright (C) 2026 The risho authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#include "risho/cli/config.hpp"

#include "risho/cli/experiments.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

namespace risho::cli {

namespace {

std::vector<KeySpec> build_schema() {
    using K = ValueKind;
    return {
        {"experiment", K::String, "", true, "one of metrics_vs_n, heatmap, trigger_distance, ho_probability, decide"},
        {"seed", K::UInt, "1", false, "master seed"},
        {"output_dir", K::String, "out", false, "artifact directory"},
        {"workers", K::UInt, "1", false, "worker threads for sweeps"},
        {"carrier.frequency_hz", K::Double, "28000000000", false, "carrier frequency"},

        {"metrics.n_values", K::UIntList, "32,64,128", false, "RIS element counts"},
        {"metrics.hop1.mean", K::Double, "1", false, "BS-RIS hop mean"},
        {"metrics.hop1.variance", K::Double, "0.005", false, "BS-RIS hop variance"},
        {"metrics.hop2.mean", K::Double, "1", false, "RIS-UE hop mean"},
        {"metrics.hop2.variance", K::Double, "0.005", false, "RIS-UE hop variance"},
        {"metrics.avg_snr_db", K::Double, "-19.7", false, "P_t / noise in dB"},
        {"metrics.gamma_th_db", K::Double, "10.2", false, "outage threshold in dB"},
        {"metrics.mc_samples", K::UInt, "100000", false, "exact-cascade samples per N (0 = quadrature only)"},

        {"heatmap.n_elements", K::UInt, "64", false, "RIS element count"},
        {"heatmap.element_d_m", K::Double, "0.073", false, "element tile diameter"},
        {"heatmap.rho_m", K::Double, "10", false, "source distance from the RIS"},
        {"heatmap.theta_i_deg", K::Double, "30", false, "incidence angle"},
        {"heatmap.focal_x_m", K::Double, "0", false, "focal point lateral offset"},
        {"heatmap.focal_z_m", K::Double, "2", false, "focal depth"},
        {"heatmap.x_min_m", K::Double, "-0.5", false, "grid"},
        {"heatmap.x_max_m", K::Double, "0.5", false, "grid"},
        {"heatmap.nx", K::UInt, "21", false, "grid"},
        {"heatmap.z_min_m", K::Double, "0.5", false, "grid"},
        {"heatmap.z_max_m", K::Double, "4", false, "grid"},
        {"heatmap.nz", K::UInt, "15", false, "grid"},

        {"trigger.serve_distances_m", K::DoubleList, "60,150", false, "serving BS - RIS distances"},
        {"trigger.n_values", K::UIntList, "16,32,64,100,128,256", false, "RIS element counts"},
        {"trigger.t_h_db", K::DoubleList, "-2,2", false, "HO margins"},
        {"trigger.realizations", K::UInt, "200", false, "realizations per cell"},
        {"trigger.isd_ratio", K::Double, "1.9", false, "target BS distance / serve distance"},
        {"trigger.element_d_m", K::Double, "0.08", false, "RIS element tile diameter"},
        {"trigger.ris_lateral_offset_m", K::Double, "5", false, "RIS offset from the BS-BS axis"},
        {"trigger.ris_height_m", K::Double, "5", false, "RIS height"},
        {"trigger.bs_height_m", K::Double, "10", false, "BS height"},
        {"trigger.ue_height_m", K::Double, "1.5", false, "UE height"},
        {"trigger.bs_aperture_m", K::Double, "1", false, "BS array aperture"},
        {"trigger.tx_power_dbm", K::Double, "30", false, "BS transmit power"},
        {"trigger.noise_power_dbm", K::Double, "-90", false, "noise power"},
        {"trigger.start_m", K::Double, "1", false, "trajectory start on the axis"},
        {"trigger.step_m", K::Double, "0.1", false, "travel per sample"},
        {"trigger.kappa", K::Double, "0.1", false, "hop variance / mean^2"},
        {"trigger.fading_kappa", K::Double, "0.05", false, "direct-link amplitude variance / mean^2"},
        {"trigger.l3_filter_k", K::Double, "16", false, "measurement filter coefficient"},

        {"ho.n_values", K::UIntList, "32,64,128", false, "RIS element counts"},
        {"ho.hho_thresholds", K::DoubleList, "1e-5,3.1622776601683795e-5,1e-4,3.1622776601683794e-4,1e-3,3.1622776601683794e-3,1e-2,3.1622776601683791e-2,0.1", false, "T_hh grid"},
        {"ho.sho_thresholds", K::DoubleList, "1e-7,1e-6,1e-5,1e-4,1e-3,1e-2", false, "T_hs grid"},
        {"ho.sho_t_hh", K::Double, "0.05", false, "T_hh used by the SHO sweep"},
        {"ho.samples", K::UInt, "20000", false, "paired realizations per N"},
        {"ho.avg_snr_db", K::Double, "12", false, "P_t / noise in dB"},
        {"ho.serving.mean", K::Double, "1", false, "serving link amplitude mean"},
        {"ho.serving.variance", K::Double, "0.1", false, "serving link amplitude variance"},
        {"ho.candidate.hop1.mean", K::Double, "0.125", false, "candidate BS-RIS hop mean"},
        {"ho.candidate.hop1.variance", K::Double, "0.0015625", false, "candidate BS-RIS hop variance"},
        {"ho.candidate.hop2.mean", K::Double, "0.125", false, "candidate RIS-UE hop mean"},
        {"ho.candidate.hop2.variance", K::Double, "0.0015625", false, "candidate RIS-UE hop variance"},

        {"thresholds.t_hh", K::Double, "0.001", false, "hard HO BER threshold"},
        {"thresholds.t_hs", K::Double, "1e-5", false, "soft HO BER threshold"},
        {"thresholds.epsilon", K::Double, "0.0001", false, "ping-pong margin"},
        {"thresholds.load", K::UInt, "50", false, "active-connection threshold"},

        {"decide.serving_id", K::UInt, "0", false, "serving link id"},
        {"decide.serving_ber", K::Double, "0.01", false, "serving link BER"},
        {"decide.active_connections", K::UInt, "0", false, "serving link load"},
        {"decide.direct", K::String, "", false, "direct candidates, id:ber pairs separated by commas"},
        {"decide.non_direct", K::String, "", false, "RIS-aided candidates, id:ber pairs separated by commas"},
    };
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::optional<double> parse_double(const std::string &s) {
    if (s.empty()) return std::nullopt;
    errno = 0;
    char *end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::optional<std::uint64_t> parse_uint(const std::string &s) {
    std::uint64_t v = 0;
    const auto *first = s.data();
    const auto *last = s.data() + s.size();
    if (s.empty()) return std::nullopt;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) return std::nullopt;
    return v;
}

std::vector<std::string> split_list(const std::string &s) {
    std::vector<std::string> out;
    if (trim(s).empty()) return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
}

std::optional<Value> parse_value(ValueKind kind, const std::string &text, std::string &why) {
    switch (kind) {
    case ValueKind::String: return Value{text};
    case ValueKind::UInt: {
        auto v = parse_uint(text);
        if (!v) {
            why = "expected a non-negative integer, got '" + text + "'";
            return std::nullopt;
        }
        return Value{*v};
    }
    case ValueKind::Double: {
        auto v = parse_double(text);
        if (!v) {
            why = "expected a finite number, got '" + text + "'";
            return std::nullopt;
        }
        return Value{*v};
    }
    case ValueKind::DoubleList: {
        std::vector<double> out;
        for (const auto &item : split_list(text)) {
            auto v = parse_double(item);
            if (!v) {
                why = "expected a comma-separated list of numbers, bad item '" + item + "'";
                return std::nullopt;
            }
            out.push_back(*v);
        }
        if (out.empty()) {
            why = "list must not be empty";
            return std::nullopt;
        }
        return Value{out};
    }
    case ValueKind::UIntList: {
        std::vector<std::uint64_t> out;
        for (const auto &item : split_list(text)) {
            auto v = parse_uint(item);
            if (!v) {
                why = "expected a comma-separated list of integers, bad item '" + item + "'";
                return std::nullopt;
            }
            out.push_back(*v);
        }
        if (out.empty()) {
            why = "list must not be empty";
            return std::nullopt;
        }
        return Value{out};
    }
    }
    return std::nullopt;
}

std::string format_value(const Value &v) {
    struct {
        std::string operator()(const std::string &s) const { return s; }
        std::string operator()(std::uint64_t u) const { return std::to_string(u); }
        std::string operator()(double d) const { return format_double(d); }
        std::string operator()(const std::vector<double> &l) const {
            std::string out;
            for (std::size_t i = 0; i < l.size(); ++i) out += (i ? "," : "") + format_double(l[i]);
            return out;
        }
        std::string operator()(const std::vector<std::uint64_t> &l) const {
            std::string out;
            for (std::size_t i = 0; i < l.size(); ++i) out += (i ? "," : "") + std::to_string(l[i]);
            return out;
        }
    } visitor;
    return std::visit(visitor, v);
}

template <class T> const T &get_as(const ExperimentConfig &cfg, const std::string &key) {
    const auto it = cfg.values.find(key);
    if (it == cfg.values.end()) throw std::out_of_range("config key not set: " + key);
    const T *p = std::get_if<T>(&it->second);
    if (!p) throw std::logic_error("config key has a different type: " + key);
    return *p;
}

} // namespace

const std::vector<KeySpec> &config_schema() {
    static const std::vector<KeySpec> schema = build_schema();
    return schema;
}

std::string schema_text() {
    std::string out = "# key = default    # description\n";
    for (const auto &k : config_schema()) {
        out += k.key + " = " + (k.required ? "<required>" : k.default_text) + "    # " + k.help + "\n";
    }
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const std::string &ExperimentConfig::str(const std::string &key) const { return get_as<std::string>(*this, key); }
std::uint64_t ExperimentConfig::uint(const std::string &key) const { return get_as<std::uint64_t>(*this, key); }
double ExperimentConfig::num(const std::string &key) const { return get_as<double>(*this, key); }
const std::vector<double> &ExperimentConfig::nums(const std::string &key) const {
    return get_as<std::vector<double>>(*this, key);
}
const std::vector<std::uint64_t> &ExperimentConfig::uints(const std::string &key) const {
    return get_as<std::vector<std::uint64_t>>(*this, key);
}

std::string format_error(const ConfigError &e) {
    std::string out;
    if (e.line > 0) out += "line " + std::to_string(e.line) + ": ";
    if (!e.key.empty()) out += e.key + ": ";
    return out + e.message;
}

ValidationResult validate_config(std::string_view text) {
    ValidationResult result;
    auto &errors = result.errors;
    const auto &schema = config_schema();
    std::map<std::string, const KeySpec *> by_key;
    for (const auto &k : schema) by_key[k.key] = &k;

    ExperimentConfig cfg;
    std::map<std::string, std::size_t> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view raw = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            errors.push_back({line_no, "", "expected 'key = value'"});
            continue;
        }
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        const auto spec = by_key.find(key);
        if (spec == by_key.end()) {
            errors.push_back({line_no, key, "unknown key"});
            continue;
        }
        if (auto prev = seen.find(key); prev != seen.end()) {
            errors.push_back({line_no, key, "duplicate key (first set on line " + std::to_string(prev->second) + ")"});
            continue;
        }
        seen[key] = line_no;
        std::string why;
        auto parsed = parse_value(spec->second->kind, value, why);
        if (!parsed) {
            errors.push_back({line_no, key, why});
            continue;
        }
        cfg.values[key] = std::move(*parsed);
    }

    for (const auto &k : schema) {
        if (cfg.values.count(k.key) || seen.count(k.key)) continue;
        if (k.required) {
            errors.push_back({0, k.key, "missing required key"});
            continue;
        }
        std::string why;
        cfg.values[k.key] = *parse_value(k.kind, k.default_text, why);
    }

    if (auto it = cfg.values.find("experiment"); it != cfg.values.end()) {
        const auto &name = std::get<std::string>(it->second);
        if (std::find(kExperiments.begin(), kExperiments.end(), name) == kExperiments.end())
            errors.push_back({seen.count("experiment") ? seen["experiment"] : 0, "experiment",
                              "unknown experiment '" + name + "'"});
    }

    if (!errors.empty()) return result;

    for (auto &e : check_invariants(cfg)) {
        if (auto it = seen.find(e.key); it != seen.end()) e.line = it->second;
        errors.push_back(std::move(e));
    }
    if (errors.empty()) result.config = std::move(cfg);
    return result;
}

std::string normalize(const ExperimentConfig &cfg) {
    std::string out;
    for (const auto &k : config_schema()) {
        const auto it = cfg.values.find(k.key);
        if (it == cfg.values.end()) continue;
        out += k.key + " = " + format_value(it->second) + "\n";
    }
    return out;
}

} // namespace risho::cli
