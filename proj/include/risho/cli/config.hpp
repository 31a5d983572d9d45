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


#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace risho::cli {

enum class ValueKind { String, UInt, Double, DoubleList, UIntList };

struct KeySpec {
    std::string key;
    ValueKind kind;
    std::string default_text;  // empty + required = no default
    bool required = false;
    std::string help;
};

/// Every accepted key, in echo order.
const std::vector<KeySpec> &config_schema();
std::string schema_text();

using Value = std::variant<std::string, std::uint64_t, double, std::vector<double>, std::vector<std::uint64_t>>;

struct ExperimentConfig {
    std::map<std::string, Value> values;

    const std::string &str(const std::string &key) const;
    std::uint64_t uint(const std::string &key) const;
    double num(const std::string &key) const;
    const std::vector<double> &nums(const std::string &key) const;
    const std::vector<std::uint64_t> &uints(const std::string &key) const;

    std::string experiment() const { return str("experiment"); }
    std::uint64_t seed() const { return uint("seed"); }
};

struct ConfigError {
    std::size_t line = 0;  // 0 when the error is not tied to one line
    std::string key;
    std::string message;
};

std::string format_error(const ConfigError &e);

struct ValidationResult {
    std::optional<ExperimentConfig> config;
    std::vector<ConfigError> errors;
    bool ok() const { return config.has_value() && errors.empty(); }
};

inline const std::vector<std::string> kExperiments{"metrics_vs_n", "heatmap", "trigger_distance", "ho_probability",
                                                   "decide"};

/// Parses `key = value` lines, fills defaults and checks every module invariant the
/// selected experiment depends on. All problems are reported together.
ValidationResult validate_config(std::string_view text);

/// Canonical text with every key echoed; validate_config(normalize(c)) gives c back.
std::string normalize(const ExperimentConfig &cfg);

std::string format_double(double v);

} // namespace risho::cli
