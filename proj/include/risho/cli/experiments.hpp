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

#include "risho/cli/config.hpp"
#include "risho/cli/result_table.hpp"
#include "risho/ho_engine.hpp"
#include "risho/link_metrics.hpp"
#include "risho/scenario_sim.hpp"

#include <optional>
#include <string>
#include <vector>

namespace risho::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

/// Module-level checks for the experiment selected in `cfg` (plus the thresholds
/// and common keys). Empty when everything holds.
std::vector<ConfigError> check_invariants(const ExperimentConfig &cfg);

struct MetricsFixture {
    HopGainStats hop1;
    HopGainStats hop2;
    double avg_snr = 1.0;
    OutageThreshold outage;
    std::vector<std::size_t> n_values;
    std::size_t mc_samples = 0;
};

MetricsFixture metrics_fixture(const ExperimentConfig &cfg);
TriggerSweepConfig trigger_sweep_config(const ExperimentConfig &cfg);
HoSweepConfig ho_sweep_config(const ExperimentConfig &cfg);
HoThresholds thresholds(const ExperimentConfig &cfg);
/// "3:0.001, 4:1e-4" -> measurements of the given kind.
std::vector<LinkMeasurement> parse_links(const std::string &text, LinkKind kind);

struct NamedTable {
    std::string name;  // file stem
    ResultTable table;
};

/// The tables an experiment writes, computed in memory.
std::vector<NamedTable> compute_tables(const ExperimentConfig &cfg);

/// SVG for a table written by `experiment`, if that table has a plot.
std::optional<std::string> plot_for(const std::string &experiment, const NamedTable &t);

struct RunOptions {
    std::optional<std::uint64_t> seed_override;
    std::optional<std::string> output_dir;
    bool plots = true;
};

struct RunOutcome {
    int exit_code = kExitOk;
    std::vector<std::string> messages;
    std::vector<std::string> artifacts;
};

RunOutcome run_experiment(std::string_view config_text, const RunOptions &opt);

} // namespace risho::cli
