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
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace risho::cli {

inline constexpr const char *kToolVersion = "0.1.0";
inline constexpr int kCsvSchemaVersion = 1;

using Cell = std::variant<double, std::int64_t, std::string>;

struct Column {
    std::string name;
    std::string unit;  // empty for dimensionless / labels
};

struct ResultTable {
    std::vector<Column> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
    std::size_t column_index(std::string_view name) const;
    double number(std::size_t row, std::string_view column) const;
    std::string text(std::size_t row, std::string_view column) const;
};

/// Numbers print with 17 significant digits, labels are quoted when needed.
/// Throws NumericalFailure if any numeric cell is not finite.
std::string to_csv(const ResultTable &table);

/// Reads back what to_csv wrote. Cells that parse as numbers become doubles.
ResultTable parse_csv(std::string_view text);

std::string format_cell(const Cell &c);

std::uint64_t fnv1a64(std::string_view data);

struct RunMetadata {
    std::string experiment;
    std::string normalized_config;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::string started_utc;
    double wall_clock_s = 0.0;
    std::vector<std::string> artifacts;
};

std::string manifest_json(const RunMetadata &meta, const ResultTable &table);

} // namespace risho::cli
