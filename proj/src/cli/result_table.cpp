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


#include "risho/cli/result_table.hpp"

#include "risho/cli/config.hpp"
#include "risho/errors.hpp"

#include <json.hpp>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace risho::cli {

void ResultTable::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size())
        throw std::invalid_argument("row has " + std::to_string(row.size()) + " cells, table has " +
                                    std::to_string(columns.size()) + " columns");
    rows.push_back(std::move(row));
}

std::size_t ResultTable::column_index(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i].name == name) return i;
    throw std::out_of_range("no column named " + std::string(name));
}

double ResultTable::number(std::size_t row, std::string_view column) const {
    const auto &c = rows.at(row).at(column_index(column));
    if (const auto *d = std::get_if<double>(&c)) return *d;
    if (const auto *i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
    throw std::invalid_argument("column " + std::string(column) + " is not numeric");
}

std::string ResultTable::text(std::size_t row, std::string_view column) const {
    return format_cell(rows.at(row).at(column_index(column)));
}

std::string format_cell(const Cell &c) {
    if (const auto *d = std::get_if<double>(&c)) return format_double(*d);
    if (const auto *i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    return std::get<std::string>(c);
}

namespace {

std::string quote(const std::string &s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::vector<std::string> split_record(std::string_view text, std::size_t &pos) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    while (pos < text.size()) {
        const char ch = text[pos++];
        if (quoted) {
            if (ch == '"') {
                if (pos < text.size() && text[pos] == '"') {
                    cur += '"';
                    ++pos;
                } else {
                    quoted = false;
                }
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (ch == '\n') {
            break;
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

} // namespace

std::string to_csv(const ResultTable &table) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) out += (i ? "," : "") + quote(table.columns[i].name);
    out += "\r\n";
    for (const auto &row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (const auto *d = std::get_if<double>(&row[i]); d && !std::isfinite(*d))
                throw NumericalFailure("non-finite value in column " + table.columns[i].name, 0.0);
            out += (i ? "," : "") + quote(format_cell(row[i]));
        }
        out += "\r\n";
    }
    return out;
}

ResultTable parse_csv(std::string_view text) {
    ResultTable table;
    std::size_t pos = 0;
    if (text.empty()) throw std::invalid_argument("empty CSV");
    for (auto &name : split_record(text, pos)) table.columns.push_back({name, ""});
    while (pos < text.size()) {
        auto fields = split_record(text, pos);
        if (fields.size() == 1 && fields[0].empty()) continue;
        std::vector<Cell> row;
        for (auto &f : fields) {
            errno = 0;
            char *end = nullptr;
            const double v = std::strtod(f.c_str(), &end);
            if (!f.empty() && end == f.c_str() + f.size() && errno != ERANGE)
                row.emplace_back(v);
            else
                row.emplace_back(std::move(f));
        }
        table.add_row(std::move(row));
    }
    return table;
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string manifest_json(const RunMetadata &meta, const ResultTable &table) {
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a64(meta.normalized_config)));
    nlohmann::ordered_json j;
    j["tool"] = "ris-ho-sim";
    j["tool_version"] = kToolVersion;
    j["csv_schema_version"] = kCsvSchemaVersion;
    j["experiment"] = meta.experiment;
    j["config_hash_fnv1a64"] = hash;
    j["seed"] = meta.seed;
    j["workers"] = meta.workers;
    j["started_utc"] = meta.started_utc;
    j["wall_clock_s"] = meta.wall_clock_s;
    auto cols = nlohmann::ordered_json::array();
    for (const auto &c : table.columns) cols.push_back({{"name", c.name}, {"unit", c.unit}});
    j["columns"] = cols;
    j["rows"] = table.rows.size();
    j["artifacts"] = meta.artifacts;
    j["config"] = meta.normalized_config;
    return j.dump(2) + "\n";
}

} // namespace risho::cli
