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

#include "risho/cli/result_table.hpp"

#include <string>
#include <vector>

namespace risho::cli {

/// One panel per distinct value of `panel` (or a single panel), one polyline per
/// (y column, distinct value of `series`).
struct LinePlotSpec {
    std::string title;
    std::string x;
    std::vector<std::string> ys;
    std::string series;  // optional column
    std::string panel;   // optional column
    bool log_x = false;
    bool log_y = false;
    std::string x_label;
    std::string y_label;
};

struct HeatmapSpec {
    std::string title;
    std::string x;
    std::string y;
    std::string value;
    std::string x_label;
    std::string y_label;
};

/// Both renderers read only numeric values and labels from the table, so a table
/// read back from CSV renders to the same bytes.
std::string render_line_plot(const ResultTable &table, const LinePlotSpec &spec);
std::string render_heatmap(const ResultTable &table, const HeatmapSpec &spec);

} // namespace risho::cli
