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

#include <CLI11.hpp>

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

bool read_text(const std::string &path, std::string &out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

std::optional<std::uint64_t> env_seed(bool &bad) {
    const char *s = std::getenv("RIS_HO_SEED");
    if (!s || !*s) return std::nullopt;
    char *end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (*end != '\0' || errno == ERANGE || s[0] == '-') {
        bad = true;
        return std::nullopt;
    }
    return v;
}

} // namespace

int main(int argc, char **argv) {
    using namespace risho::cli;
    CLI::App app{"RIS-assisted handover simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool no_plots = false;

    auto *run = app.add_subcommand("run", "run the experiment described by a config file");
    run->add_option("--config", config_path, "config file")->required();
    auto *seed_opt = run->add_option("--seed", seed, "master seed (overrides RIS_HO_SEED and the config)");
    auto *out_opt = run->add_option("--out", out_dir, "output directory");
    run->add_flag("--no-plots", no_plots, "skip SVG output");

    auto *validate = app.add_subcommand("validate", "check a config and print its normalized form");
    validate->add_option("--config", config_path, "config file")->required();

    app.add_subcommand("schema", "print every config key with its default");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    if (app.got_subcommand("schema")) {
        std::cout << schema_text();
        return kExitOk;
    }

    std::string text;
    if (!read_text(config_path, text)) {
        std::cerr << "cannot read config file " << config_path << "\n";
        return kExitValidation;
    }

    if (app.got_subcommand("validate")) {
        const auto v = validate_config(text);
        if (!v.ok()) {
            for (const auto &e : v.errors) std::cerr << "error: " << format_error(e) << "\n";
            return kExitValidation;
        }
        std::cout << normalize(*v.config);
        return kExitOk;
    }

    RunOptions opt;
    bool bad_env = false;
    opt.seed_override = env_seed(bad_env);
    if (bad_env) {
        std::cerr << "error: RIS_HO_SEED is not an unsigned 64-bit integer\n";
        return kExitValidation;
    }
    if (*seed_opt) opt.seed_override = seed;
    if (*out_opt) opt.output_dir = out_dir;
    opt.plots = !no_plots;

    const auto outcome = run_experiment(text, opt);
    for (const auto &m : outcome.messages) std::cerr << "error: " << m << "\n";
    for (const auto &a : outcome.artifacts) std::cout << "wrote " << a << "\n";
    return outcome.exit_code;
}
