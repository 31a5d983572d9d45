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


#include "risho/cli/experiments.hpp"

#include "risho/cli/svg_plot.hpp"
#include "risho/field_model.hpp"
#include "risho/link_metrics.hpp"
#include "risho/parallel.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace risho::cli {

namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// Runs one module operation; failures come back tagged with its name.
template <class F> auto step(const std::string &op, F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const std::exception &e) {
        throw std::runtime_error(op + ": " + e.what());
    }
}

template <class F> void check(std::vector<ConfigError> &errors, const std::string &key, F &&f) {
    try {
        f();
    } catch (const std::exception &e) {
        errors.push_back({0, key, e.what()});
    }
}

std::vector<std::size_t> sizes(const std::vector<std::uint64_t> &v) {
    return {v.begin(), v.end()};
}

EdgeLayoutParams edge_params(const ExperimentConfig &cfg) {
    EdgeLayoutParams p;
    p.isd_ratio = cfg.num("trigger.isd_ratio");
    p.element_d_m = cfg.num("trigger.element_d_m");
    p.carrier_hz = cfg.num("carrier.frequency_hz");
    p.bs_height_m = cfg.num("trigger.bs_height_m");
    p.ris_height_m = cfg.num("trigger.ris_height_m");
    p.ue_height_m = cfg.num("trigger.ue_height_m");
    p.ris_lateral_offset_m = cfg.num("trigger.ris_lateral_offset_m");
    p.tx_power_dbm = cfg.num("trigger.tx_power_dbm");
    p.noise_power_dbm = cfg.num("trigger.noise_power_dbm");
    p.bs_aperture_m = cfg.num("trigger.bs_aperture_m");
    p.kappa = cfg.num("trigger.kappa");
    p.trajectory_start_m = cfg.num("trigger.start_m");
    p.step_m = cfg.num("trigger.step_m");
    return p;
}

} // namespace

MetricsFixture metrics_fixture(const ExperimentConfig &cfg) {
    MetricsFixture f;
    f.hop1 = {cfg.num("metrics.hop1.mean"), cfg.num("metrics.hop1.variance")};
    f.hop2 = {cfg.num("metrics.hop2.mean"), cfg.num("metrics.hop2.variance")};
    f.avg_snr = db_to_linear(cfg.num("metrics.avg_snr_db"));
    f.outage.gamma_th = db_to_linear(cfg.num("metrics.gamma_th_db"));
    f.n_values = sizes(cfg.uints("metrics.n_values"));
    f.mc_samples = cfg.uint("metrics.mc_samples");
    return f;
}

TriggerSweepConfig trigger_sweep_config(const ExperimentConfig &cfg) {
    TriggerSweepConfig t;
    t.base = edge_params(cfg);
    t.serve_distances_m = cfg.nums("trigger.serve_distances_m");
    t.base.serve_distance_m = t.serve_distances_m.front();
    t.n_values = sizes(cfg.uints("trigger.n_values"));
    t.t_h_db = cfg.nums("trigger.t_h_db");
    t.realizations = cfg.uint("trigger.realizations");
    t.fading.kappa = cfg.num("trigger.fading_kappa");
    t.fading.l3_filter_k = cfg.num("trigger.l3_filter_k");
    t.seed = cfg.seed();
    t.workers = static_cast<unsigned>(cfg.uint("workers"));
    return t;
}

HoSweepConfig ho_sweep_config(const ExperimentConfig &cfg) {
    HoSweepConfig h;
    h.serving = {cfg.num("ho.serving.mean"), cfg.num("ho.serving.variance")};
    h.candidate_hop1 = {cfg.num("ho.candidate.hop1.mean"), cfg.num("ho.candidate.hop1.variance")};
    h.candidate_hop2 = {cfg.num("ho.candidate.hop2.mean"), cfg.num("ho.candidate.hop2.variance")};
    h.avg_snr_db = cfg.num("ho.avg_snr_db");
    h.n_values = sizes(cfg.uints("ho.n_values"));
    h.hho_thresholds = cfg.nums("ho.hho_thresholds");
    h.sho_thresholds = cfg.nums("ho.sho_thresholds");
    h.sho_t_hh = cfg.num("ho.sho_t_hh");
    h.samples = cfg.uint("ho.samples");
    h.seed = cfg.seed();
    return h;
}

HoThresholds thresholds(const ExperimentConfig &cfg) {
    HoThresholds th;
    th.t_hh = cfg.num("thresholds.t_hh");
    th.t_hs = cfg.num("thresholds.t_hs");
    th.epsilon = cfg.num("thresholds.epsilon");
    const auto load = cfg.uint("thresholds.load");
    if (load > 0xffffffffULL) throw std::invalid_argument("thresholds.load does not fit in 32 bits");
    th.load_threshold = static_cast<std::uint32_t>(load);
    return th;
}

std::vector<LinkMeasurement> parse_links(const std::string &text, LinkKind kind) {
    std::vector<LinkMeasurement> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        item = item.substr(b, item.find_last_not_of(" \t") - b + 1);
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("link '" + item + "' is not id:ber");
        std::size_t used = 0;
        const std::string id_text = item.substr(0, colon);
        const std::string ber_text = item.substr(colon + 1);
        unsigned long long id = 0;
        double ber = 0.0;
        try {
            id = std::stoull(id_text, &used);
            if (used != id_text.size() || id_text.find('-') != std::string::npos) throw std::invalid_argument("");
            ber = std::stod(ber_text, &used);
            if (used != ber_text.size()) throw std::invalid_argument("");
        } catch (const std::exception &) {
            throw std::invalid_argument("link '" + item + "' is not id:ber");
        }
        if (id > 0xffffffffULL) throw std::invalid_argument("link id " + id_text + " does not fit in 32 bits");
        out.push_back({static_cast<LinkId>(id), kind, ber});
    }
    return out;
}

std::vector<ConfigError> check_invariants(const ExperimentConfig &cfg) {
    std::vector<ConfigError> errors;
    const auto exp = cfg.experiment();
    if (cfg.uint("workers") == 0 || cfg.uint("workers") > 1024)
        errors.push_back({0, "workers", "workers must lie in [1, 1024]"});
    check(errors, "carrier.frequency_hz", [&] { CarrierConfig::from_frequency(cfg.num("carrier.frequency_hz")); });
    try {
        thresholds(cfg).validate();
    } catch (const std::exception &e) {
        // messages lead with the offending field name
        const std::string msg = e.what();
        std::string key = "thresholds";
        for (const char *field : {"t_hs", "t_hh", "epsilon", "load"})
            if (msg.rfind(field, 0) == 0 || msg.find(std::string("thresholds.") + field) != std::string::npos) {
                key = std::string("thresholds.") + field;
                break;
            }
        errors.push_back({0, key, msg});
    }

    if (exp == "metrics_vs_n") {
        const auto f = metrics_fixture(cfg);
        check(errors, "metrics.hop1", [&] { f.hop1.validate(); });
        check(errors, "metrics.hop2", [&] { f.hop2.validate(); });
        check(errors, "metrics.gamma_th_db", [&] { f.outage.validate(); });
        for (auto n : f.n_values)
            if (n == 0) errors.push_back({0, "metrics.n_values", "N values must be positive"});
        check(errors, "metrics", [&] {
            for (auto n : f.n_values)
                if (n > 0) SnrModel::make(cascade_moments(f.hop1, f.hop2, n), f.avg_snr);
        });
    } else if (exp == "heatmap") {
        check(errors, "heatmap.n_elements", [&] {
            RisPanel(cfg.uint("heatmap.n_elements"), cfg.num("heatmap.element_d_m"));
        });
        if (!(cfg.num("heatmap.rho_m") > 0.0)) errors.push_back({0, "heatmap.rho_m", "rho must be positive"});
        if (!(std::abs(cfg.num("heatmap.theta_i_deg")) < 90.0))
            errors.push_back({0, "heatmap.theta_i_deg", "incidence angle must lie in (-90, 90) degrees"});
        if (!(cfg.num("heatmap.focal_z_m") > 0.0))
            errors.push_back({0, "heatmap.focal_z_m", "focal depth must be positive"});
        if (!(cfg.num("heatmap.x_max_m") > cfg.num("heatmap.x_min_m")))
            errors.push_back({0, "heatmap.x_max_m", "x_max must exceed x_min"});
        if (!(cfg.num("heatmap.z_min_m") > 0.0))
            errors.push_back({0, "heatmap.z_min_m", "grid depths must be positive"});
        if (!(cfg.num("heatmap.z_max_m") > cfg.num("heatmap.z_min_m")))
            errors.push_back({0, "heatmap.z_max_m", "z_max must exceed z_min"});
        if (cfg.uint("heatmap.nx") < 2) errors.push_back({0, "heatmap.nx", "at least 2 grid points"});
        if (cfg.uint("heatmap.nz") < 2) errors.push_back({0, "heatmap.nz", "at least 2 grid points"});
    } else if (exp == "trigger_distance") {
        check(errors, "trigger", [&] {
            const auto t = trigger_sweep_config(cfg);
            t.validate();
            for (double d : t.serve_distances_m) {
                auto p = t.base;
                p.serve_distance_m = d;
                for (auto n : t.n_values) {
                    p.n_elements = n;
                    make_edge_layout(p).validate();
                }
            }
        });
    } else if (exp == "ho_probability") {
        check(errors, "ho", [&] { ho_sweep_config(cfg).validate(); });
    } else if (exp == "decide") {
        check(errors, "decide.direct", [&] { parse_links(cfg.str("decide.direct"), LinkKind::Direct); });
        check(errors, "decide.non_direct", [&] { parse_links(cfg.str("decide.non_direct"), LinkKind::NonDirect); });
        if (cfg.uint("decide.serving_id") > 0xffffffffULL)
            errors.push_back({0, "decide.serving_id", "link id does not fit in 32 bits"});
        if (cfg.uint("decide.active_connections") > 0xffffffffULL)
            errors.push_back({0, "decide.active_connections", "value does not fit in 32 bits"});
        const double ber = cfg.num("decide.serving_ber");
        if (!(ber >= 0.0 && ber <= 0.5)) errors.push_back({0, "decide.serving_ber", "BER outside [0, 0.5]"});
        if (errors.empty()) {
            check(errors, "decide", [&] {
                const auto d = parse_links(cfg.str("decide.direct"), LinkKind::Direct);
                const auto nd = parse_links(cfg.str("decide.non_direct"), LinkKind::NonDirect);
                ServingState s{{static_cast<LinkId>(cfg.uint("decide.serving_id")), LinkKind::Direct, ber},
                               static_cast<std::uint32_t>(cfg.uint("decide.active_connections"))};
                decide_handover(s, d, nd, thresholds(cfg));
            });
        }
    }
    return errors;
}

namespace {

ResultTable metrics_table(const ExperimentConfig &cfg) {
    const auto f = metrics_fixture(cfg);
    ResultTable t;
    t.columns = {{"metric", ""},          {"n_elements", ""},    {"value", ""},
                 {"abs_error_est", ""},   {"tail_mass_bound", ""}, {"mc_value", ""},
                 {"mc_std_error", ""},    {"mc_samples", ""}};
    struct PerN {
        MetricResult ber, outage, capacity;
        McMetrics mc;
    };
    std::vector<PerN> per;
    for (auto n : f.n_values) {
        PerN p;
        const auto model = step("cascade_moments", [&] { return SnrModel::make(cascade_moments(f.hop1, f.hop2, n), f.avg_snr); });
        p.ber = step("average_ber", [&] { return average_ber(model); });
        p.outage = step("outage_probability", [&] { return outage_probability(model, f.outage); });
        p.capacity = step("ergodic_capacity", [&] { return ergodic_capacity(model); });
        if (f.mc_samples > 0) {
            McOptions mo;
            mo.workers = static_cast<unsigned>(cfg.uint("workers"));
            p.mc = step("mc_metrics", [&] { return mc_metrics(derive_seed(cfg.seed(), n), model, f.mc_samples, f.outage, mo); });
        }
        per.push_back(p);
    }
    auto add = [&](const char *name, auto pick_q, auto pick_mc) {
        for (std::size_t i = 0; i < f.n_values.size(); ++i) {
            const MetricResult &q = pick_q(per[i]);
            const MetricResult &m = pick_mc(per[i].mc);
            const bool mc = f.mc_samples > 0;
            t.add_row({std::string(name), static_cast<std::int64_t>(f.n_values[i]), q.value, q.abs_error_est,
                       q.tail_mass_bound, mc ? m.value : 0.0, mc ? m.abs_error_est : 0.0,
                       static_cast<std::int64_t>(f.mc_samples)});
        }
    };
    add("ber", [](const PerN &p) -> const MetricResult & { return p.ber; },
        [](const McMetrics &m) -> const MetricResult & { return m.ber; });
    add("outage", [](const PerN &p) -> const MetricResult & { return p.outage; },
        [](const McMetrics &m) -> const MetricResult & { return m.outage; });
    add("capacity_bps_hz", [](const PerN &p) -> const MetricResult & { return p.capacity; },
        [](const McMetrics &m) -> const MetricResult & { return m.capacity; });
    return t;
}

std::vector<NamedTable> heatmap_tables(const ExperimentConfig &cfg) {
    const double lambda = CarrierConfig::from_frequency(cfg.num("carrier.frequency_hz")).wavelength_m;
    RisPanel panel(cfg.uint("heatmap.n_elements"), cfg.num("heatmap.element_d_m"));
    SourceGeometry src;
    src.rho_m = cfg.num("heatmap.rho_m");
    src.theta_i_rad = cfg.num("heatmap.theta_i_deg") * std::numbers::pi / 180.0;
    const ObservationPoint focal{cfg.num("heatmap.focal_x_m"), cfg.num("heatmap.focal_z_m")};
    HeatmapGrid grid;
    const auto nx = cfg.uint("heatmap.nx"), nz = cfg.uint("heatmap.nz");
    const double x0 = cfg.num("heatmap.x_min_m"), x1 = cfg.num("heatmap.x_max_m");
    const double z0 = cfg.num("heatmap.z_min_m"), z1 = cfg.num("heatmap.z_max_m");
    for (std::uint64_t i = 0; i < nx; ++i) grid.xs.push_back(x0 + (x1 - x0) * static_cast<double>(i) / static_cast<double>(nx - 1));
    for (std::uint64_t i = 0; i < nz; ++i) grid.zs.push_back(z0 + (z1 - z0) * static_cast<double>(i) / static_cast<double>(nz - 1));

    step("configure_focus", [&] { configure_focus(panel, src, focal, lambda); });
    const auto map = step("beam_heatmap", [&] { return beam_heatmap(panel, src, grid, focal, lambda); });

    ResultTable t;
    t.columns = {{"x_m", "m"}, {"z_m", "m"}, {"power", ""}, {"power_db", "dB"}};
    for (std::size_t iz = 0; iz < grid.zs.size(); ++iz)
        for (std::size_t ix = 0; ix < grid.xs.size(); ++ix)
            t.add_row({grid.xs[ix], grid.zs[iz], map.power[iz * grid.xs.size() + ix], map.at(ix, iz)});

    ResultTable b;
    b.columns = {{"peak_x_m", "m"}, {"peak_z_m", "m"}, {"width_3db_x_m", "m"}, {"depth_3db_z_m", "m"},
                 {"width_truncated", ""}, {"depth_truncated", ""}, {"fraunhofer_array_m", "m"}};
    const auto &s = map.stats;
    b.add_row({s.peak_x_m, s.peak_z_m, s.width_3db_x_m, s.depth_3db_z_m, std::int64_t{s.width_truncated},
               std::int64_t{s.depth_truncated}, fraunhofer_distance(panel.array_diameter_m(), lambda)});
    return {{"heatmap", std::move(t)}, {"heatmap_beam", std::move(b)}};
}

ResultTable trigger_table(const ExperimentConfig &cfg) {
    const auto sweep = trigger_sweep_config(cfg);
    const auto rows = step("trigger_distance_sweep", [&] { return trigger_distance_sweep(sweep); });
    ResultTable t;
    t.columns = {{"serve_distance_m", "m"}, {"n_elements", ""}, {"t_h_db", "dB"},  {"ris_mean_m", "m"},
                 {"ris_se_m", "m"},         {"no_ris_mean_m", "m"}, {"no_ris_se_m", "m"}, {"gain_pct", "%"},
                 {"untriggered", ""}};
    for (const auto &r : rows)
        t.add_row({r.serve_distance_m, static_cast<std::int64_t>(r.n_elements), r.t_h_db, r.ris_mean_m, r.ris_se_m,
                   r.no_ris_mean_m, r.no_ris_se_m, r.gain_pct, static_cast<std::int64_t>(r.untriggered)});
    return t;
}

ResultTable ho_table(const ExperimentConfig &cfg) {
    const auto sweep = ho_sweep_config(cfg);
    const auto rows = step("ho_probability_sweep", [&] { return ho_probability_sweep(sweep); });
    ResultTable t;
    t.columns = {{"mode", ""}, {"n_elements", ""}, {"threshold", ""}, {"probability", ""},
                 {"p_a", ""},  {"p_b", ""},        {"p_ab", ""}};
    for (const auto &r : rows)
        t.add_row({std::string(to_string(r.mode)), static_cast<std::int64_t>(r.n_elements), r.threshold, r.probability,
                   r.p_a, r.p_b, r.p_ab});
    return t;
}

ResultTable decide_table(const ExperimentConfig &cfg) {
    const auto th = thresholds(cfg);
    const auto d = parse_links(cfg.str("decide.direct"), LinkKind::Direct);
    const auto nd = parse_links(cfg.str("decide.non_direct"), LinkKind::NonDirect);
    ServingState s{{static_cast<LinkId>(cfg.uint("decide.serving_id")), LinkKind::Direct, cfg.num("decide.serving_ber")},
                   static_cast<std::uint32_t>(cfg.uint("decide.active_connections"))};
    const auto dec = step("decide_handover", [&] { return decide_handover(s, d, nd, th); });
    ResultTable t;
    t.columns = {{"mode", ""}, {"chosen_link", ""}, {"t_hh", ""}, {"t_hs", ""}, {"epsilon", ""}, {"load_threshold", ""}};
    t.add_row({std::string(to_string(dec.mode)), dec.chosen_link ? static_cast<std::int64_t>(*dec.chosen_link) : std::int64_t{-1},
               th.t_hh, th.t_hs, th.epsilon, static_cast<std::int64_t>(th.load_threshold)});
    return t;
}

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file(const std::filesystem::path &p, const std::string &content) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + p.string() + " for writing");
    out << content;
    if (!out) throw std::runtime_error("failed writing " + p.string());
}

} // namespace

std::vector<NamedTable> compute_tables(const ExperimentConfig &cfg) {
    const auto exp = cfg.experiment();
    if (exp == "metrics_vs_n") return {{"metrics_vs_n", metrics_table(cfg)}};
    if (exp == "heatmap") return heatmap_tables(cfg);
    if (exp == "trigger_distance") return {{"trigger_distance", trigger_table(cfg)}};
    if (exp == "ho_probability") return {{"ho_probability", ho_table(cfg)}};
    if (exp == "decide") return {{"decide", decide_table(cfg)}};
    throw std::invalid_argument("unknown experiment " + exp);
}

std::optional<std::string> plot_for(const std::string &experiment, const NamedTable &t) {
    if (experiment == "metrics_vs_n" && t.name == "metrics_vs_n") {
        LinePlotSpec s;
        s.title = "Link metrics versus number of RIS elements";
        s.x = "n_elements";
        s.ys = {"value"};
        s.panel = "metric";
        s.x_label = "N";
        return render_line_plot(t.table, s);
    }
    if (experiment == "heatmap" && t.name == "heatmap") {
        HeatmapSpec s;
        s.title = "Normalized received power (dB)";
        s.x = "x_m";
        s.y = "z_m";
        s.value = "power_db";
        s.x_label = "x (m)";
        s.y_label = "z (m)";
        return render_heatmap(t.table, s);
    }
    if (experiment == "trigger_distance") {
        LinePlotSpec s;
        s.title = "Mean HO trigger distance versus number of RIS elements";
        s.x = "n_elements";
        s.ys = {"ris_mean_m", "no_ris_mean_m"};
        s.series = "t_h_db";
        s.panel = "serve_distance_m";
        s.x_label = "N";
        s.y_label = "distance (m)";
        return render_line_plot(t.table, s);
    }
    if (experiment == "ho_probability") {
        LinePlotSpec s;
        s.title = "HO probability versus threshold";
        s.x = "threshold";
        s.ys = {"probability"};
        s.series = "n_elements";
        s.panel = "mode";
        s.log_x = true;
        s.x_label = "threshold";
        return render_line_plot(t.table, s);
    }
    return std::nullopt;
}

RunOutcome run_experiment(std::string_view config_text, const RunOptions &opt) {
    RunOutcome out;
    auto v = validate_config(config_text);
    if (!v.ok()) {
        out.exit_code = kExitValidation;
        for (const auto &e : v.errors) out.messages.push_back(format_error(e));
        return out;
    }
    ExperimentConfig cfg = std::move(*v.config);
    if (opt.seed_override) cfg.values["seed"] = *opt.seed_override;
    if (opt.output_dir) cfg.values["output_dir"] = *opt.output_dir;

    const auto started = std::chrono::steady_clock::now();
    RunMetadata meta;
    meta.experiment = cfg.experiment();
    meta.normalized_config = normalize(cfg);
    meta.seed = cfg.seed();
    meta.workers = static_cast<unsigned>(cfg.uint("workers"));
    meta.started_utc = utc_now();

    std::vector<NamedTable> tables;
    std::vector<std::pair<std::string, std::string>> files;
    try {
        tables = compute_tables(cfg);
        for (const auto &t : tables) {
            files.emplace_back(t.name + ".csv", step("to_csv", [&] { return to_csv(t.table); }));
            if (opt.plots)
                if (auto svg = plot_for(meta.experiment, t)) files.emplace_back(t.name + ".svg", *svg);
        }
    } catch (const std::exception &e) {
        out.exit_code = kExitNumerical;
        out.messages.push_back(std::string("numerical failure in ") + meta.experiment + ": " + e.what());
        return out;
    }

    try {
        const std::filesystem::path dir(cfg.str("output_dir"));
        std::filesystem::create_directories(dir);
        for (const auto &[name, content] : files) {
            write_file(dir / name, content);
            out.artifacts.push_back((dir / name).string());
            meta.artifacts.push_back(name);
        }
        meta.wall_clock_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        write_file(dir / "manifest.json", manifest_json(meta, tables.front().table));
        out.artifacts.push_back((dir / "manifest.json").string());
    } catch (const std::exception &e) {
        out.exit_code = 1;
        out.messages.push_back(std::string("I/O failure: ") + e.what());
    }
    return out;
}

} // namespace risho::cli
