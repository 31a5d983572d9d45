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


#include "risho/scenario_sim.hpp"

#include "risho/link_metrics.hpp"
#include "risho/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace risho {

namespace {

constexpr double kPi = std::numbers::pi;

double free_space_gain(double d, double wavelength) {
    const double a = wavelength / (4.0 * kPi * d);
    return a * a;
}

void require_finite(double v, const std::string &what) {
    if (!std::isfinite(v)) throw std::invalid_argument(what + " must be finite");
}

std::vector<double> l3_filter(const std::vector<double> &v, double a) {
    std::vector<double> out(v.size());
    if (v.empty()) return out;
    out[0] = v[0];
    for (std::size_t i = 1; i < v.size(); ++i) out[i] = (1.0 - a) * out[i - 1] + a * v[i];
    return out;
}

double mean_of(const std::vector<double> &v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double std_error_of(const std::vector<double> &v, double mean) {
    if (v.size() < 2) return 0.0;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

} // namespace

double distance(const Vec3 &a, const Vec3 &b) {
    const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

double mw_to_dbm(double mw) {
    if (!(mw > 0.0)) return kNoPowerDbm;
    return std::max(kNoPowerDbm, 10.0 * std::log10(mw));
}

void ScenarioLayout::validate() const {
    carrier.validate();
    require_finite(tx_power_dbm, "tx_power_dbm");
    require_finite(noise_power_dbm, "noise_power_dbm");
    for (const Vec3 *p : {&serving_bs_pos, &target_bs_pos, &ris_pos}) {
        require_finite(p->x, "position");
        require_finite(p->y, "position");
        require_finite(p->z, "position");
    }
    if (serving_bs_pos == target_bs_pos || serving_bs_pos == ris_pos || target_bs_pos == ris_pos)
        throw std::invalid_argument("serving BS, target BS and RIS positions must be distinct");
    if (!(bs_aperture_m > 0.0) || !std::isfinite(bs_aperture_m))
        throw std::invalid_argument("bs_aperture_m must be positive");
    if (!(scattering_kappa >= 0.0) || !std::isfinite(scattering_kappa))
        throw std::invalid_argument("scattering_kappa must be >= 0");
    if (!(ris_focal_depth_m >= 0.0) || !std::isfinite(ris_focal_depth_m))
        throw std::invalid_argument("ris_focal_depth_m must be >= 0");
    const double d = distance(ris_pos, target_bs_pos);
    const auto region = classify_region(d, bs_aperture_m, carrier.wavelength_m);
    if (region != FieldRegion::RadiativeNearField)
        throw std::invalid_argument("RIS must lie in the radiative near field of the target BS (distance " +
                                    std::to_string(d) + " m, region " + std::string(to_string(region)) + ")");
}

void PppConfig::validate() const {
    if (!(region.area() > 0.0) || !(region.x1 > region.x0) || !std::isfinite(region.area()))
        throw std::invalid_argument("PPP region must have positive area");
    if (!(bs_density >= 0.0) || !std::isfinite(bs_density)) throw std::invalid_argument("bs_density must be >= 0");
    if (!(ris_density >= 0.0) || !std::isfinite(ris_density)) throw std::invalid_argument("ris_density must be >= 0");
}

PppDeployment deploy_ppp(const PppConfig &cfg, RngStream &rng) {
    cfg.validate();
    const double area = cfg.region.area();
    auto draw = [&](double density) {
        std::vector<Vec3> pts;
        if (density == 0.0) return pts;
        std::poisson_distribution<std::size_t> count(density * area);
        const std::size_t n = count(rng.engine());
        pts.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double x = cfg.region.x0 + (cfg.region.x1 - cfg.region.x0) * rng.uniform();
            const double y = cfg.region.y0 + (cfg.region.y1 - cfg.region.y0) * rng.uniform();
            pts.push_back({x, y, 0.0});
        }
        return pts;
    };
    PppDeployment out;
    out.bs_positions = draw(cfg.bs_density);
    out.ris_positions = draw(cfg.ris_density);
    return out;
}

PppDeployment deploy_ppp(const PppConfig &cfg) {
    RngStream rng(cfg.seed);
    return deploy_ppp(cfg, rng);
}

std::pair<HopGainStats, HopGainStats> hop_stats_from_geometry(const ScenarioLayout &layout, const Vec3 &ue_pos,
                                                              bool from_target) {
    const Vec3 &bs = from_target ? layout.target_bs_pos : layout.serving_bs_pos;
    const double d1 = distance(bs, layout.ris_pos);
    const double d2 = distance(layout.ris_pos, ue_pos);
    if (!(d1 > 0.0) || !(d2 > 0.0)) throw std::domain_error("hop_stats_from_geometry: zero hop distance");
    const double lambda = layout.carrier.wavelength_m;
    const double m1 = lambda / (4.0 * kPi * d1);
    const double m2 = lambda / (4.0 * kPi * d2);
    return {HopGainStats{m1, layout.scattering_kappa * m1 * m1}, HopGainStats{m2, layout.scattering_kappa * m2 * m2}};
}

SnrModel direct_link_model(const HopGainStats &hop, double avg_snr) {
    return SnrModel::make(cascade_moments(hop, HopGainStats{1.0, 0.0}, 1), avg_snr);
}

void Trajectory::validate() const {
    if (!(speed_mps > 0.0) || !std::isfinite(speed_mps)) throw std::invalid_argument("trajectory speed must be positive");
    if (!(sample_interval_s > 0.0) || !std::isfinite(sample_interval_s))
        throw std::invalid_argument("trajectory sample interval must be positive");
    if (start == end) throw std::invalid_argument("trajectory start and end must differ");
}

double Trajectory::length_m() const { return distance(start, end); }

std::vector<Vec3> Trajectory::sample_positions() const {
    validate();
    const double len = length_m();
    const double step = step_m();
    const auto n = static_cast<std::size_t>(std::floor(len / step + 1e-9)) + 1;
    std::vector<Vec3> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = std::min(1.0, static_cast<double>(i) * step / len);
        pts.push_back({start.x + t * (end.x - start.x), start.y + t * (end.y - start.y),
                       start.z + t * (end.z - start.z)});
    }
    return pts;
}

double via_ris_gain(const ScenarioLayout &layout, const Vec3 &ue_pos) {
    const double lambda = layout.carrier.wavelength_m;
    const double d1 = distance(layout.serving_bs_pos, layout.ris_pos);
    const double d2 = distance(layout.ris_pos, ue_pos);
    if (!(d1 > 0.0) || !(d2 > 0.0)) throw std::domain_error("via_ris_gain: zero hop distance");
    const auto &panel = layout.panel;
    const double ae = 0.5 * panel.aperture_d_m() * panel.aperture_d_m();
    const double aperture = static_cast<double>(panel.n_elements()) * ae / (4.0 * kPi * d1 * d2);
    const double g = std::min(aperture * aperture, free_space_gain(d1 + d2, lambda));
    if (layout.ris_focal_depth_m > 0.0 &&
        classify_region(d2, panel.array_diameter_m(), lambda) != FieldRegion::FarField) {
        const auto focus = FocusConfig::make(layout.ris_focal_depth_m, d2, panel.n_elements(), panel.aperture_d_m(),
                                             lambda);
        return g * focusing_efficiency(focus, panel, lambda);
    }
    return g;
}

RsrpTrace rsrp_along_trajectory(const ScenarioLayout &layout, const Trajectory &traj, bool ris_enabled) {
    layout.validate();
    const auto positions = traj.sample_positions();
    const double lambda = layout.carrier.wavelength_m;
    const double ptx = dbm_to_mw(layout.tx_power_dbm);
    RsrpTrace trace;
    trace.step_m = traj.step_m();
    trace.samples.reserve(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) {
        const Vec3 &p = positions[i];
        const double ds = distance(layout.serving_bs_pos, p);
        const double dt = distance(layout.target_bs_pos, p);
        if (!(ds > 0.0) || !(dt > 0.0)) throw std::domain_error("rsrp_along_trajectory: UE at a BS position");
        RsrpSample s;
        s.position = p;
        s.travelled_m = distance(traj.start, p);
        const double direct = ptx * free_space_gain(ds, lambda);
        const double via = ris_enabled ? ptx * via_ris_gain(layout, p) : 0.0;
        s.serving_direct_dbm = mw_to_dbm(direct);
        s.serving_via_ris_dbm = mw_to_dbm(via);
        s.serving_combined_dbm = mw_to_dbm(direct + via);
        s.target_dbm = mw_to_dbm(ptx * free_space_gain(dt, lambda));
        s.ris_region = classify_region(distance(layout.ris_pos, p), layout.panel.array_diameter_m(), lambda);
        s.target_region = classify_region(dt, layout.bs_aperture_m, lambda);
        trace.samples.push_back(s);
    }
    return trace;
}

TriggerResult ho_trigger_distance(const RsrpTrace &trace, double t_h_db) {
    if (trace.samples.empty()) throw std::invalid_argument("ho_trigger_distance: empty trace");
    require_finite(t_h_db, "t_h_db");
    for (std::size_t i = 0; i < trace.samples.size(); ++i) {
        const auto &s = trace.samples[i];
        if (s.target_dbm >= s.serving_combined_dbm + t_h_db) return {s.travelled_m, i, true};
    }
    return {trace.samples.back().travelled_m, trace.samples.size() - 1, false};
}

void FadingConfig::validate() const {
    if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw std::invalid_argument("fading kappa must be >= 0");
    if (!(l3_filter_k >= 0.0) || !std::isfinite(l3_filter_k))
        throw std::invalid_argument("l3 filter coefficient must be >= 0");
}

RsrpTrace faded_trace(const RsrpTrace &mean_trace, RngStream &rng, const FadingConfig &cfg) {
    cfg.validate();
    const double cv = std::sqrt(cfg.kappa);
    const double norm = 1.0 + cfg.kappa;
    const std::size_t n = mean_trace.samples.size();
    std::vector<double> serving(n), target(n);
    RsrpTrace out = mean_trace;
    for (std::size_t i = 0; i < n; ++i) {
        const auto &s = mean_trace.samples[i];
        const double zs = rng.normal();
        const double zt = rng.normal();
        const double fs = (1.0 + cv * zs) * (1.0 + cv * zs) / norm;
        const double ft = (1.0 + cv * zt) * (1.0 + cv * zt) / norm;
        const double direct = dbm_to_mw(s.serving_direct_dbm) * fs;
        const double via = s.serving_via_ris_dbm <= kNoPowerDbm ? 0.0 : dbm_to_mw(s.serving_via_ris_dbm);
        out.samples[i].serving_direct_dbm = mw_to_dbm(direct);
        serving[i] = mw_to_dbm(direct + via);
        target[i] = mw_to_dbm(dbm_to_mw(s.target_dbm) * ft);
    }
    const double a = 1.0 / std::pow(2.0, cfg.l3_filter_k / 4.0);
    serving = l3_filter(serving, a);
    target = l3_filter(target, a);
    for (std::size_t i = 0; i < n; ++i) {
        out.samples[i].serving_combined_dbm = serving[i];
        out.samples[i].target_dbm = target[i];
    }
    return out;
}

void validate_edge_params(const EdgeLayoutParams &p) {
    auto pos = [](double v, const char *what) {
        if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be positive");
    };
    pos(p.serve_distance_m, "serve distance");
    if (!(p.isd_ratio > 1.0) || !std::isfinite(p.isd_ratio)) throw std::invalid_argument("isd_ratio must exceed 1");
    if (p.n_elements == 0) throw std::invalid_argument("n_elements must be positive");
    pos(p.element_d_m, "element_d_m");
    pos(p.carrier_hz, "carrier_hz");
    pos(p.bs_height_m, "bs_height_m");
    pos(p.ue_height_m, "ue_height_m");
    pos(p.step_m, "step_m");
    if (!(p.ris_height_m >= 0.0)) throw std::invalid_argument("ris_height_m must be >= 0");
    if (!(p.ris_lateral_offset_m >= 0.0)) throw std::invalid_argument("ris_lateral_offset_m must be >= 0");
    if (!(p.trajectory_start_m >= 0.0) || !(p.trajectory_start_m < p.isd_ratio * p.serve_distance_m))
        throw std::invalid_argument("trajectory_start_m must lie between the BSs");
    if (!(p.kappa >= 0.0)) throw std::invalid_argument("kappa must be >= 0");
}

ScenarioLayout make_edge_layout(const EdgeLayoutParams &p) {
    validate_edge_params(p);
    ScenarioLayout l;
    l.serving_bs_pos = {0.0, 0.0, p.bs_height_m};
    l.target_bs_pos = {p.isd_ratio * p.serve_distance_m, 0.0, p.bs_height_m};
    l.ris_pos = {p.serve_distance_m, p.ris_lateral_offset_m, p.ris_height_m};
    l.tx_power_dbm = p.tx_power_dbm;
    l.noise_power_dbm = p.noise_power_dbm;
    l.panel = RisPanel(p.n_elements, p.element_d_m);
    l.carrier = CarrierConfig::from_frequency(p.carrier_hz);
    l.bs_aperture_m = p.bs_aperture_m;
    l.scattering_kappa = p.kappa;
    return l;
}

Trajectory make_edge_trajectory(const EdgeLayoutParams &p) {
    validate_edge_params(p);
    Trajectory t;
    t.start = {p.trajectory_start_m, 0.0, p.ue_height_m};
    t.end = {p.isd_ratio * p.serve_distance_m, 0.0, p.ue_height_m};
    t.speed_mps = 1.0;
    t.sample_interval_s = p.step_m;
    return t;
}

void TriggerSweepConfig::validate() const {
    validate_edge_params(base);
    if (serve_distances_m.empty() || n_values.empty() || t_h_db.empty())
        throw std::invalid_argument("trigger sweep grids must be non-empty");
    for (double d : serve_distances_m)
        if (!(d > 0.0) || !std::isfinite(d)) throw std::invalid_argument("serve distances must be positive");
    for (auto n : n_values)
        if (n == 0) throw std::invalid_argument("N values must be positive");
    for (double t : t_h_db) require_finite(t, "t_h_db");
    if (realizations == 0) throw std::invalid_argument("realizations must be positive");
    fading.validate();
}

std::vector<TriggerSweepRow> trigger_distance_sweep(const TriggerSweepConfig &cfg) {
    cfg.validate();
    const std::size_t nd = cfg.serve_distances_m.size();
    const std::size_t nn = cfg.n_values.size();
    const std::size_t nt = cfg.t_h_db.size();
    const std::size_t r_count = cfg.realizations;

    // mean traces: index 0 is the RIS-absent trace, 1 + j for n_values[j]
    std::vector<std::vector<RsrpTrace>> traces(nd);
    for (std::size_t i = 0; i < nd; ++i) {
        EdgeLayoutParams p = cfg.base;
        p.serve_distance_m = cfg.serve_distances_m[i];
        const auto traj = make_edge_trajectory(p);
        traces[i].push_back(rsrp_along_trajectory(make_edge_layout(p), traj, false));
        for (auto n : cfg.n_values) {
            p.n_elements = n;
            traces[i].push_back(rsrp_along_trajectory(make_edge_layout(p), traj, true));
        }
    }

    struct Outcome {
        std::vector<double> dist;  // [(1 + nn) * nt]
        std::vector<char> triggered;
    };
    const auto outcomes = run_indexed(nd * r_count, cfg.workers, [&](std::size_t task) {
        const std::size_t i = task / r_count;
        const std::size_t r = task % r_count;
        Outcome o;
        o.dist.resize((1 + nn) * nt);
        o.triggered.resize((1 + nn) * nt);
        for (std::size_t j = 0; j <= nn; ++j) {
            RngStream rng(derive_seed(cfg.seed, i), r);
            const auto faded = faded_trace(traces[i][j], rng, cfg.fading);
            for (std::size_t k = 0; k < nt; ++k) {
                const auto res = ho_trigger_distance(faded, cfg.t_h_db[k]);
                o.dist[j * nt + k] = res.distance_m;
                o.triggered[j * nt + k] = res.triggered ? 1 : 0;
            }
        }
        return o;
    });

    std::vector<TriggerSweepRow> rows;
    for (std::size_t i = 0; i < nd; ++i) {
        for (std::size_t k = 0; k < nt; ++k) {
            std::vector<double> base(r_count);
            for (std::size_t r = 0; r < r_count; ++r) base[r] = outcomes[i * r_count + r].dist[k];
            const double base_mean = mean_of(base);
            const double base_se = std_error_of(base, base_mean);
            for (std::size_t j = 0; j < nn; ++j) {
                std::vector<double> v(r_count);
                std::size_t untriggered = 0;
                for (std::size_t r = 0; r < r_count; ++r) {
                    const auto &o = outcomes[i * r_count + r];
                    v[r] = o.dist[(1 + j) * nt + k];
                    if (!o.triggered[(1 + j) * nt + k]) ++untriggered;
                }
                TriggerSweepRow row;
                row.serve_distance_m = cfg.serve_distances_m[i];
                row.n_elements = cfg.n_values[j];
                row.t_h_db = cfg.t_h_db[k];
                row.ris_mean_m = mean_of(v);
                row.ris_se_m = std_error_of(v, row.ris_mean_m);
                row.no_ris_mean_m = base_mean;
                row.no_ris_se_m = base_se;
                row.gain_pct = base_mean > 0.0 ? 100.0 * (row.ris_mean_m / base_mean - 1.0) : 0.0;
                row.untriggered = untriggered;
                rows.push_back(row);
            }
        }
    }
    return rows;
}

void HoSweepConfig::validate() const {
    serving.validate();
    candidate_hop1.validate();
    candidate_hop2.validate();
    require_finite(avg_snr_db, "avg_snr_db");
    if (n_values.empty()) throw std::invalid_argument("N values must be non-empty");
    for (auto n : n_values)
        if (n == 0) throw std::invalid_argument("N values must be positive");
    if (hho_thresholds.empty() && sho_thresholds.empty())
        throw std::invalid_argument("at least one threshold grid is required");
    for (double t : hho_thresholds)
        if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("HHO thresholds must lie in (0, 1)");
    for (double t : sho_thresholds)
        if (!(t >= 1e-7 && t <= 1e-2)) throw std::invalid_argument("SHO thresholds must lie in [1e-7, 1e-2]");
    if (!(sho_t_hh > 0.0 && sho_t_hh < 1.0)) throw std::invalid_argument("sho_t_hh must lie in (0, 1)");
    for (double t : sho_thresholds)
        if (!(t < sho_t_hh)) throw std::invalid_argument("SHO thresholds must stay below sho_t_hh");
    if (samples == 0) throw std::invalid_argument("samples must be positive");
}

std::vector<PairedSample> paired_ber_samples(const HoSweepConfig &cfg, std::size_t n_elements) {
    cfg.validate();
    const double snr = std::pow(10.0, cfg.avg_snr_db / 10.0);
    const auto serving = direct_link_model(cfg.serving, snr);
    const auto candidate = SnrModel::make(cascade_moments(cfg.candidate_hop1, cfg.candidate_hop2, n_elements), snr);
    RngStream rs(cfg.seed, 0);
    RngStream rc(cfg.seed, n_elements);
    std::vector<PairedSample> out(cfg.samples);
    for (auto &s : out) {
        s.ber_serving = ber_kernel(sample_snr_exact(rs, serving));
        s.ber_candidate = ber_kernel(sample_snr_exact(rc, candidate));
    }
    return out;
}

std::vector<HoSweepRow> ho_probability_sweep(const HoSweepConfig &cfg) {
    cfg.validate();
    std::vector<HoSweepRow> rows;
    for (auto n : cfg.n_values) {
        const auto samples = paired_ber_samples(cfg, n);
        auto add = [&](HoMode mode, double threshold, const UnionEstimate &u) {
            const double total = static_cast<double>(u.n);
            rows.push_back({mode, n, threshold, u.probability(), static_cast<double>(u.single[0]) / total,
                            static_cast<double>(u.single[1]) / total, static_cast<double>(u.pairs[0]) / total});
        };
        for (double t : cfg.hho_thresholds) {
            HoThresholds th;
            th.t_hh = t;
            th.t_hs = t / 100.0;
            th.epsilon = t / 10.0;
            add(HoMode::HHO, t, hho_probability(samples, th));
        }
        for (double t : cfg.sho_thresholds) {
            HoThresholds th;
            th.t_hh = cfg.sho_t_hh;
            th.t_hs = t;
            th.epsilon = std::min(cfg.sho_t_hh - t, cfg.sho_t_hh) / 10.0;
            add(HoMode::SHO, t, sho_probability(samples, th));
        }
    }
    return rows;
}

std::vector<std::size_t> ris_distance_histogram(const ScenarioLayout &layout, const Trajectory &traj, double bin_m) {
    if (!(bin_m > 0.0) || !std::isfinite(bin_m)) throw std::invalid_argument("histogram bin width must be positive");
    std::vector<std::size_t> counts;
    for (const auto &p : traj.sample_positions()) {
        const auto b = static_cast<std::size_t>(distance(layout.ris_pos, p) / bin_m);
        if (b >= counts.size()) counts.resize(b + 1, 0);
        ++counts[b];
    }
    return counts;
}

} // namespace risho
