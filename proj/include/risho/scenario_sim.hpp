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

#include "risho/cascade_stats.hpp"
#include "risho/field_model.hpp"
#include "risho/ho_engine.hpp"
#include "risho/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace risho {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
    bool operator==(const Vec3 &) const = default;
};

double distance(const Vec3 &a, const Vec3 &b);

/// Floor used for "no power" in dBm so that every table cell stays finite.
inline constexpr double kNoPowerDbm = -300.0;

double dbm_to_mw(double dbm);
double mw_to_dbm(double mw);

/// Two BSs, one RIS, free-space propagation.
///
/// The RIS must lie in the radiative near field of the target BS antenna array
/// (aperture `bs_aperture_m`). `ris_focal_depth_m` = 0 means the RIS refocuses on
/// the UE at every sample; a positive value pins the focal depth, and the
/// near-field via-RIS power is then scaled by the normalized focusing efficiency.
struct ScenarioLayout {
    Vec3 serving_bs_pos;
    Vec3 target_bs_pos;
    Vec3 ris_pos;
    double tx_power_dbm = 30.0;
    double noise_power_dbm = -90.0;
    RisPanel panel{64, 0.1};
    CarrierConfig carrier = CarrierConfig::from_frequency(28e9);
    double bs_aperture_m = 1.0;
    double scattering_kappa = 0.1;
    double ris_focal_depth_m = 0.0;

    void validate() const;
    double avg_snr() const { return dbm_to_mw(tx_power_dbm) / dbm_to_mw(noise_power_dbm); }
};

struct Rect {
    double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
    double area() const { return (x1 - x0) * (y1 - y0); }
};

struct PppConfig {
    Rect region;
    double bs_density = 0.0;   // points per m^2
    double ris_density = 0.0;  // points per m^2
    std::uint64_t seed = 0;

    void validate() const;
};

struct PppDeployment {
    std::vector<Vec3> bs_positions;
    std::vector<Vec3> ris_positions;
};

/// Homogeneous Poisson point processes on the region (z = 0).
PppDeployment deploy_ppp(const PppConfig &cfg, RngStream &rng);
/// Same, using the config's own seed.
PppDeployment deploy_ppp(const PppConfig &cfg);

/// Free-space hop statistics: mean amplitude lambda / (4 pi d), variance kappa * mean^2.
/// `from_target` selects the target BS as the transmitter of the first hop.
std::pair<HopGainStats, HopGainStats> hop_stats_from_geometry(const ScenarioLayout &layout, const Vec3 &ue_pos,
                                                              bool from_target = false);

/// SNR model of a single direct link with the given amplitude statistics.
SnrModel direct_link_model(const HopGainStats &hop, double avg_snr);

struct Trajectory {
    Vec3 start;
    Vec3 end;
    double speed_mps = 1.0;
    double sample_interval_s = 0.1;

    void validate() const;
    double step_m() const { return speed_mps * sample_interval_s; }
    double length_m() const;
    std::vector<Vec3> sample_positions() const;
};

struct RsrpSample {
    Vec3 position;
    double travelled_m = 0.0;
    double serving_direct_dbm = kNoPowerDbm;
    double serving_via_ris_dbm = kNoPowerDbm;
    double serving_combined_dbm = kNoPowerDbm;
    double target_dbm = kNoPowerDbm;
    FieldRegion ris_region = FieldRegion::FarField;     // UE w.r.t. the whole RIS array
    FieldRegion target_region = FieldRegion::FarField;  // UE w.r.t. the target BS array
};

struct RsrpTrace {
    std::vector<RsrpSample> samples;
    double step_m = 0.0;
};

/// Received power of the reflected path, linear, relative to the transmit power.
double via_ris_gain(const ScenarioLayout &layout, const Vec3 &ue_pos);

RsrpTrace rsrp_along_trajectory(const ScenarioLayout &layout, const Trajectory &traj, bool ris_enabled);

struct TriggerResult {
    double distance_m = 0.0;
    std::size_t index = 0;
    bool triggered = false;
};

/// First sample where target >= serving_combined + t_h_db. Returns the trace
/// length with triggered = false if that never happens.
TriggerResult ho_trigger_distance(const RsrpTrace &trace, double t_h_db);

/// Per-realization measurement model used by the trigger sweeps.
struct FadingConfig {
    double kappa = 0.05;           // amplitude variance / mean^2 of the direct links
    double l3_filter_k = 16.0;     // filter coefficient, a = 1 / 2^(k/4)

    void validate() const;
};

/// Applies independent Gaussian-amplitude fading to the direct serving and target
/// powers of every sample, keeps the RIS path at its mean, then L3-filters the
/// dB values. Always draws two normals per sample so that traces of equal length
/// share random numbers regardless of the RIS configuration.
RsrpTrace faded_trace(const RsrpTrace &mean_trace, RngStream &rng, const FadingConfig &cfg);

/// Geometry used by the trigger experiments: serving BS at the origin, target BS at
/// isd_ratio times the serving distance on the x axis, RIS at the serving distance
/// with a lateral offset, UE walking from the serving BS toward the target BS.
struct EdgeLayoutParams {
    double serve_distance_m = 150.0;
    double isd_ratio = 1.9;
    std::size_t n_elements = 100;
    double element_d_m = 0.08;
    double carrier_hz = 28e9;
    double bs_height_m = 10.0;
    double ris_height_m = 5.0;
    double ue_height_m = 1.5;
    double ris_lateral_offset_m = 5.0;
    double tx_power_dbm = 30.0;
    double noise_power_dbm = -90.0;
    double bs_aperture_m = 1.0;
    double kappa = 0.1;
    double trajectory_start_m = 1.0;
    double step_m = 0.1;
};

void validate_edge_params(const EdgeLayoutParams &p);
ScenarioLayout make_edge_layout(const EdgeLayoutParams &p);
Trajectory make_edge_trajectory(const EdgeLayoutParams &p);

struct TriggerSweepConfig {
    EdgeLayoutParams base;
    std::vector<double> serve_distances_m{60.0, 150.0};
    std::vector<std::size_t> n_values{16, 32, 64, 100, 128, 256};
    std::vector<double> t_h_db{-2.0, 2.0};
    std::size_t realizations = 200;
    FadingConfig fading;
    std::uint64_t seed = 1;
    unsigned workers = 1;

    void validate() const;
};

struct TriggerSweepRow {
    double serve_distance_m = 0.0;
    std::size_t n_elements = 0;
    double t_h_db = 0.0;
    double ris_mean_m = 0.0;
    double ris_se_m = 0.0;
    double no_ris_mean_m = 0.0;
    double no_ris_se_m = 0.0;
    double gain_pct = 0.0;
    std::size_t untriggered = 0;  // realizations that never triggered (RIS enabled)
};

/// Mean trigger distances over seeded realizations for every (D, N, t_h) cell.
/// Realization r at distance index i uses stream derive_seed(seed, i) / r for
/// every N and t_h (common random numbers), so columns are directly comparable.
std::vector<TriggerSweepRow> trigger_distance_sweep(const TriggerSweepConfig &cfg);

/// Link fixtures for the HO probability sweeps, in normalized amplitude units.
struct HoSweepConfig {
    HopGainStats serving{1.0, 0.1};
    HopGainStats candidate_hop1{0.125, 0.0015625};
    HopGainStats candidate_hop2{0.125, 0.0015625};
    double avg_snr_db = 12.0;
    std::vector<std::size_t> n_values{32, 64, 128};
    std::vector<double> hho_thresholds;  // T_hh grid
    std::vector<double> sho_thresholds;  // T_hs grid
    double sho_t_hh = 0.05;
    std::size_t samples = 20000;
    std::uint64_t seed = 1;

    void validate() const;
};

struct HoSweepRow {
    HoMode mode = HoMode::HHO;  // HHO or SHO
    std::size_t n_elements = 0;
    double threshold = 0.0;
    double probability = 0.0;
    double p_a = 0.0;
    double p_b = 0.0;
    double p_ab = 0.0;
};

/// Paired BER realizations of the serving (direct) and candidate (via RIS) links.
/// Serving draws come from one stream shared by every N.
std::vector<PairedSample> paired_ber_samples(const HoSweepConfig &cfg, std::size_t n_elements);

std::vector<HoSweepRow> ho_probability_sweep(const HoSweepConfig &cfg);

/// Histogram of RIS-UE distances along a trajectory (bin counts from 0 m).
std::vector<std::size_t> ris_distance_histogram(const ScenarioLayout &layout, const Trajectory &traj, double bin_m);

} // namespace risho
