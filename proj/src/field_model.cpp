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

#include "risho/field_model.hpp"

#include "risho/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace risho {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_positive(double v, const char *what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be positive and finite");
}

// Power in dB relative to the peak, floored so empty cells stay finite.
double relative_db(double p, double peak) {
    if (p <= 0.0 || peak <= 0.0) return -300.0;
    return std::max(-300.0, 10.0 * std::log10(p / peak));
}

// Walks outward from `center` until the profile drops 3 dB below it and
// returns the interpolated crossing coordinate, or the grid edge.
double crossing(const std::vector<double> &coord, const std::vector<double> &db, std::size_t center, int dir,
                bool &truncated) {
    const double level = db[center] - 3.0;
    std::size_t i = center;
    while (true) {
        const bool at_edge = dir < 0 ? i == 0 : i + 1 == db.size();
        if (at_edge) {
            truncated = true;
            return coord[i];
        }
        const std::size_t next = dir < 0 ? i - 1 : i + 1;
        if (db[next] < level) {
            const double t = (db[i] - level) / (db[i] - db[next]);
            return coord[i] + t * (coord[next] - coord[i]);
        }
        i = next;
    }
}

} // namespace

CarrierConfig CarrierConfig::from_frequency(double hz) {
    require_positive(hz, "carrier frequency");
    return {kSpeedOfLight / hz, hz};
}

CarrierConfig CarrierConfig::from_wavelength(double meters) {
    require_positive(meters, "wavelength");
    return {meters, kSpeedOfLight / meters};
}

void CarrierConfig::validate() const {
    require_positive(wavelength_m, "wavelength");
    require_positive(carrier_freq_hz, "carrier frequency");
    if (std::abs(wavelength_m * carrier_freq_hz - kSpeedOfLight) > 1e-6 * kSpeedOfLight)
        throw std::invalid_argument("wavelength and carrier frequency disagree with the speed of light");
}

std::string_view to_string(FieldRegion region) {
    switch (region) {
    case FieldRegion::ReactiveNearField: return "reactive_near_field";
    case FieldRegion::RadiativeNearField: return "radiative_near_field";
    case FieldRegion::FarField: return "far_field";
    }
    return "unknown";
}

RisPanel::RisPanel(std::size_t n_elements, double aperture_d_m) : n_(n_elements), aperture_(aperture_d_m) {
    if (n_elements == 0) throw std::invalid_argument("RIS element count must be positive");
    rows_ = static_cast<std::size_t>(std::sqrt(static_cast<double>(n_elements)));
    while (rows_ * rows_ > n_elements) --rows_;
    while (n_elements % rows_ != 0) --rows_;
    cols_ = n_elements / rows_;
    require_positive(aperture_d_m, "RIS aperture");
    phases_.assign(n_, 0.0);
    amplitudes_.assign(n_, 1.0);
}

double RisPanel::side_ly_m() const noexcept { return aperture_ / std::numbers::sqrt2; }
double RisPanel::side_lz_m() const noexcept { return aperture_ / std::numbers::sqrt2; }
double RisPanel::pitch_m() const noexcept { return aperture_ / std::numbers::sqrt2; }

double RisPanel::element_aperture_side_m() const noexcept {
    return aperture_ / std::sqrt(static_cast<double>(n_) / 8.0);
}

double RisPanel::array_diameter_m() const noexcept { return std::sqrt(static_cast<double>(n_)) * aperture_; }

double RisPanel::center_x(std::size_t r) const {
    if (r >= rows_) throw std::invalid_argument("RIS row index out of range");
    return (static_cast<double>(r) - 0.5 * static_cast<double>(rows_ - 1)) * pitch_m();
}

double RisPanel::center_y(std::size_t c) const {
    if (c >= cols_) throw std::invalid_argument("RIS column index out of range");
    return (static_cast<double>(c) - 0.5 * static_cast<double>(cols_ - 1)) * pitch_m();
}

std::size_t RisPanel::index(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw std::invalid_argument("RIS element index out of range");
    return r * cols_ + c;
}

double RisPanel::phase(std::size_t r, std::size_t c) const { return phases_[index(r, c)]; }
double RisPanel::amplitude(std::size_t r, std::size_t c) const { return amplitudes_[index(r, c)]; }

void RisPanel::set_phase(std::size_t r, std::size_t c, double phase_rad) {
    if (!std::isfinite(phase_rad)) throw std::invalid_argument("RIS phase must be finite");
    double wrapped = std::fmod(phase_rad, kTwoPi);
    if (wrapped < 0.0) wrapped += kTwoPi;
    if (wrapped >= kTwoPi) wrapped = 0.0;
    phases_[index(r, c)] = wrapped;
}

void RisPanel::set_amplitude(std::size_t r, std::size_t c, double beta) {
    if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("RIS amplitude must lie in [0, 1]");
    amplitudes_[index(r, c)] = beta;
}

FocusConfig FocusConfig::make(double focal_z_m, double obs_z_m, std::size_t n_elements, double aperture_d_m,
                              double wavelength_m) {
    require_positive(focal_z_m, "focal depth");
    require_positive(obs_z_m, "observation depth");
    if (n_elements == 0) throw std::invalid_argument("element count must be positive");
    FocusConfig f;
    f.focal_z_m = focal_z_m;
    f.obs_z_m = obs_z_m;
    f.d_fa_m = static_cast<double>(n_elements) * fraunhofer_distance(aperture_d_m, wavelength_m);
    const double dz = std::abs(focal_z_m - obs_z_m);
    f.f_deviation = dz == 0.0 ? std::numeric_limits<double>::infinity() : focal_z_m / dz;
    return f;
}

double fraunhofer_distance(double aperture_d_m, double wavelength_m) {
    require_positive(wavelength_m, "wavelength");
    if (!(aperture_d_m >= 0.0)) throw std::invalid_argument("aperture must be non-negative");
    return 2.0 * aperture_d_m * aperture_d_m / wavelength_m;
}

FieldRegion classify_region(double distance_m, double aperture_d_m, double wavelength_m) {
    if (!(distance_m >= 0.0)) throw std::invalid_argument("distance must be non-negative");
    if (distance_m >= fraunhofer_distance(aperture_d_m, wavelength_m)) return FieldRegion::FarField;
    if (distance_m >= 1.2 * aperture_d_m) return FieldRegion::RadiativeNearField;
    return FieldRegion::ReactiveNearField;
}

cplx incident_field(double x, double /*y*/, const SourceGeometry &src, double wavelength_m) {
    if (!(src.rho_m > 0.0)) throw std::domain_error("incident_field: rho must be positive");
    require_positive(wavelength_m, "wavelength");
    const double magnitude = src.e_incident / (2.0 * std::sqrt(kPi * src.rho_m));
    const double phase = -kTwoPi * (src.rho_m + std::sin(src.theta_i_rad) * x) / wavelength_m;
    return std::polar(magnitude, phase);
}

cplx reflected_field_at_ue(double x, double y, double z, double e0, double /*wavelength_m*/) {
    if (!(z > 0.0)) throw std::domain_error("reflected_field_at_ue: z must be positive");
    const double r2 = x * x + y * y + z * z;
    const double r = std::sqrt(r2);
    const double magnitude = 0.5 * e0 * std::sqrt(z * (x * x + z * z) / (kPi * r2 * r2 * r));
    return std::polar(magnitude, -0.5 * kPi * r);
}

double focusing_gain_closed(const FocusConfig &focus) {
    if (focus.at_focus())
        throw SingularFocus("focusing_gain_closed: observation at the focal depth, use focusing_gain_integral");
    if (!(focus.f_deviation > 0.0)) throw std::invalid_argument("focal deviation must be positive");
    require_positive(focus.d_fa_m, "array Fraunhofer distance");
    const double a = focus.d_fa_m / (8.0 * focus.f_deviation);
    const auto [c, s] = fresnel_integrals(a);
    const double energy = c * c + s * s;
    return energy * energy / (a * a);
}

namespace {

QuadResult<cplx> defocus_integral(const FocusConfig &focus, const RisPanel &panel, double wavelength_m,
                                  const QuadOptions &opt) {
    require_positive(wavelength_m, "wavelength");
    const double half = panel.element_aperture_side_m();
    if (focus.at_focus()) {
        const double side = 2.0 * half;
        return {cplx(side * side, 0.0), 0.0, 0};
    }
    const double k = kPi / (wavelength_m * focus.f_deviation);
    return integrate_2d([k](double x, double y) { return std::polar(1.0, -k * (x * x + y * y)); }, -half, half,
                        -half, half, opt);
}

} // namespace

GainEstimate focusing_gain_integral(const FocusConfig &focus, const RisPanel &panel, double wavelength_m,
                                    const QuadOptions &opt) {
    const auto r = defocus_integral(focus, panel, wavelength_m, opt);
    const double n = static_cast<double>(panel.n_elements());
    const double d = panel.aperture_d_m();
    const double scale = std::pow(2.0 / (d * d * n), 2);
    const double mag = std::abs(r.value);
    return {scale * mag * mag, scale * (2.0 * mag * r.abs_error + r.abs_error * r.abs_error)};
}

double focusing_efficiency(const FocusConfig &focus, const RisPanel &panel, double wavelength_m,
                           const QuadOptions &opt) {
    const auto r = defocus_integral(focus, panel, wavelength_m, opt);
    const double side = 2.0 * panel.element_aperture_side_m();
    const double area = side * side;
    return std::min(1.0, std::norm(r.value) / (area * area));
}

cplx compound_channel_element(const RisPanel &panel, std::size_t r, std::size_t c, double phase_rad,
                              const SourceGeometry &src, const ObservationPoint &ue, double wavelength_m,
                              const ElementChannelOptions &opt) {
    if (r >= panel.rows() || c >= panel.cols())
        throw std::invalid_argument("compound_channel_element: element index out of range");
    if (!(ue.z_m > 0.0)) throw std::domain_error("compound_channel_element: UE depth must be positive");
    if (!(src.rho_m > 0.0)) throw std::domain_error("compound_channel_element: rho must be positive");
    require_positive(wavelength_m, "wavelength");

    const double k = kTwoPi / wavelength_m;
    const double sin_i = std::sin(src.theta_i_rad);
    const double quad = std::isfinite(opt.f_deviation) ? 1.0 / (2.0 * opt.f_deviation) : 0.0;
    const double incident_mag = 1.0 / (2.0 * std::sqrt(kPi * src.rho_m));

    // E_t / E_i * E(x - x_ue, y) * phase correction, with the exponents merged.
    auto integrand = [&](double x, double y) {
        const double dx = x - ue.x_m;
        const double r2 = dx * dx + y * y + ue.z_m * ue.z_m;
        const double dist = std::sqrt(r2);
        const double mag = incident_mag * 0.5 * src.e0 *
                           std::sqrt(ue.z_m * (dx * dx + ue.z_m * ue.z_m) / (kPi * r2 * r2 * dist));
        const double phase = -k * (src.rho_m + sin_i * x) - 0.5 * kPi * dist +
                             k * (quad * (x * x + y * y) + src.rho_m * sin_i * x);
        return std::polar(mag, phase);
    };

    const double half = 0.5 * panel.element_aperture_side_m();
    const double cx = panel.center_x(r);
    const double cy = panel.center_y(c);
    const auto res = integrate_2d(integrand, cx - half, cx + half, cy - half, cy + half, opt.quad);

    double scale = std::numbers::sqrt2 / panel.aperture_d_m();
    if (opt.apply_amplitude) scale *= panel.amplitude(r, c);
    return scale * std::polar(1.0, -phase_rad) * res.value;
}

void configure_focus(RisPanel &panel, const SourceGeometry &src, const ObservationPoint &focal, double wavelength_m,
                     const QuadOptions &opt) {
    ElementChannelOptions eopt;
    eopt.quad = opt;
    for (std::size_t r = 0; r < panel.rows(); ++r)
        for (std::size_t c = 0; c < panel.cols(); ++c)
            panel.set_phase(r, c, std::arg(compound_channel_element(panel, r, c, 0.0, src, focal, wavelength_m, eopt)));
}

Heatmap beam_heatmap(const RisPanel &panel, const SourceGeometry &src, const HeatmapGrid &grid,
                     const ObservationPoint &focal, double wavelength_m, const QuadOptions &opt) {
    if (grid.xs.empty() || grid.zs.empty()) throw std::invalid_argument("beam_heatmap: empty grid");
    for (double z : grid.zs)
        if (!(z > 0.0)) throw std::invalid_argument("beam_heatmap: grid depths must be positive");
    require_positive(focal.z_m, "focal depth");

    const std::size_t nx = grid.xs.size();
    const std::size_t nz = grid.zs.size();
    Heatmap map;
    map.grid = grid;
    map.power.assign(nx * nz, 0.0);

    ElementChannelOptions eopt;
    eopt.quad = opt;
    for (std::size_t iz = 0; iz < nz; ++iz) {
        const double z = grid.zs[iz];
        const double dz = std::abs(focal.z_m - z);
        eopt.f_deviation = dz == 0.0 ? std::numeric_limits<double>::infinity() : focal.z_m / dz;
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const ObservationPoint ue{grid.xs[ix], z};
            cplx sum{};
            for (std::size_t r = 0; r < panel.rows(); ++r)
                for (std::size_t c = 0; c < panel.cols(); ++c)
                    sum += compound_channel_element(panel, r, c, panel.phase(r, c), src, ue, wavelength_m, eopt);
            map.power[iz * nx + ix] = std::norm(sum);
        }
    }

    const auto peak_it = std::max_element(map.power.begin(), map.power.end());
    const double peak = *peak_it;
    map.power_db.resize(map.power.size());
    std::transform(map.power.begin(), map.power.end(), map.power_db.begin(),
                   [peak](double p) { return relative_db(p, peak); });

    const auto peak_idx = static_cast<std::size_t>(peak_it - map.power.begin());
    const std::size_t pz = peak_idx / nx;
    const std::size_t px = peak_idx % nx;
    map.stats.peak_x_m = grid.xs[px];
    map.stats.peak_z_m = grid.zs[pz];

    // Width along x on the focal row.
    std::size_t fz = 0;
    for (std::size_t iz = 1; iz < nz; ++iz)
        if (std::abs(grid.zs[iz] - focal.z_m) < std::abs(grid.zs[fz] - focal.z_m)) fz = iz;
    std::vector<double> row(map.power_db.begin() + static_cast<std::ptrdiff_t>(fz * nx),
                            map.power_db.begin() + static_cast<std::ptrdiff_t>((fz + 1) * nx));
    const auto row_peak = static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
    bool trunc_l = false, trunc_r = false;
    const double left = crossing(grid.xs, row, row_peak, -1, trunc_l);
    const double right = crossing(grid.xs, row, row_peak, +1, trunc_r);
    map.stats.width_3db_x_m = right - left;
    map.stats.width_truncated = trunc_l || trunc_r;

    // Depth along z through the peak column.
    std::vector<double> column(nz);
    for (std::size_t iz = 0; iz < nz; ++iz) column[iz] = map.power_db[iz * nx + px];
    bool trunc_n = false, trunc_f = false;
    const double near = crossing(grid.zs, column, pz, -1, trunc_n);
    const double far = crossing(grid.zs, column, pz, +1, trunc_f);
    map.stats.depth_3db_z_m = far - near;
    map.stats.depth_truncated = trunc_n || trunc_f;
    return map;
}

} // namespace risho
