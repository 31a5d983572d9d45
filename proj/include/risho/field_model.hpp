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

#include "risho/fresnel.hpp"
#include "risho/quadrature.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string_view>
#include <vector>

namespace risho {

inline constexpr double kSpeedOfLight = 299792458.0;

using cplx = std::complex<double>;

struct CarrierConfig {
    double wavelength_m = 0.0;
    double carrier_freq_hz = 0.0;

    static CarrierConfig from_frequency(double hz);
    static CarrierConfig from_wavelength(double meters);

    /// wavelength > 0 and wavelength * frequency == c within 1e-6 relative.
    void validate() const;
};

enum class FieldRegion { ReactiveNearField, RadiativeNearField, FarField };

std::string_view to_string(FieldRegion region);

/// Square RIS with sqrt(N) x sqrt(N) elements.
///
/// `aperture_d_m` is the D used throughout the field model: the tile diameter
/// sqrt(Ly^2 + Lz^2) with Ly = Lz = D / sqrt(2). Elements sit on a pitch of
/// D / sqrt(2), so the whole array has diameter sqrt(N) * D and Fraunhofer
/// distance N * 2 D^2 / lambda. Each element is integrated over a square of
/// side D / sqrt(N / 8). Elements are laid out on rows x cols with rows the
/// largest divisor of N not above sqrt(N).
class RisPanel {
public:
    RisPanel(std::size_t n_elements, double aperture_d_m);

    std::size_t n_elements() const noexcept { return n_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double aperture_d_m() const noexcept { return aperture_; }
    double side_ly_m() const noexcept;
    double side_lz_m() const noexcept;
    double pitch_m() const noexcept;
    double element_aperture_side_m() const noexcept;
    double array_diameter_m() const noexcept;

    /// Center (x_r, y_c) of element (r, c), zero-based indices.
    double center_x(std::size_t r) const;
    double center_y(std::size_t c) const;

    double phase(std::size_t r, std::size_t c) const;
    double amplitude(std::size_t r, std::size_t c) const;
    /// Stored wrapped into [0, 2 pi).
    void set_phase(std::size_t r, std::size_t c, double phase_rad);
    void set_amplitude(std::size_t r, std::size_t c, double beta);

    const std::vector<double> &phase_shifts() const noexcept { return phases_; }
    const std::vector<double> &amplitudes() const noexcept { return amplitudes_; }

private:
    std::size_t index(std::size_t r, std::size_t c) const;

    std::size_t n_;
    std::size_t rows_;
    std::size_t cols_;
    double aperture_;
    std::vector<double> phases_;
    std::vector<double> amplitudes_;
};

/// Serving BS at (-rho sin(theta_i), 0, rho cos(theta_i)) relative to the RIS center.
struct SourceGeometry {
    double rho_m = 0.0;
    double theta_i_rad = 0.0;
    double e_incident = 1.0;
    double e0 = 1.0;
};

struct FocusConfig {
    double focal_z_m = 0.0;
    double obs_z_m = 0.0;
    double f_deviation = std::numeric_limits<double>::infinity();
    double d_fa_m = 0.0;

    /// F = F_z / |F_z - z| (infinite at the focus) and d_FA = N * 2 D^2 / lambda.
    static FocusConfig make(double focal_z_m, double obs_z_m, std::size_t n_elements,
                            double aperture_d_m, double wavelength_m);
    bool at_focus() const noexcept { return !std::isfinite(f_deviation); }
};

double fraunhofer_distance(double aperture_d_m, double wavelength_m);

/// FarField from 2D^2/lambda (inclusive), RadiativeNearField from 1.2 D (inclusive).
FieldRegion classify_region(double distance_m, double aperture_d_m, double wavelength_m);

/// Plane-wave field across the RIS surface; independent of y.
cplx incident_field(double x, double y, const SourceGeometry &src, double wavelength_m);

/// Field at a UE on the axis at depth z due to the surface point (x, y).
/// The phase term is exp(-j pi/2 * r) with r the point-to-UE distance; the
/// wavelength does not enter.
cplx reflected_field_at_ue(double x, double y, double z, double e0, double wavelength_m);

/// (8F/d_FA)^2 {C^2(a) + S^2(a)}^2 with a = d_FA / (8F). Throws SingularFocus at the focus.
double focusing_gain_closed(const FocusConfig &focus);

struct GainEstimate {
    double gain = 0.0;
    double abs_error = 0.0;
};

/// (2/(D^2 N))^2 |int int exp(-j (2 pi / lambda) (x^2 + y^2) / (2F)) dx dy|^2 over
/// [-D/sqrt(N/8), D/sqrt(N/8)]^2, by nested adaptive quadrature. Defined at the focus.
GainEstimate focusing_gain_integral(const FocusConfig &focus, const RisPanel &panel, double wavelength_m,
                                    const QuadOptions &opt = {});

/// The same integral normalized by its value at the focus, so it lies in [0, 1].
double focusing_efficiency(const FocusConfig &focus, const RisPanel &panel, double wavelength_m,
                           const QuadOptions &opt = {});

/// UE position in the x-z plane of the RIS coordinate frame.
struct ObservationPoint {
    double x_m = 0.0;
    double z_m = 0.0;
};

struct ElementChannelOptions {
    /// Focal deviation used in the phase-correction term; infinite removes the quadratic part.
    double f_deviation = std::numeric_limits<double>::infinity();
    /// Multiply by the element's beta_n.
    bool apply_amplitude = false;
    QuadOptions quad{};
};

/// Compound serving-BS -> element (r, c) -> UE channel.
cplx compound_channel_element(const RisPanel &panel, std::size_t r, std::size_t c, double phase_rad,
                              const SourceGeometry &src, const ObservationPoint &ue, double wavelength_m,
                              const ElementChannelOptions &opt = {});

/// Sets every element phase to the argument of its unshifted channel at `focal`,
/// so all contributions add in phase there.
void configure_focus(RisPanel &panel, const SourceGeometry &src, const ObservationPoint &focal,
                     double wavelength_m, const QuadOptions &opt = {});

struct HeatmapGrid {
    std::vector<double> xs;
    std::vector<double> zs;
};

struct BeamStats {
    double peak_x_m = 0.0;
    double peak_z_m = 0.0;
    double width_3db_x_m = 0.0;
    double depth_3db_z_m = 0.0;
    bool width_truncated = false;  // the -3 dB point lies outside the grid
    bool depth_truncated = false;
};

struct Heatmap {
    HeatmapGrid grid;
    std::vector<double> power;     // |sum h|^2, row-major [iz * nx + ix]
    std::vector<double> power_db;  // normalized to the peak (0 dB)
    BeamStats stats;

    double at(std::size_t ix, std::size_t iz) const { return power_db[iz * grid.xs.size() + ix]; }
};

/// Coherent sum of every element channel over the grid. The focal point sets the
/// focal depth of the phase-correction term; call configure_focus first to
/// steer the panel there. The 3 dB width is measured on the grid row closest to
/// the focal depth, the depth on the column through the global peak.
Heatmap beam_heatmap(const RisPanel &panel, const SourceGeometry &src, const HeatmapGrid &grid,
                     const ObservationPoint &focal, double wavelength_m, const QuadOptions &opt = {});

} // namespace risho
