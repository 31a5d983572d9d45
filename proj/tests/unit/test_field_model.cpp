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


#include "risho/errors.hpp"
#include "risho/field_model.hpp"
#include "risho/fresnel.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace risho;

namespace {

const double kLambda = kSpeedOfLight / 28e9;

// midpoint-rule oracle for |int int exp(-j pi (x^2 + y^2) / (lambda F))|^2 over the element square
double riemann_gain(double f_dev, const RisPanel &panel, double lambda, int m) {
    const double half = panel.element_aperture_side_m();
    const double h = 2.0 * half / m;
    const double k = std::numbers::pi / (lambda * f_dev);
    cplx s1{};
    for (int i = 0; i < m; ++i) {
        const double x = -half + (i + 0.5) * h;
        s1 += std::polar(1.0, -k * x * x) * h;
    }
    const cplx total = s1 * s1;  // separable
    const double n = static_cast<double>(panel.n_elements());
    const double d = panel.aperture_d_m();
    return std::pow(2.0 / (d * d * n), 2) * std::norm(total);
}

} // namespace

TEST(Carrier, FrequencyWavelengthRoundTrip) {
    const auto c = CarrierConfig::from_frequency(28e9);
    EXPECT_NEAR(c.wavelength_m, 0.0107068735, 1e-15);
    const auto w = CarrierConfig::from_wavelength(c.wavelength_m);
    EXPECT_NEAR(w.carrier_freq_hz, 28e9, 1e-3);
    EXPECT_THROW(CarrierConfig::from_frequency(0.0), std::invalid_argument);
    EXPECT_THROW(CarrierConfig::from_wavelength(-1.0), std::invalid_argument);
}

TEST(RisPanel, SquareGeometry) {
    RisPanel p(64, 0.1);
    EXPECT_EQ(p.rows(), 8u);
    EXPECT_EQ(p.cols(), 8u);
    EXPECT_NEAR(p.pitch_m(), 0.1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(p.array_diameter_m(), 0.8, 1e-15);
    EXPECT_NEAR(p.element_aperture_side_m(), 0.1 / std::sqrt(8.0), 1e-15);
    EXPECT_NEAR(p.center_x(0), -p.center_x(7), 1e-15);
    EXPECT_NEAR(p.center_y(3) + p.center_y(4), 0.0, 1e-15);
    EXPECT_NEAR(p.center_y(4) - p.center_y(3), p.pitch_m(), 1e-15);
}

TEST(RisPanel, NonSquareCountsUseRectangles) {
    RisPanel a(32, 0.1);
    EXPECT_EQ(a.rows() * a.cols(), 32u);
    EXPECT_EQ(a.rows(), 4u);
    RisPanel b(128, 0.1);
    EXPECT_EQ(b.rows(), 8u);
    EXPECT_EQ(b.cols(), 16u);
    RisPanel c(7, 0.1);
    EXPECT_EQ(c.rows(), 1u);
    EXPECT_EQ(c.cols(), 7u);
}

TEST(RisPanel, RejectsBadInput) {
    EXPECT_THROW(RisPanel(0, 0.1), std::invalid_argument);
    EXPECT_THROW(RisPanel(16, 0.0), std::invalid_argument);
    RisPanel p(4, 0.1);
    EXPECT_THROW(p.set_amplitude(0, 0, 1.5), std::invalid_argument);
    EXPECT_THROW(p.phase(2, 0), std::invalid_argument);
}

TEST(RisPanel, PhaseWrapsIntoOneTurn) {
    RisPanel p(4, 0.1);
    p.set_phase(1, 1, -std::numbers::pi / 2);
    EXPECT_NEAR(p.phase(1, 1), 1.5 * std::numbers::pi, 1e-15);
    p.set_phase(0, 1, 5 * std::numbers::pi);
    EXPECT_NEAR(p.phase(0, 1), std::numbers::pi, 1e-12);
}

TEST(FieldRegion, BoundariesAreInclusive) {
    const double d = 0.5;
    const double df = fraunhofer_distance(d, kLambda);
    EXPECT_NEAR(df, 2 * d * d / kLambda, 1e-12);
    EXPECT_EQ(classify_region(df, d, kLambda), FieldRegion::FarField);
    EXPECT_EQ(classify_region(std::nextafter(df, 0.0), d, kLambda), FieldRegion::RadiativeNearField);
    EXPECT_EQ(classify_region(1.2 * d, d, kLambda), FieldRegion::RadiativeNearField);
    EXPECT_EQ(classify_region(std::nextafter(1.2 * d, 0.0), d, kLambda), FieldRegion::ReactiveNearField);
    EXPECT_THROW(classify_region(-1.0, d, kLambda), std::invalid_argument);
}

TEST(Fields, IncidentFieldMagnitudeAndPhase) {
    SourceGeometry src{4.0, 0.3};
    const auto e = incident_field(0.25, 0.7, src, kLambda);
    EXPECT_NEAR(std::abs(e), 1.0 / (2.0 * std::sqrt(std::numbers::pi * 4.0)), 1e-15);
    // y does not enter
    EXPECT_EQ(e, incident_field(0.25, -3.0, src, kLambda));
    const double want = -2 * std::numbers::pi * (4.0 + std::sin(0.3) * 0.25) / kLambda;
    EXPECT_NEAR(std::arg(e * std::polar(1.0, -want)), 0.0, 1e-9);
    EXPECT_THROW(incident_field(0, 0, SourceGeometry{0.0, 0.0}, kLambda), std::domain_error);
}

TEST(Fields, ReflectedFieldOnAxis) {
    const double z = 3.0;
    const auto e = reflected_field_at_ue(0.0, 0.0, z, 2.0, kLambda);
    // (E0/2) sqrt(z * z^2 / (pi z^5)) = (E0/2) / (sqrt(pi) z)
    EXPECT_NEAR(std::abs(e), 1.0 / (std::sqrt(std::numbers::pi) * z), 1e-15);
    EXPECT_NEAR(std::remainder(std::arg(e) + std::numbers::pi / 2 * z, 2 * std::numbers::pi), 0.0, 1e-12);
    EXPECT_THROW(reflected_field_at_ue(0, 0, 0.0, 1.0, kLambda), std::domain_error);
}

TEST(Focusing, ClosedFormMatchesFresnelExpression) {
    const auto f = FocusConfig::make(2.0, 3.0, 64, 0.073, kLambda);
    EXPECT_NEAR(f.f_deviation, 2.0, 1e-15);
    EXPECT_NEAR(f.d_fa_m, 64 * 2 * 0.073 * 0.073 / kLambda, 1e-9);
    const double a = f.d_fa_m / (8 * f.f_deviation);
    const auto cs = fresnel_integrals(a);
    const double want = std::pow(8 * f.f_deviation / f.d_fa_m, 2) * std::pow(cs.c * cs.c + cs.s * cs.s, 2);
    EXPECT_NEAR(focusing_gain_closed(f), want, 1e-15 * want);
}

TEST(Focusing, ClosedFormSingularAtFocus) {
    const auto f = FocusConfig::make(2.0, 2.0, 64, 0.073, kLambda);
    EXPECT_TRUE(f.at_focus());
    EXPECT_THROW(focusing_gain_closed(f), SingularFocus);
}

TEST(Focusing, IntegralMatchesRiemannOracle) {
    RisPanel panel(64, 0.073);
    for (double obs : {0.5, 1.0, 1.9, 2.5, 8.0}) {
        const auto f = FocusConfig::make(2.0, obs, 64, 0.073, kLambda);
        const auto got = focusing_gain_integral(f, panel, kLambda);
        const double want = riemann_gain(f.f_deviation, panel, kLambda, 4000);
        EXPECT_NEAR(got.gain, want, 1e-6 * want) << "obs=" << obs;
        EXPECT_LE(got.abs_error, 1e-6 * want);
    }
}

TEST(Focusing, IntegralAtFocusIsAreaSquared) {
    RisPanel panel(64, 0.073);
    const auto f = FocusConfig::make(2.0, 2.0, 64, 0.073, kLambda);
    const double area = 32.0 * 0.073 * 0.073 / 64.0;
    const double want = std::pow(2.0 / (0.073 * 0.073 * 64.0), 2) * area * area;
    EXPECT_NEAR(focusing_gain_integral(f, panel, kLambda).gain, want, 1e-14 * want);
    EXPECT_EQ(focusing_efficiency(f, panel, kLambda), 1.0);
}

TEST(Focusing, EfficiencyFallsAwayFromFocus) {
    RisPanel panel(16, 0.3);
    double prev = 1.0;
    // main lobe: monotone
    for (double obs : {2.0, 1.9, 1.8, 1.7, 1.6, 1.5, 1.4, 1.3}) {
        const double e = focusing_efficiency(FocusConfig::make(2.0, obs, 16, 0.3, kLambda), panel, kLambda);
        EXPECT_LE(e, prev + 1e-12);
        prev = e;
    }
    EXPECT_LT(prev, 0.05);
    // side lobes stay far below the peak
    for (double obs : {1.0, 0.8, 0.5, 0.2}) {
        const double e = focusing_efficiency(FocusConfig::make(2.0, obs, 16, 0.3, kLambda), panel, kLambda);
        EXPECT_GE(e, 0.0);
        EXPECT_LT(e, 0.05);
    }
}

TEST(ElementChannel, ConjugatePhaseCancelsArgument) {
    RisPanel panel(16, 0.073);
    SourceGeometry src{10.0, 0.4};
    const ObservationPoint focal{0.1, 2.0};
    configure_focus(panel, src, focal, kLambda);
    for (std::size_t r = 0; r < panel.rows(); ++r)
        for (std::size_t c = 0; c < panel.cols(); ++c) {
            const auto h = compound_channel_element(panel, r, c, panel.phase(r, c), src, focal, kLambda);
            EXPECT_NEAR(std::arg(h), 0.0, 1e-9);
        }
}

TEST(ElementChannel, AmplitudeOnlyWhenRequested) {
    RisPanel panel(4, 0.073);
    panel.set_amplitude(0, 1, 0.25);
    SourceGeometry src{5.0, 0.0};
    const ObservationPoint ue{0.0, 1.0};
    ElementChannelOptions with;
    with.apply_amplitude = true;
    const auto plain = compound_channel_element(panel, 0, 1, 0.0, src, ue, kLambda);
    const auto scaled = compound_channel_element(panel, 0, 1, 0.0, src, ue, kLambda, with);
    EXPECT_NEAR(std::abs(scaled - 0.25 * plain), 0.0, 1e-15);
    EXPECT_THROW(compound_channel_element(panel, 2, 0, 0.0, src, ue, kLambda), std::invalid_argument);
}

TEST(ElementChannel, MirrorElementsEqualAtNormalIncidence) {
    // normal incidence, UE on the axis: elements (r, c) and (r, side-1-c) see the same geometry
    RisPanel panel(16, 0.073);
    SourceGeometry src{6.0, 0.0};
    const ObservationPoint ue{0.0, 1.5};
    const auto a = compound_channel_element(panel, 1, 0, 0.0, src, ue, kLambda);
    const auto b = compound_channel_element(panel, 1, 3, 0.0, src, ue, kLambda);
    const auto c = compound_channel_element(panel, 2, 0, 0.0, src, ue, kLambda);
    EXPECT_NEAR(std::abs(a - b), 0.0, 1e-12 * std::abs(a));
    EXPECT_NEAR(std::abs(a - c), 0.0, 1e-12 * std::abs(a));
}

TEST(Heatmap, FocusedPanelPeaksAtFocusAndNarrowsWithN) {
    SourceGeometry src{10.0, std::numbers::pi / 6};
    const ObservationPoint focal{0.0, 2.0};
    HeatmapGrid grid;
    for (int i = 0; i <= 16; ++i) grid.xs.push_back(-4.0 + 0.5 * i);
    for (int i = 0; i <= 12; ++i) grid.zs.push_back(0.5 + 0.25 * i);
    double prev_width = INFINITY, prev_depth = INFINITY;
    for (std::size_t n : {36, 64, 144}) {
        RisPanel panel(n, 0.073);
        configure_focus(panel, src, focal, kLambda);
        const auto map = beam_heatmap(panel, src, grid, focal, kLambda);
        ASSERT_EQ(map.power.size(), grid.xs.size() * grid.zs.size());
        EXPECT_NEAR(*std::max_element(map.power_db.begin(), map.power_db.end()), 0.0, 1e-12);
        EXPECT_FALSE(map.stats.width_truncated);
        EXPECT_LE(map.stats.width_3db_x_m, prev_width) << "N=" << n;
        EXPECT_LE(map.stats.depth_3db_z_m, prev_depth) << "N=" << n;
        prev_width = map.stats.width_3db_x_m;
        prev_depth = map.stats.depth_3db_z_m;
        if (n >= 64) {
            EXPECT_EQ(map.stats.peak_z_m, 2.0);
            EXPECT_EQ(map.stats.peak_x_m, 0.0);
        }
    }
}

TEST(Heatmap, RejectsEmptyGrid) {
    RisPanel panel(4, 0.073);
    EXPECT_THROW(beam_heatmap(panel, SourceGeometry{1.0, 0.0}, HeatmapGrid{}, {0.0, 1.0}, kLambda),
                 std::invalid_argument);
}
