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

#include "risho/rng.hpp"

#include <cstddef>

namespace risho {

/// Gaussian gain of one hop: G ~ N(mean, variance).
struct HopGainStats {
    double mean = 0.0;
    double variance = 0.0;

    void validate() const;
};

/// Central-limit description of G = sum_i G_br,i * G_ru,i.
///
/// var_total is the variance of the whole sum, n [(s1 + m1^2)(s2 + m2^2) - (m1 m2)^2];
/// the densities use it once (no further factor of n).
struct CascadeStats {
    std::size_t n_elements = 0;
    double mean_g = 0.0;
    double var_total = 0.0;
    HopGainStats hop1;
    HopGainStats hop2;

    bool degenerate() const noexcept { return var_total == 0.0; }
    double stddev() const;
};

struct SnrModel {
    CascadeStats cascade;
    double avg_snr = 1.0;  // linear P_t / sigma_n^2

    static SnrModel make(const CascadeStats &cascade, double avg_snr);
    void validate() const;
};

CascadeStats cascade_moments(const HopGainStats &hop1, const HopGainStats &hop2, std::size_t n);

/// Gaussian density of G. Throws DegenerateDistribution when var_total == 0.
double gain_pdf(double g, const CascadeStats &stats);
double gain_cdf(double g, const CascadeStats &stats);

/// Density of gamma = avg_snr * G^2 (a scaled non-central chi-square with one
/// degree of freedom). Infinite at gamma = 0; throws for gamma < 0.
double snr_pdf(double gamma, const SnrModel &model);
double snr_cdf(double gamma, const SnrModel &model);

/// One exact draw of the cascade sum over n independent element pairs.
double sample_cascade_gain(RngStream &rng, const CascadeStats &stats);

/// avg_snr * (sum_i G_br,i G_ru,i)^2 from n independent element pairs.
double sample_snr_exact(RngStream &rng, const SnrModel &model);

} // namespace risho
