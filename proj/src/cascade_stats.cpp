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

#include "risho/cascade_stats.hpp"

#include "risho/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace risho {

namespace {

constexpr double kInvSqrt2Pi = 0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2;

void require_gaussian(const CascadeStats &stats) {
    if (stats.degenerate()) throw DegenerateDistribution("cascade has zero variance; use the point-mass branch");
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

} // namespace

void HopGainStats::validate() const {
    if (!std::isfinite(mean)) throw std::invalid_argument("hop mean must be finite");
    if (!(variance >= 0.0) || !std::isfinite(variance)) throw std::invalid_argument("hop variance must be >= 0");
}

double CascadeStats::stddev() const { return std::sqrt(var_total); }

SnrModel SnrModel::make(const CascadeStats &cascade, double avg_snr) {
    SnrModel m{cascade, avg_snr};
    m.validate();
    return m;
}

void SnrModel::validate() const {
    if (!(avg_snr > 0.0) || !std::isfinite(avg_snr)) throw std::invalid_argument("average SNR must be positive");
    if (cascade.n_elements == 0) throw std::invalid_argument("cascade must have at least one element");
    if (!(cascade.var_total >= 0.0)) throw std::invalid_argument("cascade variance must be >= 0");
}

CascadeStats cascade_moments(const HopGainStats &hop1, const HopGainStats &hop2, std::size_t n) {
    if (n == 0) throw std::invalid_argument("cascade_moments: n must be >= 1");
    hop1.validate();
    hop2.validate();
    const double nn = static_cast<double>(n);
    const double m12 = hop1.mean * hop2.mean;
    const double second = (hop1.variance + hop1.mean * hop1.mean) * (hop2.variance + hop2.mean * hop2.mean);
    CascadeStats s;
    s.n_elements = n;
    s.hop1 = hop1;
    s.hop2 = hop2;
    s.mean_g = nn * m12;
    // E[X^2]E[Y^2] >= (E[X]E[Y])^2; clamp round-off below zero.
    s.var_total = std::max(0.0, nn * (second - m12 * m12));
    return s;
}

double gain_pdf(double g, const CascadeStats &stats) {
    require_gaussian(stats);
    const double sd = stats.stddev();
    const double u = (g - stats.mean_g) / sd;
    return kInvSqrt2Pi / sd * std::exp(-0.5 * u * u);
}

double gain_cdf(double g, const CascadeStats &stats) {
    require_gaussian(stats);
    return normal_cdf((g - stats.mean_g) / stats.stddev());
}

double snr_pdf(double gamma, const SnrModel &model) {
    if (!(gamma >= 0.0)) throw std::invalid_argument("snr_pdf: gamma must be >= 0");
    require_gaussian(model.cascade);
    if (gamma == 0.0) return std::numeric_limits<double>::infinity();
    const double v = model.cascade.var_total;
    const double mu = model.cascade.mean_g;
    const double t = std::sqrt(gamma / model.avg_snr);
    const double lobes = std::exp(-(t - mu) * (t - mu) / (2.0 * v)) + std::exp(-(t + mu) * (t + mu) / (2.0 * v));
    return lobes / (2.0 * std::sqrt(2.0 * std::numbers::pi * v * gamma * model.avg_snr));
}

double snr_cdf(double gamma, const SnrModel &model) {
    if (!(gamma >= 0.0)) throw std::invalid_argument("snr_cdf: gamma must be >= 0");
    const double t = std::sqrt(gamma / model.avg_snr);
    if (model.cascade.degenerate()) return std::abs(model.cascade.mean_g) <= t ? 1.0 : 0.0;
    const double sd = model.cascade.stddev();
    const double mu = model.cascade.mean_g;
    return std::max(0.0, normal_cdf((t - mu) / sd) - normal_cdf((-t - mu) / sd));
}

double sample_cascade_gain(RngStream &rng, const CascadeStats &stats) {
    const double s1 = std::sqrt(stats.hop1.variance);
    const double s2 = std::sqrt(stats.hop2.variance);
    double sum = 0.0;
    for (std::size_t i = 0; i < stats.n_elements; ++i) {
        const double g_br = stats.hop1.mean + s1 * rng.normal();
        const double g_ru = stats.hop2.mean + s2 * rng.normal();
        sum += g_br * g_ru;
    }
    return sum;
}

double sample_snr_exact(RngStream &rng, const SnrModel &model) {
    const double g = sample_cascade_gain(rng, model.cascade);
    return model.avg_snr * g * g;
}

} // namespace risho
