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
#include "risho/quadrature.hpp"

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace risho {

enum class MetricMethod { Quadrature, MonteCarlo };

std::string_view to_string(MetricMethod method);

struct MetricResult {
    double value = 0.0;
    double abs_error_est = 0.0;  // quadrature error + truncated tail, or MC standard error
    MetricMethod method = MetricMethod::Quadrature;
    std::size_t n_samples = 0;
    double tail_mass_bound = 0.0;  // probability mass outside the integration window
};

struct OutageThreshold {
    double gamma_th = 0.0;  // linear

    void validate() const;
};

/// Width of the integration window, in standard deviations of G, on each side of |mean_g|.
inline constexpr double kTruncationSigmas = 12.0;

/// The per-realization error kernel 0.5 erfc(sqrt(gamma) / 2).
double ber_kernel(double gamma);

/// Average of ber_kernel over the SNR law, integrated in t = sqrt(gamma).
MetricResult average_ber(const SnrModel &model, const QuadOptions &opt = {});

/// P(gamma <= gamma_th) by integrating the folded Gaussian of t = |G| = sqrt(gamma / avg_snr).
MetricResult outage_probability(const SnrModel &model, const OutageThreshold &th, const QuadOptions &opt = {});

/// Average log2(1 + gamma) in bits/s/Hz.
MetricResult ergodic_capacity(const SnrModel &model, const QuadOptions &opt = {});

struct McMetrics {
    MetricResult ber;
    MetricResult outage;
    MetricResult capacity;
};

struct McOptions {
    std::size_t chunk_size = 1u << 15;  // samples per independent stream
    unsigned workers = 1;
};

/// Monte Carlo counterparts over exact per-element draws. Sample k belongs to
/// chunk k / chunk_size, which owns stream derive_seed(seed, chunk), so the
/// estimate depends on (seed, n_samples, chunk_size) but not on `workers`.
McMetrics mc_metrics(std::uint64_t seed, const SnrModel &model, std::size_t n_samples, const OutageThreshold &th,
                     const McOptions &opt = {});

} // namespace risho
