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

#include "risho/link_metrics.hpp"

#include "risho/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace risho {

namespace {

constexpr double kInvSqrt2Pi = 0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2;

// Integration window for u = |G| and the probability mass it leaves out.
struct Window {
    double lo;
    double hi;
    double sd;
    double tail_mass;
    int pieces;
};

Window window_for(const CascadeStats &c) {
    const double sd = c.stddev();
    const double center = std::abs(c.mean_g);
    Window w;
    w.sd = sd;
    w.lo = std::max(0.0, center - kTruncationSigmas * sd);
    w.hi = center + kTruncationSigmas * sd;
    // Upper tail, lower tail and the mirrored lobe beyond the window.
    w.tail_mass = 3.0 * 0.5 * std::erfc(kTruncationSigmas / std::numbers::sqrt2);
    w.pieces = std::clamp(static_cast<int>(std::ceil((w.hi - w.lo) / sd)), 1, 64);
    return w;
}

// Density of u = |G| for G ~ N(mean_g, var_total), u >= 0.
double folded_density(double u, const CascadeStats &c, double sd) {
    const double a = (u - c.mean_g) / sd;
    const double b = (u + c.mean_g) / sd;
    return kInvSqrt2Pi / sd * (std::exp(-0.5 * a * a) + std::exp(-0.5 * b * b));
}

QuadOptions with_pieces(QuadOptions opt, int pieces) {
    opt.initial_intervals = std::max(opt.initial_intervals, pieces);
    return opt;
}

double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

struct McPartial {
    double ber_sum = 0.0, ber_sq = 0.0;
    double out_count = 0.0;
    double cap_sum = 0.0, cap_sq = 0.0;
};

MetricResult mc_result(double sum, double sq, std::size_t n) {
    MetricResult r;
    r.method = MetricMethod::MonteCarlo;
    r.n_samples = n;
    const double nn = static_cast<double>(n);
    r.value = sum / nn;
    if (n > 1) {
        const double var = std::max(0.0, (sq - nn * r.value * r.value) / (nn - 1.0));
        r.abs_error_est = std::sqrt(var / nn);
    }
    return r;
}

} // namespace

std::string_view to_string(MetricMethod method) {
    return method == MetricMethod::Quadrature ? "quadrature" : "monte_carlo";
}

void OutageThreshold::validate() const {
    if (!(gamma_th >= 0.0)) throw std::invalid_argument("outage threshold must be >= 0");
}

double ber_kernel(double gamma) { return 0.5 * std::erfc(0.5 * std::sqrt(gamma)); }

MetricResult average_ber(const SnrModel &model, const QuadOptions &opt) {
    model.validate();
    const auto &c = model.cascade;
    if (c.degenerate()) return {ber_kernel(model.avg_snr * c.mean_g * c.mean_g), 0.0};

    const Window w = window_for(c);
    const double root = std::sqrt(model.avg_snr);
    // t = sqrt(gamma) = root * u, f_t(t) = f_u(t / root) / root.
    auto integrand = [&](double t) { return 0.5 * std::erfc(0.5 * t) * folded_density(t / root, c, w.sd) / root; };
    const auto q = integrate(integrand, root * w.lo, root * w.hi, with_pieces(opt, w.pieces));
    MetricResult r;
    r.value = std::clamp(q.value, 0.0, 0.5);
    r.tail_mass_bound = w.tail_mass;
    r.abs_error_est = q.abs_error + 0.5 * w.tail_mass;
    return r;
}

MetricResult outage_probability(const SnrModel &model, const OutageThreshold &th, const QuadOptions &opt) {
    model.validate();
    th.validate();
    const auto &c = model.cascade;
    const double limit = std::sqrt(th.gamma_th / model.avg_snr);
    if (c.degenerate()) return {std::abs(c.mean_g) <= limit ? 1.0 : 0.0, 0.0};

    const Window w = window_for(c);
    MetricResult r;
    r.tail_mass_bound = w.tail_mass;
    r.abs_error_est = w.tail_mass;
    if (limit <= w.lo) return r;
    const double upper = std::min(limit, w.hi);
    const auto q = integrate([&](double u) { return folded_density(u, c, w.sd); }, w.lo, upper,
                             with_pieces(opt, std::max(1, static_cast<int>(w.pieces * (upper - w.lo) / (w.hi - w.lo)))));
    r.value = std::clamp(q.value, 0.0, 1.0);
    r.abs_error_est += q.abs_error;
    return r;
}

MetricResult ergodic_capacity(const SnrModel &model, const QuadOptions &opt) {
    model.validate();
    const auto &c = model.cascade;
    if (c.degenerate()) return {log2_1p(model.avg_snr * c.mean_g * c.mean_g), 0.0};

    const Window w = window_for(c);
    auto integrand = [&](double u) { return log2_1p(model.avg_snr * u * u) * folded_density(u, c, w.sd); };
    const auto q = integrate(integrand, w.lo, w.hi, with_pieces(opt, w.pieces));
    MetricResult r;
    r.value = std::max(0.0, q.value);
    r.tail_mass_bound = w.tail_mass;
    r.abs_error_est = q.abs_error + w.tail_mass * log2_1p(model.avg_snr * w.hi * w.hi);
    return r;
}

McMetrics mc_metrics(std::uint64_t seed, const SnrModel &model, std::size_t n_samples, const OutageThreshold &th,
                     const McOptions &opt) {
    if (n_samples == 0) throw std::invalid_argument("mc_metrics: n_samples must be >= 1");
    model.validate();
    th.validate();
    const std::size_t chunk = std::max<std::size_t>(1, opt.chunk_size);
    const std::size_t chunks = (n_samples + chunk - 1) / chunk;

    const auto partials = run_indexed(chunks, opt.workers, [&](std::size_t k) {
        RngStream rng(seed, k);
        const std::size_t begin = k * chunk;
        const std::size_t end = std::min(n_samples, begin + chunk);
        McPartial p;
        for (std::size_t i = begin; i < end; ++i) {
            const double gamma = sample_snr_exact(rng, model);
            const double b = ber_kernel(gamma);
            const double cap = log2_1p(gamma);
            p.ber_sum += b;
            p.ber_sq += b * b;
            p.out_count += gamma <= th.gamma_th ? 1.0 : 0.0;
            p.cap_sum += cap;
            p.cap_sq += cap * cap;
        }
        return p;
    });

    McPartial total;
    for (const auto &p : partials) {
        total.ber_sum += p.ber_sum;
        total.ber_sq += p.ber_sq;
        total.out_count += p.out_count;
        total.cap_sum += p.cap_sum;
        total.cap_sq += p.cap_sq;
    }
    return {mc_result(total.ber_sum, total.ber_sq, n_samples),
            mc_result(total.out_count, total.out_count, n_samples),
            mc_result(total.cap_sum, total.cap_sq, n_samples)};
}

} // namespace risho
