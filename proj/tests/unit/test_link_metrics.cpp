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
#include "risho/link_metrics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace risho;
using boost::math::quadrature::gauss_kronrod;

namespace {

double phi(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// E[f(avg G^2)] with G ~ N(mean, sd^2), integrated directly over G in pieces.
template <class F>
double oracle_expectation(F f, const SnrModel &m) {
    const double mu = m.cascade.mean_g, s = m.cascade.stddev();
    auto g = [&](double x) {
        const double z = (x - mu) / s;
        return f(m.avg_snr * x * x) * std::exp(-0.5 * z * z) / (s * std::sqrt(2 * std::numbers::pi));
    };
    double total = 0.0;
    const double lo = mu - 15 * s, hi = mu + 15 * s;
    const int pieces = 120;
    for (int i = 0; i < pieces; ++i)
        total += gauss_kronrod<double, 61>::integrate(g, lo + (hi - lo) * i / pieces, lo + (hi - lo) * (i + 1) / pieces,
                                                     8, 1e-15);
    return total;
}

SnrModel model(double mu, double var, std::size_t n, double snr) {
    return SnrModel::make(cascade_moments({mu, var}, {mu, var}, n), snr);
}

} // namespace

TEST(BerKernel, Values) {
    EXPECT_EQ(ber_kernel(0.0), 0.5);
    EXPECT_NEAR(ber_kernel(4.0), 0.5 * std::erfc(1.0), 1e-16);
    double prev = 0.5;
    for (double g = 0.5; g < 100; g *= 1.7) {
        EXPECT_LT(ber_kernel(g), prev);
        prev = ber_kernel(g);
    }
}

TEST(AverageBer, MatchesGaussianOracle) {
    for (auto m : {model(0.5, 0.2, 8, 1.0), model(1.0, 0.005, 32, std::pow(10, -1.97)), model(0.2, 1.0, 64, 0.3),
                   model(-0.7, 0.4, 16, 2.0)}) {
        const auto r = average_ber(m);
        EXPECT_EQ(r.method, MetricMethod::Quadrature);
        EXPECT_NEAR(r.value, oracle_expectation(ber_kernel, m), 1e-9);
        EXPECT_LT(r.abs_error_est, 1e-7);
        EXPECT_GE(r.tail_mass_bound, 0.0);
    }
}

TEST(Outage, MatchesNormalClosedForm) {
    for (auto m : {model(0.5, 0.2, 8, 1.0), model(1.0, 0.005, 32, std::pow(10, -1.97)), model(-0.3, 0.6, 4, 5.0)}) {
        const double mu = m.cascade.mean_g, s = m.cascade.stddev();
        for (double gth_db : {-10.0, 0.0, 10.2, 20.0}) {
            const double gth = std::pow(10.0, gth_db / 10.0);
            const double l = std::sqrt(gth / m.avg_snr);
            const double want = phi((l - mu) / s) - phi((-l - mu) / s);
            EXPECT_NEAR(outage_probability(m, {gth}).value, want, 1e-9) << gth_db;
        }
    }
}

TEST(Outage, EdgeCases) {
    const auto m = model(0.5, 0.2, 8, 1.0);
    EXPECT_EQ(outage_probability(m, {0.0}).value, 0.0);
    EXPECT_THROW(outage_probability(m, {-1.0}), std::invalid_argument);
    EXPECT_NEAR(outage_probability(m, {1e12}).value, 1.0, 1e-12);
}

TEST(Capacity, MatchesGaussianOracle) {
    auto f = [](double g) { return std::log1p(g) / std::numbers::ln2; };
    for (auto m : {model(0.5, 0.2, 8, 1.0), model(1.0, 0.005, 128, std::pow(10, -1.97)), model(0.2, 1.0, 64, 0.3)})
        EXPECT_NEAR(ergodic_capacity(m).value, oracle_expectation(f, m), 1e-8);
}

TEST(Metrics, DegenerateCascadeIsPointMass) {
    const auto m = SnrModel::make(cascade_moments({0.5, 0.0}, {0.5, 0.0}, 8), 2.0);
    const double g = 2.0 * 4.0;
    EXPECT_EQ(average_ber(m).value, ber_kernel(g));
    EXPECT_EQ(ergodic_capacity(m).value, std::log1p(g) / std::numbers::ln2);
    EXPECT_EQ(outage_probability(m, {g}).value, 1.0);
    EXPECT_EQ(outage_probability(m, {g * 0.99}).value, 0.0);
}

TEST(Metrics, MoreElementsLowerBer) {
    double prev = 1.0;
    for (std::size_t n : {8u, 16u, 32u, 64u, 128u}) {
        const double b = average_ber(model(1.0, 0.005, n, std::pow(10, -1.97))).value;
        EXPECT_LT(b, prev);
        prev = b;
    }
}

TEST(MonteCarlo, AgreesWithQuadrature) {
    // small hop variance and large N: the Gaussian law of G is then accurate
    const auto m = model(1.0, 0.01, 64, 0.002);
    const OutageThreshold th{7.5};
    const auto mc = mc_metrics(7, m, 200000, th);
    EXPECT_EQ(mc.ber.method, MetricMethod::MonteCarlo);
    EXPECT_EQ(mc.ber.n_samples, 200000u);
    EXPECT_NEAR(mc.ber.value, average_ber(m).value, 4 * mc.ber.abs_error_est);
    EXPECT_NEAR(mc.outage.value, outage_probability(m, th).value, 4 * mc.outage.abs_error_est);
    EXPECT_NEAR(mc.capacity.value, ergodic_capacity(m).value, 4 * mc.capacity.abs_error_est);
}

TEST(MonteCarlo, IndependentOfWorkerCount) {
    const auto m = model(0.6, 0.3, 16, 0.5);
    const auto a = mc_metrics(3, m, 70000, {2.0}, {4096, 1});
    const auto b = mc_metrics(3, m, 70000, {2.0}, {4096, 3});
    EXPECT_EQ(a.ber.value, b.ber.value);
    EXPECT_EQ(a.outage.value, b.outage.value);
    EXPECT_EQ(a.capacity.value, b.capacity.value);
    const auto c = mc_metrics(4, m, 70000, {2.0}, {4096, 1});
    EXPECT_NE(a.ber.value, c.ber.value);
}

TEST(MonteCarlo, RejectsZeroSamples) {
    EXPECT_THROW(mc_metrics(1, model(0.5, 0.2, 8, 1.0), 0, {1.0}), std::invalid_argument);
}
