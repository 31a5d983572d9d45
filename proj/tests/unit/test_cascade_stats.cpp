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

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace risho;
using boost::math::quadrature::gauss_kronrod;

namespace {

double integrate_snr_pdf(const SnrModel &m, double scale) {
    // t = sqrt(gamma / avg) removes the 1/sqrt(gamma) singularity: dgamma = 2 avg t dt
    const double mu = std::abs(m.cascade.mean_g), s = m.cascade.stddev();
    const double hi = mu + 14 * s;
    const double lo = std::max(0.0, mu - 14 * s);
    auto f = [&](double t) {
        if (t <= 0.0) return 0.0;
        return scale * snr_pdf(m.avg_snr * t * t, m) * 2.0 * m.avg_snr * t;
    };
    double total = 0.0;
    const int pieces = 64;
    for (int i = 0; i < pieces; ++i) {
        const double a = lo + (hi - lo) * i / pieces, b = lo + (hi - lo) * (i + 1) / pieces;
        total += gauss_kronrod<double, 31>::integrate(f, a, b, 10, 1e-14);
    }
    return total;
}

} // namespace

TEST(CascadeMoments, ClosedForm) {
    const HopGainStats h1{0.3, 0.2}, h2{-0.5, 0.7};
    const auto c = cascade_moments(h1, h2, 40);
    EXPECT_NEAR(c.mean_g, 40 * 0.3 * -0.5, 1e-15);
    EXPECT_NEAR(c.var_total, 40 * ((0.2 + 0.09) * (0.7 + 0.25) - 0.09 * 0.25), 1e-13);
    EXPECT_EQ(c.n_elements, 40u);
}

TEST(CascadeMoments, ZeroMeansGiveRayleighProductVariance) {
    const auto c = cascade_moments({0.0, 1.0}, {0.0, 2.0}, 8);
    EXPECT_EQ(c.mean_g, 0.0);
    EXPECT_NEAR(c.var_total, 16.0, 1e-15);
}

TEST(CascadeMoments, Errors) {
    EXPECT_THROW(cascade_moments({1, 1}, {1, 1}, 0), std::invalid_argument);
    EXPECT_THROW(cascade_moments({1, -1}, {1, 1}, 4), std::invalid_argument);
}

TEST(CascadeMoments, DeterministicHopsAreDegenerate) {
    const auto c = cascade_moments({0.5, 0.0}, {2.0, 0.0}, 10);
    EXPECT_TRUE(c.degenerate());
    EXPECT_THROW(gain_pdf(1.0, c), DegenerateDistribution);
    EXPECT_THROW(gain_cdf(1.0, c), DegenerateDistribution);
    const auto m = SnrModel::make(c, 2.0);
    EXPECT_THROW(snr_pdf(1.0, m), DegenerateDistribution);
    // all mass at gamma = 2 * 10^2
    EXPECT_EQ(snr_cdf(199.999, m), 0.0);
    EXPECT_EQ(snr_cdf(200.0, m), 1.0);
}

TEST(GainDensity, MatchesNormalLaw) {
    const auto c = cascade_moments({1.0, 0.5}, {0.5, 0.25}, 16);
    const double s = std::sqrt(c.var_total);
    for (double z : {-2.0, -0.3, 0.0, 1.7}) {
        const double g = c.mean_g + z * s;
        EXPECT_NEAR(gain_pdf(g, c), std::exp(-z * z / 2) / (s * std::sqrt(2 * std::numbers::pi)), 1e-14);
        EXPECT_NEAR(gain_cdf(g, c), 0.5 * std::erfc(-z / std::sqrt(2.0)), 1e-14);
    }
}

TEST(SnrDensity, IntegratesToOne) {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> mean(-1.0, 1.0), var(0.05, 1.0), snr(0.1, 20.0);
    std::uniform_int_distribution<int> n(1, 200);
    for (int i = 0; i < 10; ++i) {
        const auto c = cascade_moments({mean(gen), var(gen)}, {mean(gen), var(gen)}, n(gen));
        const auto m = SnrModel::make(c, snr(gen));
        EXPECT_NEAR(integrate_snr_pdf(m, 1.0), 1.0, 1e-9);
    }
}

TEST(SnrDensity, PrintedPrefactorIntegratesToTwo) {
    // without the 1/2 the two folded lobes carry total mass 2
    const auto m = SnrModel::make(cascade_moments({0.4, 0.3}, {0.6, 0.2}, 32), 3.0);
    EXPECT_NEAR(integrate_snr_pdf(m, 2.0), 2.0, 2e-9);
}

TEST(SnrDensity, CdfIsIntegralOfPdf) {
    const auto m = SnrModel::make(cascade_moments({0.4, 0.3}, {0.6, 0.2}, 32), 3.0);
    const double g = 40.0;
    const double t_hi = std::sqrt(g / m.avg_snr);
    auto f = [&](double t) { return t <= 0.0 ? 0.0 : snr_pdf(m.avg_snr * t * t, m) * 2.0 * m.avg_snr * t; };
    const double got = gauss_kronrod<double, 61>::integrate(f, 0.0, t_hi, 15, 1e-14);
    EXPECT_NEAR(snr_cdf(g, m), got, 1e-10);
    EXPECT_EQ(snr_cdf(0.0, m), 0.0);
    EXPECT_TRUE(std::isinf(snr_pdf(0.0, m)));
    EXPECT_THROW(snr_pdf(-1.0, m), std::invalid_argument);
}

TEST(SnrModel, RejectsBadSnr) {
    const auto c = cascade_moments({1, 0.1}, {1, 0.1}, 4);
    EXPECT_THROW(SnrModel::make(c, 0.0), std::invalid_argument);
    EXPECT_THROW(SnrModel::make(c, NAN), std::invalid_argument);
}

TEST(Sampling, ExactCascadeMomentsMatch) {
    const auto c = cascade_moments({0.3, 0.4}, {-0.2, 0.5}, 24);
    RngStream rng(5);
    const int n = 200000;
    double sum = 0, sum2 = 0;
    for (int i = 0; i < n; ++i) {
        const double g = sample_cascade_gain(rng, c);
        sum += g;
        sum2 += g * g;
    }
    const double mean = sum / n, var = sum2 / n - mean * mean;
    EXPECT_NEAR(mean, c.mean_g, 5 * std::sqrt(c.var_total / n));
    EXPECT_NEAR(var, c.var_total, 0.02 * c.var_total);
}

TEST(Sampling, SameSeedSameDraws) {
    const auto m = SnrModel::make(cascade_moments({0.3, 0.4}, {0.2, 0.5}, 8), 2.0);
    RngStream a(99, 3), b(99, 3), c(99, 4);
    for (int i = 0; i < 10; ++i) {
        const double x = sample_snr_exact(a, m);
        EXPECT_EQ(x, sample_snr_exact(b, m));
        EXPECT_NE(x, sample_snr_exact(c, m));
    }
}
