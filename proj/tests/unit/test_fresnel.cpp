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


#include "risho/fresnel.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace {

// brute-force oracle: adaptive Gauss-Kronrod from Boost, split in unit pieces
risho::FresnelCS oracle(double a) {
    using boost::math::quadrature::gauss_kronrod;
    const double pi = std::numbers::pi;
    double c = 0.0, s = 0.0;
    const double sign = a < 0 ? -1.0 : 1.0;
    const double end = std::abs(a);
    for (double lo = 0.0; lo < end; lo += 0.25) {
        const double hi = std::min(end, lo + 0.25);
        c += gauss_kronrod<double, 61>::integrate([&](double t) { return std::cos(pi * t * t / 2); }, lo, hi, 10, 1e-13);
        s += gauss_kronrod<double, 61>::integrate([&](double t) { return std::sin(pi * t * t / 2); }, lo, hi, 10, 1e-13);
    }
    return {sign * c, sign * s};
}

} // namespace

TEST(Fresnel, ZeroIsExactlyZero) {
    const auto r = risho::fresnel_integrals(0.0);
    EXPECT_EQ(r.c, 0.0);
    EXPECT_EQ(r.s, 0.0);
}

TEST(Fresnel, MatchesQuadratureOracle) {
    std::mt19937_64 gen(20261018);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int i = 0; i < 200; ++i) {
        const double a = u(gen);
        const auto got = risho::fresnel_integrals(a);
        const auto want = oracle(a);
        EXPECT_NEAR(got.c, want.c, 1e-12) << "a=" << a;
        EXPECT_NEAR(got.s, want.s, 1e-12) << "a=" << a;
    }
}

TEST(Fresnel, SeriesAndContinuedFractionMeetSmoothly) {
    for (double a : {1.4999999, 1.5, 1.5000001}) {
        const auto got = risho::fresnel_integrals(a);
        const auto want = oracle(a);
        EXPECT_NEAR(got.c, want.c, 1e-13);
        EXPECT_NEAR(got.s, want.s, 1e-13);
    }
}

TEST(Fresnel, OddSymmetry) {
    for (double a : {0.1, 0.7, 2.3, 4.9, 12.0}) {
        const auto p = risho::fresnel_integrals(a);
        const auto m = risho::fresnel_integrals(-a);
        EXPECT_EQ(p.c, -m.c);
        EXPECT_EQ(p.s, -m.s);
    }
}

TEST(Fresnel, LargeArgumentLimit) {
    const double a = 1e4;
    const auto r = risho::fresnel_integrals(a);
    // C ~ 1/2 + sin(pi a^2 / 2)/(pi a), S ~ 1/2 - cos(pi a^2 / 2)/(pi a)
    EXPECT_NEAR(r.c, 0.5, 1.0 / (std::numbers::pi * a) * 1.01);
    EXPECT_NEAR(r.s, 0.5, 1.0 / (std::numbers::pi * a) * 1.01);
}

TEST(Fresnel, KnownValue) {
    // C(1), S(1) tabulated (A&S table 7.7)
    const auto r = risho::fresnel_integrals(1.0);
    EXPECT_NEAR(r.c, 0.7798934003768228, 1e-15);
    EXPECT_NEAR(r.s, 0.4382591473903548, 1e-15);
}

TEST(Fresnel, NonFiniteThrows) {
    EXPECT_THROW(risho::fresnel_integrals(std::nan("")), std::invalid_argument);
    EXPECT_THROW(risho::fresnel_integrals(INFINITY), std::invalid_argument);
}
