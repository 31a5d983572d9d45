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
#include "risho/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

using risho::integrate;
using risho::integrate_2d;
using risho::QuadOptions;

TEST(Quadrature, PolynomialIsExact) {
    auto r = integrate([](double x) { return 3 * x * x * x * x - 2 * x + 1; }, -1.0, 2.0);
    // 3/5 (32 + 1) - (4 - 1) + 3
    EXPECT_NEAR(r.value, 3.0 / 5.0 * 33.0, 1e-13);
    EXPECT_LE(r.abs_error, 1e-10);
}

TEST(Quadrature, SmoothTranscendental) {
    auto r = integrate([](double x) { return std::exp(-x * x); }, -6.0, 6.0);
    EXPECT_NEAR(r.value, std::sqrt(std::numbers::pi) * std::erf(6.0), 1e-12);
}

TEST(Quadrature, PeakedIntegrandRefines) {
    const double w = 1e-3;
    auto r = integrate([w](double x) { return w / (x * x + w * w); }, -1.0, 1.0);
    EXPECT_NEAR(r.value, 2.0 * std::atan(1.0 / w), 1e-8);
    EXPECT_GT(r.evaluations, 15u * 20u);
}

TEST(Quadrature, ComplexIntegrand) {
    auto r = integrate([](double x) { return std::exp(std::complex<double>(0.0, 10.0 * x)); }, 0.0, 1.0);
    const std::complex<double> expect = (std::exp(std::complex<double>(0.0, 10.0)) - 1.0) / std::complex<double>(0.0, 10.0);
    EXPECT_NEAR(std::abs(r.value - expect), 0.0, 1e-12);
}

TEST(Quadrature, ReversedAndEmptyIntervals) {
    auto f = [](double x) { return std::sin(x); };
    EXPECT_NEAR(integrate(f, 1.0, 0.0).value, -(1.0 - std::cos(1.0)), 1e-14);
    EXPECT_EQ(integrate(f, 0.5, 0.5).value, 0.0);
}

TEST(Quadrature, DepthLimitThrowsWithErrorEstimate) {
    QuadOptions opt;
    opt.max_depth = 2;
    opt.abs_tol = 1e-14;
    opt.rel_tol = 1e-14;
    try {
        integrate([](double x) { return std::sin(1.0 / (x + 1e-3)); }, 0.0, 1.0, opt);
        FAIL() << "expected NumericalFailure";
    } catch (const risho::NumericalFailure &e) {
        EXPECT_GT(e.achieved_error(), 0.0);
    }
}

TEST(Quadrature, NonFiniteIntegrandThrows) {
    EXPECT_THROW(integrate([](double) { return std::nan(""); }, 0.0, 1.0), std::exception);
}

TEST(Quadrature, TwoDimensionalSeparable) {
    auto r = integrate_2d([](double x, double y) { return std::cos(x) * std::exp(y); }, 0.0, 1.0, -1.0, 1.0);
    EXPECT_NEAR(r.value, std::sin(1.0) * (std::exp(1.0) - std::exp(-1.0)), 1e-11);
}

TEST(Quadrature, InitialIntervalsGiveSameAnswer) {
    QuadOptions a, b;
    b.initial_intervals = 7;
    auto f = [](double x) { return std::cos(30.0 * x) * std::exp(-x); };
    EXPECT_NEAR(integrate(f, 0.0, 3.0, a).value, integrate(f, 0.0, 3.0, b).value, 1e-11);
}
