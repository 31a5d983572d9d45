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

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace risho {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSeriesLimit = 1.5;
constexpr int kMaxIter = 200;

// Power series; alternating but well conditioned for x <= 1.5.
FresnelCS series(double x) {
    const double arg = 0.5 * std::numbers::pi * x * x;
    double term = x; // (arg^k / k!) * x
    double c = x;
    double s = 0.0;
    bool c_done = false;
    bool s_done = false;
    for (int k = 1; k < kMaxIter && !(c_done && s_done); ++k) {
        term *= arg / k;
        const double contribution = term / (2 * k + 1);
        const bool negative = ((k / 2) % 2) == 1;
        if (k % 2 == 0) {
            c += negative ? -contribution : contribution;
            c_done = contribution < kEps * std::abs(c);
        } else {
            s += negative ? -contribution : contribution;
            s_done = contribution < kEps * std::abs(s);
        }
    }
    return {c, s};
}

// Continued fraction for the complementary error function of a complex
// argument, evaluated with the modified Lentz method.
FresnelCS continued_fraction(double x) {
    using cd = std::complex<double>;
    const double pix2 = std::numbers::pi * x * x;
    const double tiny = std::numeric_limits<double>::min() / kEps;
    cd b(1.0, -pix2);
    cd cc(1.0 / tiny, 0.0);
    cd d = 1.0 / b;
    cd h = d;
    int n = -1;
    for (int k = 2; k <= kMaxIter; ++k) {
        n += 2;
        const double a = -static_cast<double>(n) * (n + 1);
        b += 4.0;
        d = 1.0 / (a * d + b);
        cc = b + a / cc;
        const cd del = cc * d;
        h *= del;
        if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < kEps) break;
    }
    h *= cd(x, -x);
    const cd cs = cd(0.5, 0.5) * (1.0 - std::polar(1.0, 0.5 * pix2) * h);
    return {cs.real(), cs.imag()};
}

} // namespace

FresnelCS fresnel_integrals(double a) {
    if (!std::isfinite(a)) throw std::invalid_argument("fresnel_integrals: argument must be finite");
    const double x = std::abs(a);
    FresnelCS r = (x <= kSeriesLimit) ? series(x) : continued_fraction(x);
    if (a < 0) {
        r.c = -r.c;
        r.s = -r.s;
    }
    return r;
}

} // namespace risho
