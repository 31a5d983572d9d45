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

#include "risho/errors.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <type_traits>
#include <utility>
#include <vector>

namespace risho {

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_depth = 20;               // bisection levels below each initial interval
    int initial_intervals = 1;        // the "resolution" knob: start from this many equal pieces
    std::size_t max_intervals = 200000;
};

template <class T>
struct QuadResult {
    T value{};
    double abs_error = 0.0;
    std::size_t evaluations = 0;
};

namespace detail {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1] (QUADPACK qk15).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
inline double magnitude(const T &v) {
    return std::abs(v);
}

template <class T>
inline bool finite(const T &v) {
    if constexpr (std::is_floating_point_v<T>) {
        return std::isfinite(v);
    } else {
        return std::isfinite(v.real()) && std::isfinite(v.imag());
    }
}

template <class T>
struct Segment {
    double a, b;
    T value;
    double error;
    int depth;
    bool operator<(const Segment &o) const { return error < o.error; }
};

template <class T, class F>
Segment<T> gk15(F &f, double a, double b, int depth) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const T fc = f(center);
    T kronrod = fc * kWgk[7];
    T gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const T sum = f(center - dx) + f(center + dx);
        kronrod += sum * kWgk[j];
        if (j % 2 == 1) gauss += sum * kWg[j / 2];
    }
    kronrod *= half;
    gauss *= half;
    if (!finite(kronrod)) throw NumericalFailure("integrand produced a non-finite value", INFINITY);
    return {a, b, kronrod, magnitude(T(kronrod - gauss)), depth};
}

} // namespace detail

/// Global adaptive Gauss-Kronrod integration of f over [a, b].
///
/// The interval with the largest error estimate is bisected until the summed
/// error meets max(abs_tol, rel_tol * |I|). Works for real or complex valued f.
/// Throws NumericalFailure when an interval would exceed max_depth.
template <class F>
auto integrate(F &&f, double a, double b, const QuadOptions &opt = {})
    -> QuadResult<std::decay_t<decltype(f(a))>> {
    using T = std::decay_t<decltype(f(a))>;
    QuadResult<T> out;
    if (a == b) return out;
    if (a > b) {
        auto r = integrate(std::forward<F>(f), b, a, opt);
        r.value = -r.value;
        return r;
    }

    std::priority_queue<detail::Segment<T>> heap;
    const int pieces = opt.initial_intervals < 1 ? 1 : opt.initial_intervals;
    const double step = (b - a) / pieces;
    T total{};
    double error = 0.0;
    for (int i = 0; i < pieces; ++i) {
        const double lo = a + step * i;
        const double hi = (i + 1 == pieces) ? b : a + step * (i + 1);
        auto seg = detail::gk15<T>(f, lo, hi, 0);
        total += seg.value;
        error += seg.error;
        heap.push(seg);
    }
    out.evaluations = 15u * static_cast<std::size_t>(pieces);

    while (error > std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(total))) {
        auto worst = heap.top();
        if (worst.depth >= opt.max_depth || heap.size() >= opt.max_intervals)
            throw NumericalFailure("adaptive quadrature did not converge", error);
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        auto left = detail::gk15<T>(f, worst.a, mid, worst.depth + 1);
        auto right = detail::gk15<T>(f, mid, worst.b, worst.depth + 1);
        out.evaluations += 30;
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum to shed the drift of the running totals.
    total = T{};
    error = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    out.value = total;
    out.abs_error = error;
    return out;
}

/// Tensor-product 2D integration: the outer x integral of the inner y integral,
/// each with the same tolerance budget.
template <class F>
auto integrate_2d(F &&f, double ax, double bx, double ay, double by, const QuadOptions &opt = {})
    -> QuadResult<std::decay_t<decltype(f(ax, ay))>> {
    double worst_inner = 0.0;
    std::size_t inner_evals = 0;
    auto inner = [&](double x) {
        auto r = integrate([&](double y) { return f(x, y); }, ay, by, opt);
        worst_inner = std::max(worst_inner, r.abs_error);
        inner_evals += r.evaluations;
        return r.value;
    };
    auto outer = integrate(inner, ax, bx, opt);
    outer.abs_error += std::abs(bx - ax) * worst_inner;
    outer.evaluations = inner_evals;
    return outer;
}

} // namespace risho
