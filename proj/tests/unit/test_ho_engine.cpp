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


#include "algorithm_trace.hpp"
#include "risho/ho_engine.hpp"
#include "risho/rng.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace risho;
using risho::oracle::trace_algorithm;

namespace {

bool qualifies(const oracle::TraceResult &t, LinkId id) {
    return std::find(t.assigned_by_final.begin(), t.assigned_by_final.end(), id) != t.assigned_by_final.end();
}

std::vector<PairedSample> random_samples(std::uint64_t seed, std::size_t n) {
    RngStream rng(seed);
    std::vector<PairedSample> out(n);
    for (auto &s : out) {
        // log-uniform BERs over [1e-8, 0.5] straddle every threshold
        s.ber_serving = 0.5 * std::pow(10.0, -8.0 * rng.uniform());
        s.ber_candidate = 0.5 * std::pow(10.0, -8.0 * rng.uniform());
        s.load = static_cast<std::uint32_t>(100 * rng.uniform());
    }
    return out;
}

} // namespace

TEST(HoThresholds, Validation) {
    HoThresholds th;
    EXPECT_NO_THROW(th.validate());
    th.t_hs = th.t_hh;
    EXPECT_THROW(th.validate(), std::invalid_argument);
    th = {};
    th.epsilon = 0.0;
    EXPECT_THROW(th.validate(), std::invalid_argument);
    th = {};
    th.t_hh = 0.5;
    EXPECT_THROW(th.validate(), std::invalid_argument);
}

TEST(HoThresholds, MarginIsHalfOpen) {
    HoThresholds th;
    EXPECT_FALSE(th.in_pp_margin(th.t_hh - th.epsilon));
    EXPECT_TRUE(th.in_pp_margin(th.t_hh + th.epsilon));
    EXPECT_TRUE(th.in_pp_margin(th.t_hh));
}

TEST(DecideHandover, FixturesMatchTrace) {
    const HoThresholds th;
    for (const auto &f : oracle::decide_fixtures()) {
        const auto d = decide_handover(f.state, f.direct, f.non_direct, th);
        const auto t = trace_algorithm(f.state, f.direct, f.non_direct, th);
        EXPECT_EQ(d.mode, f.expected) << f.name;
        EXPECT_EQ(d.mode, t.mode) << f.name;
        if (t.mode == HoMode::NoHandover) {
            EXPECT_FALSE(d.chosen_link.has_value());
        } else {
            ASSERT_TRUE(d.chosen_link.has_value()) << f.name;
            EXPECT_TRUE(qualifies(t, *d.chosen_link)) << f.name;
        }
    }
}

TEST(DecideHandover, ShoFixtureChoosesSubThresholdLink) {
    const auto f = oracle::decide_fixtures()[1];
    EXPECT_EQ(decide_handover(f.state, f.direct, f.non_direct, {}).chosen_link, LinkId{2});
}

TEST(DecideHandover, CbOverridesPp) {
    const ServingState s{{0, LinkKind::Direct, 1.0e-3}, 90};
    const std::vector<LinkMeasurement> nd{{5, LinkKind::NonDirect, 2e-4}, {6, LinkKind::NonDirect, 1e-4}};
    const auto d = decide_handover(s, {}, nd, {});
    EXPECT_EQ(d.mode, HoMode::RIS_CB);
    EXPECT_EQ(d.chosen_link, LinkId{6});
}

TEST(DecideHandover, TiesGoToLowestId) {
    const ServingState s{{0, LinkKind::Direct, 1e-2}, 0};
    const std::vector<LinkMeasurement> dir{{9, LinkKind::Direct, 1e-4}, {3, LinkKind::Direct, 1e-4}};
    EXPECT_EQ(decide_handover(s, dir, {}, {}).chosen_link, LinkId{3});
}

TEST(DecideHandover, RandomInputsMatchTrace) {
    RngStream rng(21);
    const HoThresholds th;
    for (int k = 0; k < 3000; ++k) {
        auto ber = [&] { return 0.5 * std::pow(10.0, -7.0 * rng.uniform()); };
        ServingState s{{0, LinkKind::Direct, k % 5 == 0 ? 1e-3 + 1.8e-4 * (rng.uniform() - 0.5) : ber()},
                       static_cast<std::uint32_t>(100 * rng.uniform())};
        std::vector<LinkMeasurement> dir, nd;
        for (LinkId i = 1; i <= 3; ++i) dir.push_back({i, LinkKind::Direct, ber()});
        for (LinkId i = 10; i <= 12; ++i) nd.push_back({i, LinkKind::NonDirect, ber()});
        const auto d = decide_handover(s, dir, nd, th);
        const auto t = trace_algorithm(s, dir, nd, th);
        ASSERT_EQ(d.mode, t.mode) << k;
        if (d.chosen_link) {
            EXPECT_TRUE(qualifies(t, *d.chosen_link));
        }
    }
}

TEST(DecideHandover, RejectsBadInput) {
    const ServingState s{{0, LinkKind::Direct, 1e-2}, 0};
    const std::vector<LinkMeasurement> wrong_kind{{1, LinkKind::NonDirect, 1e-4}};
    EXPECT_THROW(decide_handover(s, wrong_kind, {}, {}), std::invalid_argument);
    const std::vector<LinkMeasurement> bad_ber{{1, LinkKind::Direct, 0.7}};
    EXPECT_THROW(decide_handover(s, bad_ber, {}, {}), std::invalid_argument);
    EXPECT_THROW(decide_handover({{0, LinkKind::Direct, -0.1}, 0}, {}, {}, {}), std::invalid_argument);
}

TEST(DecideHandover, Pure) {
    const auto f = oracle::decide_fixtures()[0];
    EXPECT_EQ(decide_handover(f.state, f.direct, f.non_direct, {}), decide_handover(f.state, f.direct, f.non_direct, {}));
}

TEST(UnionEstimators, InclusionExclusionIsExact) {
    const auto samples = random_samples(3, 100000);
    HoThresholds th{0.01, 1e-4, 0.005, 50};
    for (const auto &u : {hho_probability(samples, th), sho_probability(samples, th), ris_cb_probability(samples, th),
                          ris_pp_probability(samples, th)}) {
        EXPECT_EQ(u.union_count, u.inclusion_exclusion);
        EXPECT_EQ(u.probability(), u.probability_by_inclusion_exclusion());
        EXPECT_GT(u.union_count, 0u);
        EXPECT_LT(u.union_count, u.n);
    }
}

TEST(UnionEstimators, HandCountedEvents) {
    const HoThresholds th;  // t_hh 1e-3, t_hs 1e-5, eps 1e-4, load 50
    const std::vector<PairedSample> s{
        {2e-3, 1e-2, 0},   // A only
        {1e-4, 1e-5, 0},   // B only
        {5e-3, 1e-6, 60},  // A and B
        {1e-4, 2e-4, 0},   // neither
    };
    const auto h = hho_probability(s, th);
    EXPECT_EQ(h.single, (std::vector<std::size_t>{2, 2}));
    EXPECT_EQ(h.pairs, (std::vector<std::size_t>{1}));
    EXPECT_EQ(h.union_count, 3u);
    EXPECT_DOUBLE_EQ(h.probability(), 0.75);

    const auto sho = sho_probability(s, th);
    EXPECT_EQ(sho.single, (std::vector<std::size_t>{2, 1}));
    EXPECT_EQ(sho.union_count, 3u);

    const auto cb = ris_cb_probability(s, th);
    EXPECT_EQ(cb.single, (std::vector<std::size_t>{1, 3}));
    EXPECT_EQ(cb.union_count, 3u);
}

TEST(UnionEstimators, EmptyThrows) {
    EXPECT_THROW(hho_probability({}, {}), std::invalid_argument);
    EXPECT_THROW(ris_pp_probability({}, {}), std::invalid_argument);
}

TEST(SelectTarget, ArgmaxWithLowIdTies) {
    EXPECT_EQ(select_target({{4, 0.2}, {2, 0.7}, {9, 0.7}}), LinkId{2});
    EXPECT_EQ(select_target({{4, 0.9}, {2, 0.7}}), LinkId{4});
    EXPECT_THROW(select_target({}), std::invalid_argument);
}
