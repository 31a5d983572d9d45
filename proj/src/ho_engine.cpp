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

#include "risho/ho_engine.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace risho {

namespace {

void validate_link(const LinkMeasurement &m, LinkKind expected, const char *list) {
    if (m.kind != expected)
        throw std::invalid_argument(std::string("link ") + std::to_string(m.link_id) + " has the wrong kind for the " +
                                    list + " list");
    if (!(m.ber >= 0.0 && m.ber <= 0.5))
        throw std::invalid_argument("link " + std::to_string(m.link_id) + " BER outside [0, 0.5]");
}

// Best (lowest BER, then lowest id) link satisfying pred, if any.
template <class Pred>
std::optional<LinkId> best_link(std::span<const LinkMeasurement> links, Pred pred) {
    const LinkMeasurement *best = nullptr;
    for (const auto &l : links) {
        if (!pred(l)) continue;
        if (!best || l.ber < best->ber || (l.ber == best->ber && l.link_id < best->link_id)) best = &l;
    }
    if (!best) return std::nullopt;
    return best->link_id;
}

void require_samples(std::span<const PairedSample> samples) {
    if (samples.empty()) throw std::invalid_argument("probability estimators need at least one sample");
}

template <class EventA, class EventB>
UnionEstimate two_event_union(std::span<const PairedSample> samples, EventA a, EventB b) {
    require_samples(samples);
    std::size_t na = 0, nb = 0, nab = 0, nu = 0;
    for (const auto &s : samples) {
        const bool ea = a(s);
        const bool eb = b(s);
        na += ea;
        nb += eb;
        nab += ea && eb;
        nu += ea || eb;
    }
    UnionEstimate u;
    u.n = samples.size();
    u.union_count = nu;
    u.single = {na, nb};
    u.pairs = {nab};
    u.inclusion_exclusion = na + nb - nab;
    return u;
}

} // namespace

void HoThresholds::validate() const {
    if (!(t_hs > 0.0)) throw std::invalid_argument("t_hs must be > 0");
    if (!(t_hs < t_hh)) throw std::invalid_argument("t_hs must be < t_hh");
    if (!(t_hh < 0.5)) throw std::invalid_argument("t_hh must be < 0.5");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
    if (!(epsilon < t_hh)) throw std::invalid_argument("epsilon must be < t_hh");
}

std::string_view to_string(HoMode mode) {
    switch (mode) {
    case HoMode::NoHandover: return "none";
    case HoMode::HHO: return "HHO";
    case HoMode::SHO: return "SHO";
    case HoMode::RIS_CB: return "RIS-CB";
    case HoMode::RIS_PP: return "RIS-PP";
    }
    return "unknown";
}

HoDecision decide_handover(const ServingState &state, std::span<const LinkMeasurement> direct,
                           std::span<const LinkMeasurement> non_direct, const HoThresholds &th) {
    th.validate();
    if (!(state.serving_link.ber >= 0.0 && state.serving_link.ber <= 0.5))
        throw std::invalid_argument("serving BER outside [0, 0.5]");
    for (const auto &l : direct) validate_link(l, LinkKind::Direct, "direct");
    for (const auto &l : non_direct) validate_link(l, LinkKind::NonDirect, "non-direct");

    const double serving = state.serving_link.ber;
    HoDecision d;
    auto assign = [&d](HoMode mode, std::optional<LinkId> link) {
        if (link) d = {mode, link};
    };

    if (serving >= th.t_hh) {
        assign(HoMode::HHO, best_link(direct, [&](const LinkMeasurement &l) { return l.ber < serving && l.ber <= th.t_hh; }));
        assign(HoMode::SHO, best_link(direct, [&](const LinkMeasurement &l) { return l.ber < th.t_hs; }));
    }
    const auto ris_usable = [&](const LinkMeasurement &l) { return l.ber < th.t_hh; };
    if (th.in_pp_margin(serving)) assign(HoMode::RIS_PP, best_link(non_direct, ris_usable));
    if (state.active_connections > th.load_threshold) assign(HoMode::RIS_CB, best_link(non_direct, ris_usable));
    return d;
}

double UnionEstimate::probability_by_inclusion_exclusion() const {
    if (n == 0) return 0.0;
    // Exact integer arithmetic on the counts, then one division: the result is
    // bit-identical to probability() whenever the identity holds.
    long long total = 0;
    for (auto c : single) total += static_cast<long long>(c);
    for (auto c : pairs) total -= static_cast<long long>(c);
    total += static_cast<long long>(triple);
    return static_cast<double>(total) / static_cast<double>(n);
}

UnionEstimate hho_probability(std::span<const PairedSample> samples, const HoThresholds &th) {
    th.validate();
    return two_event_union(
        samples, [&](const PairedSample &s) { return s.ber_serving >= th.t_hh; },
        [](const PairedSample &s) { return s.ber_candidate < s.ber_serving; });
}

UnionEstimate sho_probability(std::span<const PairedSample> samples, const HoThresholds &th) {
    th.validate();
    return two_event_union(
        samples, [&](const PairedSample &s) { return s.ber_serving >= th.t_hs && s.ber_serving < th.t_hh; },
        [&](const PairedSample &s) { return s.ber_candidate < th.t_hs; });
}

UnionEstimate ris_cb_probability(std::span<const PairedSample> samples, const HoThresholds &th) {
    th.validate();
    return two_event_union(
        samples, [&](const PairedSample &s) { return s.load > th.load_threshold; },
        [&](const PairedSample &s) { return s.ber_candidate < th.t_hh; });
}

UnionEstimate ris_pp_probability(std::span<const PairedSample> samples, const HoThresholds &th) {
    th.validate();
    require_samples(samples);
    std::size_t a = 0, b = 0, c = 0, ab = 0, ac = 0, bc = 0, abc = 0, any = 0;
    for (const auto &s : samples) {
        const bool ea = th.in_pp_margin(s.ber_serving);
        const bool eb = th.in_pp_margin(s.ber_candidate);
        const bool ec = s.ber_candidate < th.t_hh;
        a += ea;
        b += eb;
        c += ec;
        ab += ea && eb;
        ac += ea && ec;
        bc += eb && ec;
        abc += ea && eb && ec;
        any += ea || eb || ec;
    }
    UnionEstimate u;
    u.n = samples.size();
    u.union_count = any;
    u.single = {a, b, c};
    u.pairs = {ab, ac, bc};
    u.triple = abc;
    u.inclusion_exclusion = a + b + c - ab - ac - bc + abc;
    return u;
}

LinkId select_target(const std::map<LinkId, double> &probabilities) {
    if (probabilities.empty()) throw std::invalid_argument("select_target: no candidate links");
    auto best = probabilities.begin();
    // std::map iterates ids in ascending order, so a strict comparison keeps the lowest id on ties.
    for (auto it = probabilities.begin(); it != probabilities.end(); ++it)
        if (it->second > best->second) best = it;
    return best->first;
}

} // namespace risho
