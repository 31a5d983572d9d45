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

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace risho {

using LinkId = std::uint32_t;

enum class LinkKind { Direct, NonDirect };

struct LinkMeasurement {
    LinkId link_id = 0;
    LinkKind kind = LinkKind::Direct;
    double ber = 0.5;
};

/// Algorithm thresholds. `load_threshold` bounds the active connections on the
/// serving link before cell breathing kicks in.
struct HoThresholds {
    double t_hh = 1e-3;
    double t_hs = 1e-5;
    double epsilon = 1e-4;
    std::uint32_t load_threshold = 50;

    void validate() const;
    /// T_hh - eps < ber <= T_hh + eps.
    bool in_pp_margin(double ber) const noexcept { return ber > t_hh - epsilon && ber <= t_hh + epsilon; }
};

struct ServingState {
    LinkMeasurement serving_link;
    std::uint32_t active_connections = 0;
};

enum class HoMode { NoHandover, HHO, SHO, RIS_CB, RIS_PP };

std::string_view to_string(HoMode mode);

struct HoDecision {
    HoMode mode = HoMode::NoHandover;
    std::optional<LinkId> chosen_link;

    bool operator==(const HoDecision &) const = default;
};

/// Four-mode handover decision. Branches run in order HHO, SHO (degraded
/// serving link), RIS-PP (serving BER inside the margin), RIS-CB (overload);
/// a later branch that fires replaces the earlier outcome. The chosen link is
/// the qualifying link of the final branch with the lowest BER, ties to the
/// lowest id.
HoDecision decide_handover(const ServingState &state, std::span<const LinkMeasurement> direct,
                           std::span<const LinkMeasurement> non_direct, const HoThresholds &th);

/// One joint realization of the serving link, one candidate link and the
/// serving load.
struct PairedSample {
    double ber_serving = 0.5;
    double ber_candidate = 0.5;
    std::uint32_t load = 0;
};

/// Empirical union estimate together with its inclusion-exclusion pieces.
/// For the three-event RIS-PP union the pairwise and triple terms are all used.
struct UnionEstimate {
    std::size_t n = 0;
    std::size_t union_count = 0;       // counted directly
    std::size_t inclusion_exclusion = 0;  // sum of singles - pairs + triple, as integer counts
    std::vector<std::size_t> single;   // |A|, |B| (, |C|)
    std::vector<std::size_t> pairs;    // |AB| (, |AC|, |BC|)
    std::size_t triple = 0;            // |ABC|, three-event case only

    double probability() const { return n == 0 ? 0.0 : static_cast<double>(union_count) / static_cast<double>(n); }
    /// P(A) + P(B) - P(AB) (+ P(C) - P(AC) - P(BC) + P(ABC)) from the same counts.
    double probability_by_inclusion_exclusion() const;
};

/// P(BER_s >= T_hh  U  BER_c < BER_s).
UnionEstimate hho_probability(std::span<const PairedSample> samples, const HoThresholds &th);
/// P(T_hs <= BER_s < T_hh  U  BER_c < T_hs).
UnionEstimate sho_probability(std::span<const PairedSample> samples, const HoThresholds &th);
/// P(load > threshold  U  BER_c < T_hh), the candidate being a RIS-aided link.
UnionEstimate ris_cb_probability(std::span<const PairedSample> samples, const HoThresholds &th);
/// P(BER_s in margin  U  BER_c in margin  U  BER_c < T_hh).
UnionEstimate ris_pp_probability(std::span<const PairedSample> samples, const HoThresholds &th);

/// Argmax over link probabilities; ties go to the lowest id.
LinkId select_target(const std::map<LinkId, double> &probabilities);

} // namespace risho
