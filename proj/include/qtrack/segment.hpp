// Copyright 2026 the qtrack developers.
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

// Candidate track segments: directed hit pairs on adjacent layers, pruned by
// a length cut and bounded by a hard neuron budget. Segments are the decision
// units the coupling network is built over.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <vector>

#include <json.hpp>

#include "qtrack/errors.hpp"
#include "qtrack/event.hpp"

namespace qtrack {

struct Segment {
    std::uint32_t id = 0;
    std::uint32_t from_hit = 0;  // hit id on layer l
    std::uint32_t to_hit = 0;    // hit id on layer l + 1
    double length = 0.0;
    double dir_x = 0.0;  // unit vector from -> to
    double dir_y = 0.0;

    friend bool operator==(const Segment&, const Segment&) = default;
};

struct SegmentCuts {
    double max_segment_length = std::numeric_limits<double>::infinity();
    double max_kink_angle = std::numbers::pi;  // pairing eligibility for cost couplings
    std::uint32_t max_neurons = 4096;

    void validate() const {
        if (!(max_segment_length > 0.0))
            throw ContractViolation("max_segment_length must be > 0");
        if (!(max_kink_angle > 0.0) || !(max_kink_angle <= std::numbers::pi))
            throw ContractViolation("max_kink_angle must lie in (0, pi]");
        if (max_neurons < 1) throw ContractViolation("max_neurons must be >= 1");
    }

    friend bool operator==(const SegmentCuts&, const SegmentCuts&) = default;
};

//! Cuts tuned for unit layer spacing; shipped preset.
inline SegmentCuts default_segment_cuts() { return SegmentCuts{1.8, 0.8, 4096}; }

struct SegmentSet {
    std::vector<Segment> segments;  // ordered by (from_hit, to_hit)
    SegmentCuts cuts;               // the cuts the set was built under
    std::map<std::uint32_t, std::vector<std::uint32_t>> outgoing;  // hit id -> segment ids
    std::map<std::uint32_t, std::vector<std::uint32_t>> incoming;

    std::size_t size() const { return segments.size(); }
};

//! Enumerates all adjacent-layer hit pairs within the length cut. Fails with
//! a CapacityError naming the required budget rather than truncating.
inline SegmentSet build_segments(const Event& event, const SegmentCuts& cuts) {
    cuts.validate();
    event.validate();

    std::vector<std::vector<const Hit*>> by_layer(event.geometry.n_layers());
    for (const auto& h : event.hits) by_layer[h.layer].push_back(&h);

    auto within_cut = [&](const Hit& a, const Hit& b) {
        return std::hypot(b.x - a.x, b.y - a.y) <= cuts.max_segment_length;
    };

    std::size_t required = 0;
    for (std::size_t layer = 0; layer + 1 < by_layer.size(); ++layer)
        for (const Hit* a : by_layer[layer])
            for (const Hit* b : by_layer[layer + 1])
                if (within_cut(*a, *b)) ++required;
    if (required > cuts.max_neurons)
        throw CapacityError("segment construction requires " + std::to_string(required) +
                            " neurons but the budget is " + std::to_string(cuts.max_neurons));

    SegmentSet set;
    set.cuts = cuts;
    set.segments.reserve(required);
    for (std::size_t layer = 0; layer + 1 < by_layer.size(); ++layer)
        for (const Hit* a : by_layer[layer])
            for (const Hit* b : by_layer[layer + 1]) {
                const double len = std::hypot(b->x - a->x, b->y - a->y);
                if (len > cuts.max_segment_length) continue;
                Segment s;
                s.from_hit = a->id;
                s.to_hit = b->id;
                s.length = len;
                s.dir_x = (b->x - a->x) / len;
                s.dir_y = (b->y - a->y) / len;
                set.segments.push_back(s);
            }

    std::sort(set.segments.begin(), set.segments.end(), [](const Segment& a, const Segment& b) {
        return a.from_hit != b.from_hit ? a.from_hit < b.from_hit : a.to_hit < b.to_hit;
    });
    for (std::uint32_t i = 0; i < set.segments.size(); ++i) {
        set.segments[i].id = i;
        set.outgoing[set.segments[i].from_hit].push_back(i);
        set.incoming[set.segments[i].to_hit].push_back(i);
    }
    return set;
}

//! Angle in [0, pi] between the directions of two connected segments
//! (s1 ends where s2 begins).
inline double segment_angle(const Segment& s1, const Segment& s2) {
    if (s1.to_hit != s2.from_hit)
        throw ContractViolation("segment_angle requires s1.to_hit == s2.from_hit");
    const double dot = s1.dir_x * s2.dir_x + s1.dir_y * s2.dir_y;
    return std::acos(std::clamp(dot, -1.0, 1.0));
}

//! Event JSON envelope extended with a "segments" array {id, from, to}.
inline nlohmann::json segments_to_json(const SegmentSet& set) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : set.segments)
        arr.push_back({{"id", s.id}, {"from", s.from_hit}, {"to", s.to_hit}});
    return arr;
}

}  // namespace qtrack
