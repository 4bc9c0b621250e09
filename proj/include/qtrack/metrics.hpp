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

// Truth-matched reconstruction scores and machine-readable reports.

#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qtrack/denby_peterson.hpp"
#include "qtrack/errors.hpp"
#include "qtrack/event.hpp"
#include "qtrack/ising_io.hpp"
#include "qtrack/segment.hpp"
#include "qtrack/solvers.hpp"

namespace qtrack {

struct SegmentScore {
    std::optional<double> efficiency;  // matched / true; absent when nothing is true
    std::optional<double> purity;      // matched / found; absent when nothing is found
    std::size_t n_true = 0;
    std::size_t n_found = 0;
    std::size_t n_matched = 0;
};

//! Scores the on-segments of `state` against the event truth. A found segment
//! is true iff its (from, to) hits are consecutive within one truth track.
inline SegmentScore score_segments(const SegmentSet& set, const ActivationState& state,
                                   const Event& event) {
    if (state.size() != set.size())
        throw ContractViolation("activation state length does not match segment count");
    if (!event.truth) throw ContractViolation("event carries no truth to score against");

    std::set<std::uint32_t> known;
    for (const auto& h : event.hits) known.insert(h.id);
    for (const auto& s : set.segments)
        if (!known.count(s.from_hit) || !known.count(s.to_hit))
            throw ContractViolation("segment references a hit outside the event");

    std::set<std::pair<std::uint32_t, std::uint32_t>> truth_pairs;
    for (const auto& track : event.truth->tracks)
        for (std::size_t k = 0; k + 1 < track.hit_ids.size(); ++k)
            truth_pairs.insert({track.hit_ids[k], track.hit_ids[k + 1]});

    SegmentScore score;
    score.n_true = truth_pairs.size();
    for (std::uint32_t i = 0; i < set.size(); ++i) {
        if (!state.on(i)) continue;
        ++score.n_found;
        if (truth_pairs.count({set.segments[i].from_hit, set.segments[i].to_hit}))
            ++score.n_matched;
    }
    if (score.n_true > 0)
        score.efficiency = static_cast<double>(score.n_matched) / score.n_true;
    if (score.n_found > 0)
        score.purity = static_cast<double>(score.n_matched) / score.n_found;
    return score;
}

struct TrackScore {
    std::size_t n_true = 0;     // truth tracks with at least two hits
    std::size_t n_found = 0;    // candidates
    std::size_t n_matched = 0;  // truth tracks claimed by some candidate
};

//! Double-majority matching: a candidate claims a truth track when at least
//! `candidate_majority` of its hits belong to that track and it covers at
//! least `track_coverage` of the track's hits.
inline TrackScore score_tracks(const std::vector<std::vector<std::uint32_t>>& candidates,
                               const EventTruth& truth, double candidate_majority = 0.75,
                               double track_coverage = 0.5) {
    TrackScore score;
    score.n_found = candidates.size();

    std::vector<const TruthTrack*> tracks;
    for (const auto& t : truth.tracks)
        if (t.hit_ids.size() >= 2) tracks.push_back(&t);
    score.n_true = tracks.size();

    std::vector<bool> claimed(tracks.size(), false);
    for (const auto& candidate : candidates) {
        if (candidate.empty()) continue;
        for (std::size_t t = 0; t < tracks.size(); ++t) {
            const std::set<std::uint32_t> track_hits(tracks[t]->hit_ids.begin(),
                                                     tracks[t]->hit_ids.end());
            std::size_t shared = 0;
            for (const auto id : candidate) shared += track_hits.count(id);
            const bool majority =
                shared >= candidate_majority * static_cast<double>(candidate.size());
            const bool coverage = shared >= track_coverage * static_cast<double>(track_hits.size());
            if (majority && coverage) claimed[t] = true;
        }
    }
    for (const bool c : claimed) score.n_matched += c;
    return score;
}

inline nlohmann::json segment_score_to_json(const SegmentScore& s) {
    nlohmann::json j;
    j["efficiency"] = s.efficiency ? nlohmann::json(*s.efficiency) : nlohmann::json(nullptr);
    j["purity"] = s.purity ? nlohmann::json(*s.purity) : nlohmann::json(nullptr);
    j["n_true"] = s.n_true;
    j["n_found"] = s.n_found;
    j["n_matched"] = s.n_matched;
    return j;
}

inline nlohmann::json track_score_to_json(const TrackScore& s) {
    return {{"n_true", s.n_true}, {"n_found", s.n_found}, {"n_matched", s.n_matched}};
}

//! Writes report.json and trace.csv under `out_dir`. The CSV has a header row
//! and one row per solver trace entry, across all results in order.
inline void emit_report(const SegmentScore& segments, const TrackScore& tracks,
                        const std::vector<SolveResult>& results, const std::string& out_dir) {
    nlohmann::json j;
    j["segment_score"] = segment_score_to_json(segments);
    j["track_score"] = track_score_to_json(tracks);
    j["solves"] = nlohmann::json::array();
    for (const auto& r : results)
        j["solves"].push_back({{"method", r.method},
                               {"seed", r.seed},
                               {"n", r.binary_domain ? r.best_binary.size() : r.best_spins.size()},
                               {"best_energy", r.best_energy},
                               {"restart_energies", r.restart_energies}});

    {
        const std::string path = out_dir + "/report.json";
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot open '" + path + "' for writing");
        out << j.dump(2) << "\n";
        out.flush();
        if (!out) throw IoError("write to '" + path + "' failed");
    }
    {
        const std::string path = out_dir + "/trace.csv";
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot open '" + path + "' for writing");
        out << "restart,step,temperature_or_gamma,best_energy\n";
        for (const auto& r : results)
            for (const auto& row : r.trace)
                out << row.restart << "," << row.step << ","
                    << detail::format_value(row.control) << ","
                    << detail::format_value(row.best_energy) << "\n";
        out.flush();
        if (!out) throw IoError("write to '" + path + "' failed");
    }
}

}  // namespace qtrack
