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

// Event file: one UTF-8 JSON document per file,
//   {"geometry": {"layer_radii": [...], "sigma_phi": s},
//    "hits": [{"id": i, "layer": l, "x": x, "y": y}, ...],
//    "truth": {"tracks": [{"track_id": t, "hit_ids": [...]}],
//              "noise_hit_ids": [...]}}        // "truth" optional
// Doubles are emitted in the shortest decimal form that parses back to the
// identical value, so save/load round-trips field for field.

#include <fstream>
#include <string>

#include <json.hpp>

#include "qtrack/errors.hpp"
#include "qtrack/event.hpp"
#include "qtrack/segment.hpp"

namespace qtrack {

inline nlohmann::json event_to_json(const Event& event) {
    nlohmann::json j;
    j["geometry"]["layer_radii"] = event.geometry.layer_radii;
    j["geometry"]["sigma_phi"] = event.geometry.sigma_phi;
    j["hits"] = nlohmann::json::array();
    for (const auto& h : event.hits)
        j["hits"].push_back({{"id", h.id}, {"layer", h.layer}, {"x", h.x}, {"y", h.y}});
    if (event.truth) {
        nlohmann::json tracks = nlohmann::json::array();
        for (const auto& t : event.truth->tracks)
            tracks.push_back({{"track_id", t.track_id}, {"hit_ids", t.hit_ids}});
        j["truth"] = {{"tracks", tracks}, {"noise_hit_ids", event.truth->noise_hit_ids}};
    }
    return j;
}

inline std::string save_event(const Event& event) { return event_to_json(event).dump(2) + "\n"; }

//! Segment dump: the event document extended with a "segments" array.
inline nlohmann::json segment_dump_json(const Event& event, const SegmentSet& set) {
    nlohmann::json j = event_to_json(event);
    j["segments"] = segments_to_json(set);
    return j;
}

inline Event event_from_json(const nlohmann::json& j) {
    Event event;
    try {
        event.geometry.layer_radii = j.at("geometry").at("layer_radii").get<std::vector<double>>();
        event.geometry.sigma_phi = j.at("geometry").at("sigma_phi").get<double>();
        for (const auto& h : j.at("hits"))
            event.hits.push_back({h.at("id").get<std::uint32_t>(),
                                  h.at("layer").get<std::uint32_t>(), h.at("x").get<double>(),
                                  h.at("y").get<double>()});
        if (j.contains("truth")) {
            EventTruth truth;
            for (const auto& t : j.at("truth").at("tracks"))
                truth.tracks.push_back(
                    {t.at("track_id").get<std::uint32_t>(),
                     t.at("hit_ids").get<std::vector<std::uint32_t>>()});
            truth.noise_hit_ids =
                j.at("truth").at("noise_hit_ids").get<std::vector<std::uint32_t>>();
            event.truth = std::move(truth);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed event document: ") + e.what());
    }
    try {
        event.validate();
    } catch (const ContractViolation& e) {
        throw ParseError(std::string("invalid event: ") + e.what());
    }
    return event;
}

inline Event load_event(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return event_from_json(j);
}

inline void save_event_file(const Event& event, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << save_event(event);
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

inline Event load_event_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        return load_event(text);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace qtrack
