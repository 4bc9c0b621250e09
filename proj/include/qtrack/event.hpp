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

// Transverse-plane event model: concentric detector layers around the beam
// axis, hits on layer circles, optional generator truth.

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qtrack/errors.hpp"

namespace qtrack {

struct DetectorGeometry {
    std::vector<double> layer_radii;  // strictly increasing, positive
    double sigma_phi = 0.0;           // azimuthal smearing std-dev [rad]

    std::size_t n_layers() const { return layer_radii.size(); }

    void validate() const {
        if (layer_radii.empty()) throw ContractViolation("geometry needs at least one layer");
        double prev = 0.0;
        for (double r : layer_radii) {
            if (!(r > prev) || !std::isfinite(r))
                throw ContractViolation("layer radii must be positive and strictly increasing");
            prev = r;
        }
        if (!(sigma_phi >= 0.0) || !std::isfinite(sigma_phi))
            throw ContractViolation("sigma_phi must be >= 0");
    }

    friend bool operator==(const DetectorGeometry&, const DetectorGeometry&) = default;
};

struct Hit {
    std::uint32_t id = 0;
    std::uint32_t layer = 0;
    double x = 0.0;
    double y = 0.0;

    double radius() const { return std::hypot(x, y); }
    double phi() const { return std::atan2(y, x); }

    friend bool operator==(const Hit&, const Hit&) = default;
};

struct TruthTrack {
    std::uint32_t track_id = 0;
    std::vector<std::uint32_t> hit_ids;  // ordered by increasing layer; may be empty

    friend bool operator==(const TruthTrack&, const TruthTrack&) = default;
};

struct EventTruth {
    std::vector<TruthTrack> tracks;
    std::vector<std::uint32_t> noise_hit_ids;

    friend bool operator==(const EventTruth&, const EventTruth&) = default;
};

struct Event {
    DetectorGeometry geometry;
    std::vector<Hit> hits;
    std::optional<EventTruth> truth;

    friend bool operator==(const Event&, const Event&) = default;

    //! Checks every structural invariant; throws ContractViolation on the
    //! first violation found.
    void validate() const {
        geometry.validate();
        std::set<std::uint32_t> ids;
        for (const auto& h : hits) {
            if (!ids.insert(h.id).second)
                throw ContractViolation("duplicate hit id " + std::to_string(h.id));
            if (h.layer >= geometry.n_layers())
                throw ContractViolation("hit " + std::to_string(h.id) + " references layer " +
                                        std::to_string(h.layer) + " outside the geometry");
            const double r = geometry.layer_radii[h.layer];
            if (std::abs(h.radius() - r) > 1e-6 * r)
                throw ContractViolation("hit " + std::to_string(h.id) +
                                        " does not lie on its layer circle");
        }
        if (truth) validate_truth(*truth, ids);
    }

  private:
    void validate_truth(const EventTruth& t, const std::set<std::uint32_t>& ids) const {
        std::set<std::uint32_t> assigned;
        auto assign = [&](std::uint32_t id, const char* what) {
            if (!ids.count(id))
                throw ContractViolation(std::string(what) + " references unknown hit id " +
                                        std::to_string(id));
            if (!assigned.insert(id).second)
                throw ContractViolation("hit id " + std::to_string(id) +
                                        " assigned twice in truth");
        };
        std::set<std::uint32_t> track_ids;
        for (const auto& track : t.tracks) {
            if (!track_ids.insert(track.track_id).second)
                throw ContractViolation("duplicate truth track id " +
                                        std::to_string(track.track_id));
            std::int64_t prev_layer = -1;
            for (auto id : track.hit_ids) {
                assign(id, "truth track");
                const auto& h = hit_by_id(id);
                if (static_cast<std::int64_t>(h.layer) <= prev_layer)
                    throw ContractViolation("truth track " + std::to_string(track.track_id) +
                                            " is not ordered by increasing layer");
                prev_layer = h.layer;
            }
        }
        for (auto id : t.noise_hit_ids) assign(id, "noise list");
        if (assigned.size() != hits.size())
            throw ContractViolation("truth does not partition the hits: " +
                                    std::to_string(assigned.size()) + " assigned of " +
                                    std::to_string(hits.size()));
    }

  public:
    const Hit& hit_by_id(std::uint32_t id) const {
        for (const auto& h : hits)
            if (h.id == id) return h;
        throw ContractViolation("unknown hit id " + std::to_string(id));
    }
};

}  // namespace qtrack
