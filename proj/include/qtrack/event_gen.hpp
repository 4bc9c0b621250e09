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

// Synthetic event generator. Tracks are circular arcs emanating from the
// primary vertex at the origin: an arc with signed curvature kappa through
// the origin with initial azimuth phi0 crosses the circle of radius rho
// (outbound branch) at azimuth
//     phi(rho) = phi0 + asin(rho * kappa / 2),   |rho * kappa| <= 2,
// which degenerates to a straight ray for kappa = 0. Layers beyond the arc's
// turning diameter 2/|kappa| are never reached. Smearing perturbs only the
// azimuth; the radius is a detector constant.

#include <cmath>
#include <cstdint>
#include <numbers>

#include "qtrack/errors.hpp"
#include "qtrack/event.hpp"
#include "qtrack/rng.hpp"

namespace qtrack {

struct EventGenConfig {
    std::uint32_t n_tracks = 5;
    double curvature_min = -0.1;  // signed inverse length; 0 = straight ray
    double curvature_max = 0.1;
    double phi_min = 0.0;  // uniform azimuth window for track directions
    double phi_max = 2.0 * std::numbers::pi;
    std::uint32_t noise_hit_count = 0;
    bool smear = true;
    std::uint64_t seed = 0;

    void validate() const {
        if (!(curvature_min <= curvature_max) || !std::isfinite(curvature_min) ||
            !std::isfinite(curvature_max))
            throw ContractViolation("curvature range is invalid");
        if (!(phi_min <= phi_max) || !std::isfinite(phi_min) || !std::isfinite(phi_max))
            throw ContractViolation("azimuth range is invalid");
    }
};

inline Event generate_event(const EventGenConfig& config, const DetectorGeometry& geometry) {
    config.validate();
    geometry.validate();

    Event event;
    event.geometry = geometry;
    event.truth = EventTruth{};
    Rng rng(config.seed);
    std::uint32_t next_id = 0;

    for (std::uint32_t t = 0; t < config.n_tracks; ++t) {
        const double phi0 = rng.uniform(config.phi_min, config.phi_max);
        const double kappa = rng.uniform(config.curvature_min, config.curvature_max);
        TruthTrack track;
        track.track_id = t;
        for (std::uint32_t layer = 0; layer < geometry.n_layers(); ++layer) {
            const double rho = geometry.layer_radii[layer];
            const double arg = rho * kappa / 2.0;
            if (std::abs(arg) > 1.0) break;  // arc turns back before this layer
            double phi = phi0 + std::asin(arg);
            if (config.smear) phi += rng.normal() * geometry.sigma_phi;
            event.hits.push_back({next_id, layer, rho * std::cos(phi), rho * std::sin(phi)});
            track.hit_ids.push_back(next_id);
            ++next_id;
        }
        event.truth->tracks.push_back(std::move(track));
    }

    for (std::uint32_t k = 0; k < config.noise_hit_count; ++k) {
        const auto layer = static_cast<std::uint32_t>(rng.uniform_index(geometry.n_layers()));
        const double rho = geometry.layer_radii[layer];
        const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
        event.hits.push_back({next_id, layer, rho * std::cos(phi), rho * std::sin(phi)});
        event.truth->noise_hit_ids.push_back(next_id);
        ++next_id;
    }

    event.validate();
    return event;
}

}  // namespace qtrack
