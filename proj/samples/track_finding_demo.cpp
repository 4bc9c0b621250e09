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

// Minimal library walkthrough: synthesize an event, relax the segment
// network, and score the reconstruction against the generator truth.

#include <cstdio>

#include "qtrack/qtrack.hpp"

int main() {
    using namespace qtrack;

    DetectorGeometry geometry{{1, 2, 3, 4, 5, 6}, 0.01};
    EventGenConfig config;
    config.n_tracks = 5;
    config.noise_hit_count = 6;
    config.seed = 2;

    const Event event = generate_event(config, geometry);
    std::printf("event: %zu hits on %zu layers\n", event.hits.size(), geometry.n_layers());

    const SegmentSet segments = build_segments(event, default_segment_cuts());
    const NeuronNetwork network = build_network(segments, default_dp_params());
    std::printf("network: %zu segment neurons, %zu couplings\n", network.size(),
                network.couplings().size());

    const ActivationState state = mean_field_anneal(network, default_dp_schedule(), 0);
    const SegmentScore score = score_segments(segments, state, event);
    std::printf("segment efficiency %.3f, purity %.3f (%zu/%zu/%zu true/found/matched)\n",
                score.efficiency.value_or(0.0), score.purity.value_or(0.0), score.n_true,
                score.n_found, score.n_matched);

    for (const auto& candidate : extract_tracks(state, segments)) {
        std::printf("track candidate:");
        for (const auto hit : candidate) std::printf(" %u", hit);
        std::printf("\n");
    }
    return 0;
}
