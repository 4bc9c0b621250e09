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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include "qtrack/denby_peterson.hpp"
#include "qtrack/event_gen.hpp"
#include "qtrack/metrics.hpp"
#include "qtrack/rng.hpp"

using namespace qtrack;

namespace {

SegmentSet make_set(std::vector<Segment> segments) {
    SegmentSet set;
    set.cuts.max_kink_angle = std::numbers::pi;
    set.cuts.max_neurons = 100000;
    set.segments = std::move(segments);
    for (std::uint32_t i = 0; i < set.segments.size(); ++i) {
        set.segments[i].id = i;
        set.outgoing[set.segments[i].from_hit].push_back(i);
        set.incoming[set.segments[i].to_hit].push_back(i);
    }
    return set;
}

//! Two unit segments chained through hit 1, second one rotated by `angle`.
SegmentSet chained_pair(double angle) {
    return make_set({{0, 0, 1, 1.0, 1.0, 0.0}, {0, 1, 2, 1.0, std::cos(angle), std::sin(angle)}});
}

EventGenConfig fixture_config(std::uint32_t tracks, std::uint32_t noise, bool smear,
                              std::uint64_t seed) {
    EventGenConfig config;
    config.n_tracks = tracks;
    config.curvature_min = -0.1;
    config.curvature_max = 0.1;
    config.noise_hit_count = noise;
    config.smear = smear;
    config.seed = seed;
    return config;
}

std::vector<double> dense_couplings(const NeuronNetwork& net) {
    const std::size_t n = net.size();
    std::vector<double> t(n * n, 0.0);
    for (const auto& c : net.couplings()) {
        t[c.i * n + c.j] = c.value;
        t[c.j * n + c.i] = c.value;
    }
    return t;
}

}  // namespace

TEST_CASE("cost couplings follow the smoothness weight", "[denby_peterson]") {
    SECTION("collinear unit pair at m=5 scores one half") {
        const auto set = chained_pair(0.0);
        const auto cost = build_cost(set, 5);
        REQUIRE(cost.size() == 1);
        CHECK(cost[0].i == 0);
        CHECK(cost[0].j == 1);
        CHECK(cost[0].value == 0.5);
    }
    SECTION("a right-angle pair contributes nothing at even m") {
        // exact unit directions so the dot product is exactly zero
        const auto set = make_set({{0, 0, 1, 1.0, 1.0, 0.0}, {0, 1, 2, 1.0, 0.0, 1.0}});
        const auto net = build_network(set, DPParams{4, 0.0, 0.0});
        CHECK(net.coupling(0, 1) == 0.0);
        CHECK(net.couplings().empty());
    }
    SECTION("pairs that do not share a hit get no cost term") {
        const auto set =
            make_set({{0, 0, 1, 1.0, 1.0, 0.0}, {0, 5, 6, 1.0, 1.0, 0.0}});
        CHECK(build_cost(set, 5).empty());
    }
    SECTION("pairs beyond the kink cut are not rewarded") {
        auto set = chained_pair(0.5);
        set.cuts.max_kink_angle = 0.4;
        CHECK(build_cost(set, 5).empty());
    }
}

TEST_CASE("constraint couplings penalize bifurcations and everything weakly", "[denby_peterson]") {
    // two segments out of hit 0, plus one disjoint segment
    const auto set = make_set({{0, 0, 1, 1.0, 1.0, 0.0},
                               {0, 0, 2, 1.0, 0.8, 0.6},
                               {0, 7, 8, 1.0, 1.0, 0.0}});
    DPParams params;
    params.alpha = 1.5;
    params.beta = 0.2;
    const auto net = NeuronNetwork(set.size(), build_constraints(set, params));

    CHECK(net.coupling(0, 1) == -1.5 / 2.0 - 0.2 / 2.0);  // shared tail
    CHECK(net.coupling(0, 2) == -0.2 / 2.0);               // disjoint, global only
    CHECK(net.coupling(1, 2) == -0.2 / 2.0);

    SECTION("shared head is penalized the same way") {
        const auto heads = make_set({{0, 0, 2, 1.0, 1.0, 0.0}, {0, 1, 2, 1.0, 0.8, 0.6}});
        const auto hnet = NeuronNetwork(heads.size(), build_constraints(heads, params));
        CHECK(hnet.coupling(0, 1) == -1.5 / 2.0 - 0.2 / 2.0);
    }
    SECTION("no self-coupling ever appears") {
        for (const auto& c : net.couplings()) CHECK(c.i != c.j);
    }
}

TEST_CASE("network energy counts active pairs once with a leading minus", "[denby_peterson]") {
    const auto set = chained_pair(0.0);
    const auto net = build_network(set, DPParams{5, 0.0, 0.0});

    CHECK(network_energy(net, ActivationState{{0.0, 0.0}}) == 0.0);
    CHECK(network_energy(net, ActivationState{{1.0, 0.0}}) == 0.0);
    CHECK(network_energy(net, ActivationState{{0.0, 1.0}}) == 0.0);
    CHECK(network_energy(net, ActivationState{{1.0, 1.0}}) == -0.5);
    CHECK_THROWS_AS(network_energy(net, ActivationState{{1.0}}), ContractViolation);
}

TEST_CASE("mean-field relaxation honors its fixed points and limits", "[denby_peterson]") {
    SECTION("an isolated neuron stays at one half") {
        const NeuronNetwork net(1, {});
        const auto state =
            mean_field_anneal(net, MeanFieldSchedule{{2.0, 1.0, 0.1, 0.001}, 50, 0.0}, 3);
        CHECK(state.activations[0] == 0.5);
    }
    SECTION("positive input saturates toward one as T -> 0") {
        const auto set = chained_pair(0.0);
        const auto net = build_network(set, DPParams{5, 0.0, 0.0});
        const auto state =
            mean_field_anneal(net, MeanFieldSchedule{geometric_ladder(1.0, 1e-4, 30), 100, 1e-9}, 1);
        CHECK(state.activations[0] > 0.999);
        CHECK(state.activations[1] > 0.999);
    }
    SECTION("an empty schedule is a contract violation") {
        const NeuronNetwork net(1, {});
        CHECK_THROWS_AS(mean_field_anneal(net, MeanFieldSchedule{{}, 10, 1e-6}, 0),
                        ContractViolation);
    }
}

TEST_CASE("the frozen noiseless fixture reconstructs exactly", "[denby_peterson]") {
    const DetectorGeometry geometry{{1, 2, 3, 4, 5}, 0.01};
    const Event event = generate_event(fixture_config(3, 0, false, 1), geometry);
    const auto set = build_segments(event, default_segment_cuts());
    const auto net = build_network(set, default_dp_params());
    const auto state = mean_field_anneal(net, default_dp_schedule(), 0);

    std::set<std::pair<std::uint32_t, std::uint32_t>> truth_pairs;
    for (const auto& t : event.truth->tracks)
        for (std::size_t k = 0; k + 1 < t.hit_ids.size(); ++k)
            truth_pairs.insert({t.hit_ids[k], t.hit_ids[k + 1]});
    REQUIRE(truth_pairs.size() == 12);

    std::set<std::pair<std::uint32_t, std::uint32_t>> on_pairs;
    for (std::uint32_t i = 0; i < set.size(); ++i)
        if (state.on(i)) on_pairs.insert({set.segments[i].from_hit, set.segments[i].to_hit});
    CHECK(on_pairs == truth_pairs);

    const auto score = score_segments(set, state, event);
    REQUIRE(score.efficiency.has_value());
    REQUIRE(score.purity.has_value());
    CHECK(*score.efficiency == 1.0);
    CHECK(*score.purity == 1.0);
}

TEST_CASE("hard-threshold descent never raises the network energy", "[denby_peterson]") {
    Rng rng(derive_seed(5, "hopfield"));
    for (int trial = 0; trial < 5; ++trial) {
        const Event event = generate_event(
            fixture_config(2 + rng.uniform_index(3), rng.uniform_index(4), true, 100 + trial),
            DetectorGeometry{{1, 2, 3, 4}, 0.01});
        const auto set = build_segments(event, default_segment_cuts());
        const auto net = build_network(set, default_dp_params());
        const std::size_t n = net.size();
        if (n == 0) continue;
        const auto t = dense_couplings(net);

        ActivationState state;
        state.activations.resize(n);
        for (auto& a : state.activations) a = rng.uniform_index(2) ? 1.0 : 0.0;
        double energy = network_energy(net, state);

        for (int sweep = 0; sweep < 8; ++sweep) {
            for (std::uint32_t step = 0; step < n; ++step) {
                const auto i = static_cast<std::uint32_t>(rng.uniform_index(n));
                double field = 0.0;
                for (std::uint32_t j = 0; j < n; ++j) field += t[i * n + j] * state.activations[j];
                state.activations[i] = field > 0.0 ? 1.0 : 0.0;
                const double next = network_energy(net, state);
                CHECK(next <= energy + 1e-12);
                energy = next;
            }
        }
    }
}

TEST_CASE("cost couplings are rotation invariant and scale as 1/length", "[denby_peterson]") {
    const Event event = generate_event(fixture_config(3, 2, true, 51),
                                       DetectorGeometry{{1, 2, 3, 4, 5}, 0.01});
    const auto base_set = build_segments(event, default_segment_cuts());
    const auto base = NeuronNetwork(base_set.size(), build_cost(base_set, 5));

    SECTION("global rotation") {
        Rng rng(derive_seed(6, "rot"));
        Event turned = event;
        const double angle = rng.uniform(0.0, 2 * std::numbers::pi);
        const double c = std::cos(angle), s = std::sin(angle);
        for (auto& h : turned.hits) {
            const double x = h.x, y = h.y;
            h.x = c * x - s * y;
            h.y = s * x + c * y;
        }
        const auto turned_set = build_segments(turned, default_segment_cuts());
        const auto net = NeuronNetwork(turned_set.size(), build_cost(turned_set, 5));
        REQUIRE(net.size() == base.size());
        for (const auto& e : base.couplings())
            CHECK(net.coupling(e.i, e.j) == Catch::Approx(e.value).margin(1e-9));
    }

    SECTION("doubling all coordinates halves every cost coupling") {
        Event scaled = event;
        scaled.geometry.layer_radii = {2, 4, 6, 8, 10};
        for (auto& h : scaled.hits) {
            h.x *= 2.0;
            h.y *= 2.0;
        }
        SegmentCuts cuts = default_segment_cuts();
        cuts.max_segment_length *= 2.0;
        const auto scaled_set = build_segments(scaled, cuts);
        const auto net = NeuronNetwork(scaled_set.size(), build_cost(scaled_set, 5));
        REQUIRE(net.size() == base.size());
        for (const auto& e : base.couplings())
            CHECK(net.coupling(e.i, e.j) == Catch::Approx(e.value / 2.0).epsilon(1e-12));
    }

    SECTION("scaling leaves the cost-only argmin pattern unchanged") {
        const Event small = generate_event(fixture_config(2, 0, false, 9),
                                           DetectorGeometry{{1, 2, 3}, 0.0});
        const auto set1 = build_segments(small, default_segment_cuts());
        REQUIRE(set1.size() <= 12);

        Event scaled = small;
        scaled.geometry.layer_radii = {2, 4, 6};
        for (auto& h : scaled.hits) {
            h.x *= 2.0;
            h.y *= 2.0;
        }
        SegmentCuts cuts = default_segment_cuts();
        cuts.max_segment_length *= 2.0;
        const auto set2 = build_segments(scaled, cuts);
        const auto net1 = NeuronNetwork(set1.size(), build_cost(set1, 5));
        const auto net2 = NeuronNetwork(set2.size(), build_cost(set2, 5));
        REQUIRE(net1.size() == net2.size());

        auto argmin_patterns = [](const NeuronNetwork& net) {
            std::set<std::uint32_t> best;
            double best_energy = std::numeric_limits<double>::infinity();
            for (std::uint32_t mask = 0; mask < (1u << net.size()); ++mask) {
                ActivationState state;
                state.activations.resize(net.size());
                for (std::size_t i = 0; i < net.size(); ++i)
                    state.activations[i] = (mask >> i) & 1u ? 1.0 : 0.0;
                const double e = network_energy(net, state);
                if (e < best_energy - 1e-12) {
                    best_energy = e;
                    best = {mask};
                } else if (std::abs(e - best_energy) <= 1e-12) {
                    best.insert(mask);
                }
            }
            return best;
        };
        CHECK(argmin_patterns(net1) == argmin_patterns(net2));
    }
}

TEST_CASE("network_to_qubo negates the couplings over the on/off snapshot", "[denby_peterson]") {
    const auto set = chained_pair(0.0);
    const auto net = build_network(set, DPParams{5, 1.0, 0.5});
    const auto q = network_to_qubo(net);
    REQUIRE(q.size() == 2);
    CHECK(q.offset() == 0.0);
    for (std::uint32_t mask = 0; mask < 4; ++mask) {
        ActivationState act;
        BinaryState y;
        for (std::size_t i = 0; i < 2; ++i) {
            act.activations.push_back((mask >> i) & 1u ? 1.0 : 0.0);
            y.y.push_back((mask >> i) & 1u);
        }
        CHECK(qubo_energy(q, y) == network_energy(net, act));
    }
}

TEST_CASE("track extraction follows chains and splits at branches", "[denby_peterson]") {
    SECTION("five chained segments give one six-hit candidate") {
        const auto set = make_set({{0, 0, 1, 1, 1, 0},
                                   {0, 1, 2, 1, 1, 0},
                                   {0, 2, 3, 1, 1, 0},
                                   {0, 3, 4, 1, 1, 0},
                                   {0, 4, 5, 1, 1, 0}});
        const auto candidates =
            extract_tracks(ActivationState{{1, 1, 1, 1, 1}}, set);
        REQUIRE(candidates.size() == 1);
        CHECK(candidates[0] == std::vector<std::uint32_t>{0, 1, 2, 3, 4, 5});
    }
    SECTION("all neurons off gives no candidates") {
        const auto set = make_set({{0, 0, 1, 1, 1, 0}, {0, 1, 2, 1, 1, 0}});
        CHECK(extract_tracks(ActivationState{{0.0, 0.0}}, set).empty());
    }
    SECTION("an outgoing Y-branch splits into two candidates sharing the stem") {
        const auto set = make_set({{0, 0, 1, 1, 1, 0},
                                   {0, 1, 2, 1, 1, 0},
                                   {0, 1, 3, 1, 0.8, 0.6}});
        const auto candidates = extract_tracks(ActivationState{{1, 1, 1}}, set);
        REQUIRE(candidates.size() == 2);
        CHECK(candidates[0] == std::vector<std::uint32_t>{0, 1, 2});
        CHECK(candidates[1] == std::vector<std::uint32_t>{0, 1, 3});
    }
    SECTION("an incoming Y-branch splits the same way") {
        const auto set = make_set({{0, 0, 2, 1, 1, 0},
                                   {0, 1, 2, 1, 0.8, 0.6},
                                   {0, 2, 3, 1, 1, 0}});
        const auto candidates = extract_tracks(ActivationState{{1, 1, 1}}, set);
        REQUIRE(candidates.size() == 2);
        CHECK(candidates[0] == std::vector<std::uint32_t>{0, 2, 3});
        CHECK(candidates[1] == std::vector<std::uint32_t>{1, 2, 3});
    }
    SECTION("single on-segments are too short to be candidates") {
        const auto set = make_set({{0, 0, 1, 1, 1, 0}, {0, 5, 6, 1, 1, 0}});
        CHECK(extract_tracks(ActivationState{{1.0, 1.0}}, set).empty());
    }
}
