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
#include <set>

#include "qtrack/event_gen.hpp"
#include "qtrack/event_io.hpp"

using namespace qtrack;

namespace {

DetectorGeometry six_layers(double sigma = 0.0) {
    return DetectorGeometry{{1.0, 2.0, 3.0, 4.0, 5.0, 6.0}, sigma};
}

}  // namespace

TEST_CASE("geometry validation rejects bad layer stacks", "[event_gen]") {
    CHECK_THROWS_AS((DetectorGeometry{{}, 0.0}.validate()), ContractViolation);
    CHECK_THROWS_AS((DetectorGeometry{{1.0, 1.0}, 0.0}.validate()), ContractViolation);
    CHECK_THROWS_AS((DetectorGeometry{{2.0, 1.0}, 0.0}.validate()), ContractViolation);
    CHECK_THROWS_AS((DetectorGeometry{{-1.0, 1.0}, 0.0}.validate()), ContractViolation);
    CHECK_THROWS_AS((DetectorGeometry{{1.0, 2.0}, -0.5}.validate()), ContractViolation);
    CHECK_NOTHROW(six_layers().validate());
}

TEST_CASE("an empty configuration yields an empty event", "[event_gen]") {
    EventGenConfig config;
    config.n_tracks = 0;
    config.noise_hit_count = 0;
    const Event event = generate_event(config, six_layers());
    CHECK(event.hits.empty());
    REQUIRE(event.truth.has_value());
    CHECK(event.truth->tracks.empty());
    CHECK(event.truth->noise_hit_ids.empty());
}

TEST_CASE("a straight ray leaves collinear hits through the origin", "[event_gen]") {
    EventGenConfig config;
    config.n_tracks = 1;
    config.curvature_min = config.curvature_max = 0.0;
    config.smear = false;
    config.seed = 4;
    const Event event = generate_event(config, six_layers());
    REQUIRE(event.hits.size() == 6);
    for (const auto& h : event.hits) {
        // cross product with the first hit direction vanishes for collinear rays
        CHECK(std::abs(h.x * event.hits[0].y - h.y * event.hits[0].x) < 1e-12);
        CHECK(h.x * event.hits[0].x + h.y * event.hits[0].y > 0.0);
    }
}

TEST_CASE("five tracks over six layers give exactly thirty partitioned hits", "[event_gen]") {
    EventGenConfig config;
    config.n_tracks = 5;
    config.curvature_min = -0.1;
    config.curvature_max = 0.1;  // |rho * kappa| <= 0.6, every layer crossed
    config.noise_hit_count = 0;
    config.smear = false;
    config.seed = 11;
    const Event event = generate_event(config, six_layers());
    CHECK(event.hits.size() == 30);
    REQUIRE(event.truth.has_value());
    REQUIRE(event.truth->tracks.size() == 5);
    std::set<std::uint32_t> covered;
    for (const auto& t : event.truth->tracks) {
        CHECK(t.hit_ids.size() == 6);
        covered.insert(t.hit_ids.begin(), t.hit_ids.end());
    }
    CHECK(covered.size() == 30);
}

TEST_CASE("hits stay on their layer circles, smeared or not", "[event_gen]") {
    EventGenConfig config;
    config.n_tracks = 4;
    config.noise_hit_count = 5;
    config.smear = true;
    config.seed = 9;
    const auto geometry = six_layers(0.01);
    const Event event = generate_event(config, geometry);
    for (const auto& h : event.hits) {
        const double r = geometry.layer_radii[h.layer];
        CHECK(std::abs(h.radius() - r) <= 1e-9 * r);
    }

    // same seed without smearing: track hits keep their layer structure
    // (noise hits draw from a shifted stream and may move)
    config.smear = false;
    const Event crisp = generate_event(config, geometry);
    REQUIRE(crisp.hits.size() == event.hits.size());
    REQUIRE(crisp.truth->tracks.size() == event.truth->tracks.size());
    for (std::size_t t = 0; t < crisp.truth->tracks.size(); ++t)
        CHECK(crisp.truth->tracks[t].hit_ids == event.truth->tracks[t].hit_ids);
}

TEST_CASE("over-curved tracks stop at their turning diameter", "[event_gen]") {
    EventGenConfig config;
    config.n_tracks = 1;
    // diameter 2/kappa = 3.5: layers 1..3 reachable, 4..6 not
    config.curvature_min = config.curvature_max = 2.0 / 3.5;
    config.smear = false;
    const Event event = generate_event(config, six_layers());
    CHECK(event.hits.size() == 3);
    REQUIRE(event.truth->tracks.size() == 1);
    CHECK(event.truth->tracks[0].hit_ids.size() == 3);

    // curvature so large no layer is reached: empty truth entry, no error
    config.curvature_min = config.curvature_max = 3.0;
    const Event none = generate_event(config, six_layers());
    CHECK(none.hits.empty());
    REQUIRE(none.truth->tracks.size() == 1);
    CHECK(none.truth->tracks[0].hit_ids.empty());
}

TEST_CASE("generation is deterministic per seed, byte for byte", "[event_gen]") {
    EventGenConfig config;
    config.n_tracks = 3;
    config.noise_hit_count = 4;
    config.seed = 1234;
    const auto geometry = six_layers(0.02);
    const std::string a = save_event(generate_event(config, geometry));
    const std::string b = save_event(generate_event(config, geometry));
    CHECK(a == b);

    config.seed = 1235;
    CHECK(save_event(generate_event(config, geometry)) != a);
}

TEST_CASE("events round-trip through the JSON format", "[event_gen]") {
    SECTION("empty event") {
        EventGenConfig config;
        config.n_tracks = 0;
        const Event event = generate_event(config, six_layers());
        CHECK(load_event(save_event(event)) == event);
    }
    SECTION("30-hit event with noise and smearing") {
        EventGenConfig config;
        config.n_tracks = 5;
        config.noise_hit_count = 6;
        config.seed = 77;
        const Event event = generate_event(config, six_layers(0.01));
        CHECK(load_event(save_event(event)) == event);
    }
    SECTION("absent truth stays absent") {
        EventGenConfig config;
        config.n_tracks = 1;
        config.smear = false;
        Event event = generate_event(config, six_layers());
        event.truth.reset();
        const Event back = load_event(save_event(event));
        CHECK_FALSE(back.truth.has_value());
        CHECK(back == event);
    }
}

TEST_CASE("malformed event documents raise parse errors", "[event_gen]") {
    EventGenConfig config;
    config.n_tracks = 1;
    config.smear = false;
    config.seed = 3;
    const Event event = generate_event(config, six_layers());
    const std::string text = save_event(event);

    SECTION("duplicate hit id") {
        nlohmann::json j = nlohmann::json::parse(text);
        j["hits"][1]["id"] = j["hits"][0]["id"];
        try {
            (void)load_event(j.dump());
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("duplicate hit id"));
        }
    }
    SECTION("hit off its layer circle") {
        nlohmann::json j = nlohmann::json::parse(text);
        j["hits"][0]["x"] = 40.0;
        CHECK_THROWS_AS(load_event(j.dump()), ParseError);
    }
    SECTION("truth not a partition") {
        nlohmann::json j = nlohmann::json::parse(text);
        j["truth"]["tracks"][0]["hit_ids"].erase(0);
        CHECK_THROWS_AS(load_event(j.dump()), ParseError);
    }
    SECTION("not JSON at all") {
        CHECK_THROWS_AS(load_event("ising 3"), ParseError);
    }
    SECTION("missing field") {
        nlohmann::json j = nlohmann::json::parse(text);
        j["hits"][0].erase("layer");
        CHECK_THROWS_AS(load_event(j.dump()), ParseError);
    }
}
