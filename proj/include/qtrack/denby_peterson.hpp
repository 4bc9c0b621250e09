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

// Segment-neuron coupling network and its relaxation.
//
// Each segment is a neuron with activation in [0,1]. Connected pairs (head of
// one = tail of the other) within the kink cut reward co-activation with
//   cos^m(theta) / (r1 + r2),
// pairs sharing a tail or a head are penalized by -alpha/2 (bifurcations),
// and every distinct pair carries a uniform -beta/2 global inhibition. The
// network energy is
//   E(act) = -1/2 sum_{a != b} T_ab act_a act_b = -sum_{a<b} T_ab act_a act_b,
// minimized by sequential logistic updates act_i <- sig(sum_j T_ij act_j / T)
// along a decreasing temperature ladder.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "qtrack/errors.hpp"
#include "qtrack/ising.hpp"
#include "qtrack/mean_field.hpp"
#include "qtrack/rng.hpp"
#include "qtrack/segment.hpp"

namespace qtrack {

struct DPParams {
    std::uint32_t cost_exponent = 5;  // m
    double alpha = 2.0;               // bifurcation penalty weight
    double beta = 0.02;               // global inhibition weight

    void validate() const {
        if (cost_exponent < 1) throw ContractViolation("cost exponent m must be >= 1");
        if (!(alpha >= 0.0) || !std::isfinite(alpha))
            throw ContractViolation("alpha must be finite and >= 0");
        if (!(beta >= 0.0) || !std::isfinite(beta))
            throw ContractViolation("beta must be finite and >= 0");
    }
};

//! Tuned against the bundled unit-spacing geometries; frozen as the shipped
//! preset together with default_segment_cuts() and default_dp_schedule().
inline DPParams default_dp_params() { return DPParams{5, 2.0, 0.02}; }

inline MeanFieldSchedule default_dp_schedule() {
    return MeanFieldSchedule{geometric_ladder(1.0, 0.01, 25), 200, 1e-7};
}

//! Symmetric pairwise couplings over the segment neurons; zero diagonal.
class NeuronNetwork {
  public:
    NeuronNetwork() = default;
    NeuronNetwork(std::size_t n, std::vector<Coupling> couplings)
        : n_(n), couplings_(detail::normalize_couplings(std::move(couplings), n,
                                                        /*allow_diagonal=*/false)) {}

    std::size_t size() const { return n_; }
    //! Upper-triangular entries (a < b), each meaning T_ab == T_ba.
    const std::vector<Coupling>& couplings() const { return couplings_; }
    double coupling(std::uint32_t a, std::uint32_t b) const {
        if (a > b) std::swap(a, b);
        const auto* e = detail::find_entry(couplings_, a, b);
        return e ? e->value : 0.0;
    }

  private:
    std::size_t n_ = 0;
    std::vector<Coupling> couplings_;
};

struct ActivationState {
    std::vector<double> activations;  // each in [0, 1]

    std::size_t size() const { return activations.size(); }
    bool on(std::uint32_t i) const { return activations[i] > 0.5; }

    void validate() const {
        for (double a : activations)
            if (!(a >= 0.0) || !(a <= 1.0))
                throw ContractViolation("activations must lie in [0, 1]");
    }
};

//! Smoothness reward for connected pairs within the kink cut:
//! T_cost[a,b] += cos^m(theta_ab) / (len_a + len_b) when a ends where b starts.
inline std::vector<Coupling> build_cost(const SegmentSet& set, std::uint32_t cost_exponent) {
    if (cost_exponent < 1) throw ContractViolation("cost exponent m must be >= 1");
    std::vector<Coupling> cost;
    for (const auto& [hit, outgoing] : set.outgoing) {
        const auto in_it = set.incoming.find(hit);
        if (in_it == set.incoming.end()) continue;
        for (const auto a : in_it->second) {
            for (const auto b : outgoing) {
                const auto& sa = set.segments[a];
                const auto& sb = set.segments[b];
                // cos(theta) is the direction dot product; taking it directly
                // keeps right angles at exactly zero weight
                const double cos_theta =
                    std::clamp(sa.dir_x * sb.dir_x + sa.dir_y * sb.dir_y, -1.0, 1.0);
                if (std::acos(cos_theta) > set.cuts.max_kink_angle) continue;
                const double w = std::pow(cos_theta, static_cast<int>(cost_exponent)) /
                                 (sa.length + sb.length);
                cost.push_back({std::min(a, b), std::max(a, b), w});
            }
        }
    }
    return cost;
}

//! Constraint couplings: -alpha/2 for pairs sharing a tail or a head,
//! -beta/2 between every distinct pair (global inhibition).
inline std::vector<Coupling> build_constraints(const SegmentSet& set, const DPParams& params) {
    params.validate();
    const auto n = static_cast<std::uint32_t>(set.size());
    std::vector<Coupling> constraints;

    if (params.alpha > 0.0) {
        auto penalize_group = [&](const std::vector<std::uint32_t>& group) {
            for (std::size_t x = 0; x < group.size(); ++x)
                for (std::size_t y = x + 1; y < group.size(); ++y)
                    constraints.push_back({std::min(group[x], group[y]),
                                           std::max(group[x], group[y]),
                                           -params.alpha / 2.0});
        };
        for (const auto& [hit, group] : set.outgoing) penalize_group(group);
        for (const auto& [hit, group] : set.incoming) penalize_group(group);
    }

    if (params.beta > 0.0) {
        constraints.reserve(constraints.size() + static_cast<std::size_t>(n) * (n - 1) / 2);
        for (std::uint32_t a = 0; a < n; ++a)
            for (std::uint32_t b = a + 1; b < n; ++b)
                constraints.push_back({a, b, -params.beta / 2.0});
    }
    return constraints;
}

//! Cost plus constraints, merged into one symmetric coupling map.
inline NeuronNetwork build_network(const SegmentSet& set, const DPParams& params) {
    std::vector<Coupling> entries = build_cost(set, params.cost_exponent);
    const std::vector<Coupling> constraints = build_constraints(set, params);
    entries.insert(entries.end(), constraints.begin(), constraints.end());
    return NeuronNetwork(set.size(), std::move(entries));
}

//! E = -1/2 sum_{a != b} T_ab act_a act_b; the all-off state has energy 0.
inline double network_energy(const NeuronNetwork& net, const ActivationState& state) {
    if (state.size() != net.size())
        throw ContractViolation("activation state length does not match network size");
    double e = 0.0;
    for (const auto& c : net.couplings()) e -= c.value * state.activations[c.i] * state.activations[c.j];
    return e;
}

//! Sequential logistic relaxation act_i <- sig(sum_j T_ij act_j / T) with a
//! fresh seeded sweep order per sweep, annealed down the temperature ladder.
inline ActivationState mean_field_anneal(const NeuronNetwork& net,
                                         const MeanFieldSchedule& schedule,
                                         std::uint64_t seed) {
    // The generic core minimizes sum W y y; the network maximizes sum T y y.
    std::vector<Coupling> negated = net.couplings();
    for (auto& c : negated) c.value = -c.value;
    const std::vector<double> bias(net.size(), 0.0);
    MeanFieldRun run = detail::mean_field_minimize(net.size(), negated, bias, schedule, seed);
    return ActivationState{std::move(run.activations)};
}

//! The network energy as a binary quadratic form over the on/off snapshot:
//! Q_ab = -T_ab for a < b, zero diagonal, zero offset.
inline QuboProblem network_to_qubo(const NeuronNetwork& net) {
    std::vector<Coupling> q = net.couplings();
    for (auto& c : q) c.value = -c.value;
    return QuboProblem(net.size(), std::move(q), 0.0);
}

//! Track candidates from the thresholded activation state: every maximal
//! chain of on-segments, forked at hits where the on-graph branches (each
//! branch keeps the shared stem). Candidates need at least two segments.
inline std::vector<std::vector<std::uint32_t>> extract_tracks(const ActivationState& state,
                                                              const SegmentSet& set) {
    if (state.size() != set.size())
        throw ContractViolation("activation state length does not match segment count");

    std::map<std::uint32_t, std::vector<std::uint32_t>> on_out, on_in;
    std::vector<std::uint32_t> on_segments;
    for (std::uint32_t i = 0; i < set.size(); ++i) {
        if (!state.on(i)) continue;
        on_segments.push_back(i);
        on_out[set.segments[i].from_hit].push_back(i);
        on_in[set.segments[i].to_hit].push_back(i);
    }

    std::vector<std::vector<std::uint32_t>> candidates;
    std::vector<std::uint32_t> path;

    auto emit = [&]() {
        if (path.size() < 2) return;
        std::vector<std::uint32_t> chain;
        chain.reserve(path.size() + 1);
        chain.push_back(set.segments[path.front()].from_hit);
        for (const auto seg : path) chain.push_back(set.segments[seg].to_hit);
        candidates.push_back(std::move(chain));
    };

    auto extend = [&](auto&& self, std::uint32_t seg) -> void {
        path.push_back(seg);
        const auto it = on_out.find(set.segments[seg].to_hit);
        if (it == on_out.end())
            emit();
        else
            for (const auto next : it->second) self(self, next);
        path.pop_back();
    };

    for (const auto seg : on_segments)
        if (!on_in.count(set.segments[seg].from_hit)) extend(extend, seg);
    return candidates;
}

}  // namespace qtrack
