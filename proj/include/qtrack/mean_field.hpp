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

// Deterministic-annealing core shared by the segment-network relaxation and
// the `meanfield` solver backend: minimizes a quadratic binary objective
//   E(y) = sum_{i<j} W_ij y_i y_j + sum_i c_i y_i
// over the continuous relaxation y in [0,1]^n by sequential logistic updates
//   y_i <- sigma(-(c_i + sum_j W_ij y_j) / T)
// along a decreasing temperature ladder.

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "qtrack/detail/adjacency.hpp"
#include "qtrack/errors.hpp"
#include "qtrack/ising.hpp"
#include "qtrack/rng.hpp"

namespace qtrack {

struct MeanFieldSchedule {
    std::vector<double> temperatures;            // strictly decreasing, positive
    std::uint32_t max_sweeps_per_temperature = 200;
    double tolerance = 1e-6;                     // sweep converged when max |delta| below

    void validate() const {
        if (temperatures.empty())
            throw ContractViolation("mean-field schedule must contain at least one temperature");
        double prev = std::numeric_limits<double>::infinity();
        for (double t : temperatures) {
            if (!(t > 0.0) || !(t < prev))
                throw ContractViolation("temperatures must be positive and strictly decreasing");
            prev = t;
        }
        if (max_sweeps_per_temperature < 1)
            throw ContractViolation("max_sweeps_per_temperature must be >= 1");
        if (!(tolerance >= 0.0)) throw ContractViolation("tolerance must be >= 0");
    }
};

//! Geometric ladder from `hi` down to `lo` in `steps` values.
inline std::vector<double> geometric_ladder(double hi, double lo, std::uint32_t steps) {
    if (!(hi > 0.0) || !(lo > 0.0) || !(hi > lo) || steps < 1)
        throw ContractViolation("geometric ladder requires hi > lo > 0 and steps >= 1");
    std::vector<double> out(steps);
    if (steps == 1) {
        out[0] = hi;
        return out;
    }
    const double ratio = std::pow(lo / hi, 1.0 / (steps - 1));
    double t = hi;
    for (std::uint32_t k = 0; k < steps; ++k) {
        out[k] = t;
        t *= ratio;
    }
    out.back() = lo;
    return out;
}

//! Linear ladder from `hi` down to `lo` in `steps` values.
inline std::vector<double> linear_ladder(double hi, double lo, std::uint32_t steps) {
    if (!(hi > lo) || steps < 1)
        throw ContractViolation("linear ladder requires hi > lo and steps >= 1");
    std::vector<double> out(steps);
    if (steps == 1) {
        out[0] = hi;
        return out;
    }
    for (std::uint32_t k = 0; k < steps; ++k)
        out[k] = hi + (lo - hi) * static_cast<double>(k) / (steps - 1);
    out.back() = lo;
    return out;
}

struct MeanFieldRun {
    std::vector<double> activations;                        // final continuous state
    std::vector<std::pair<double, double>> ladder_energies; // (temperature, objective)
    std::uint64_t total_sweeps = 0;
};

namespace detail {

inline double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

//! Objective sum_{i<j} W y y + sum c y over the relaxed activations.
inline double relaxed_objective(const std::vector<Coupling>& upper,
                                const std::vector<double>& bias,
                                const std::vector<double>& act) {
    double e = 0.0;
    for (const auto& c : upper) e += c.value * act[c.i] * act[c.j];
    for (std::size_t i = 0; i < bias.size(); ++i) e += bias[i] * act[i];
    return e;
}

inline MeanFieldRun mean_field_minimize(std::size_t n, const std::vector<Coupling>& upper,
                                        const std::vector<double>& bias,
                                        const MeanFieldSchedule& schedule,
                                        std::uint64_t seed) {
    schedule.validate();
    if (bias.size() != n) throw ContractViolation("bias length != n");

    const Adjacency adj = build_adjacency(n, upper);
    MeanFieldRun run;
    run.activations.assign(n, 0.5);
    Rng rng(seed);

    for (double temp : schedule.temperatures) {
        for (std::uint32_t sweep = 0; sweep < schedule.max_sweeps_per_temperature; ++sweep) {
            const auto order = rng.permutation(static_cast<std::uint32_t>(n));
            double max_delta = 0.0;
            for (const auto i : order) {
                double field = bias[i];
                for (std::size_t k = adj.offsets[i]; k < adj.offsets[i + 1]; ++k)
                    field += adj.weight[k] * run.activations[adj.neighbor[k]];
                const double next = logistic(-field / temp);
                max_delta = std::max(max_delta, std::abs(next - run.activations[i]));
                run.activations[i] = next;
            }
            ++run.total_sweeps;
            if (max_delta < schedule.tolerance) break;
        }
        run.ladder_energies.emplace_back(temp, relaxed_objective(upper, bias, run.activations));
    }
    return run;
}

}  // namespace detail

}  // namespace qtrack
