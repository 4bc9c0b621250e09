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

#include <cstdint>
#include <vector>

#include "qtrack/ising.hpp"

namespace qtrack::detail {

//! CSR view of a symmetric sparse coupling list (upper-triangular input,
//! both directions materialized).
struct Adjacency {
    std::vector<std::size_t> offsets;   // size n+1
    std::vector<std::uint32_t> neighbor;
    std::vector<double> weight;

    std::size_t size() const { return offsets.empty() ? 0 : offsets.size() - 1; }
};

inline Adjacency build_adjacency(std::size_t n, const std::vector<Coupling>& upper) {
    Adjacency adj;
    adj.offsets.assign(n + 1, 0);
    for (const auto& c : upper) {
        ++adj.offsets[c.i + 1];
        ++adj.offsets[c.j + 1];
    }
    for (std::size_t i = 0; i < n; ++i) adj.offsets[i + 1] += adj.offsets[i];
    adj.neighbor.resize(adj.offsets[n]);
    adj.weight.resize(adj.offsets[n]);
    std::vector<std::size_t> cursor(adj.offsets.begin(), adj.offsets.end() - 1);
    for (const auto& c : upper) {
        adj.neighbor[cursor[c.i]] = c.j;
        adj.weight[cursor[c.i]++] = c.value;
        adj.neighbor[cursor[c.j]] = c.i;
        adj.weight[cursor[c.j]++] = c.value;
    }
    return adj;
}

//! h_i + sum_j A_ij s_j for the current spin configuration.
inline double local_field(const Adjacency& adj, const std::vector<double>& fields,
                          const std::vector<std::int8_t>& s, std::uint32_t i) {
    double f = fields.empty() ? 0.0 : fields[i];
    for (std::size_t k = adj.offsets[i]; k < adj.offsets[i + 1]; ++k)
        f += adj.weight[k] * s[adj.neighbor[k]];
    return f;
}

}  // namespace qtrack::detail
