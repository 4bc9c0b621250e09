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

// Chimera connectivity graph and deterministic clique-style minor embedding.
//
// An n x n grid of K_{4,4} cells. Qubit numbering is cell-major,
// partition-minor: qubit(r, c, u, k) = 8*(r*n + c) + 4*u + k with u = 0 the
// left partition and u = 1 the right, k in [0, 4). Left qubits couple to the
// corresponding left qubit of the vertically adjacent cell, right qubits to
// the horizontally adjacent one.
//
// The clique embedding routes logical variable v = 4a + k as an L-shaped
// chain: left-partition wire k down column a (rows a..n-1) joined to
// right-partition wire k along row a (columns 0..a). Any two chains meet in
// exactly one cell, so every logical coupling has a physical coupler. A grid
// of size n supports cliques up to 4n logical spins with chains of n+1 qubits.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qtrack/errors.hpp"
#include "qtrack/ising.hpp"

namespace qtrack {

struct ChimeraGraph {
    std::uint32_t grid_n = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> couplers;  // sorted, a < b

    std::size_t n_qubits() const { return 8u * grid_n * grid_n; }

    bool has_coupler(std::uint32_t a, std::uint32_t b) const {
        if (a > b) std::swap(a, b);
        return std::binary_search(couplers.begin(), couplers.end(), std::pair{a, b});
    }

    std::uint32_t qubit(std::uint32_t row, std::uint32_t col, std::uint32_t partition,
                        std::uint32_t wire) const {
        return 8 * (row * grid_n + col) + 4 * partition + wire;
    }
};

inline ChimeraGraph build_chimera(std::uint32_t n) {
    if (n < 1) throw ContractViolation("chimera grid size must be >= 1");
    ChimeraGraph g;
    g.grid_n = n;
    for (std::uint32_t r = 0; r < n; ++r)
        for (std::uint32_t c = 0; c < n; ++c) {
            for (std::uint32_t kl = 0; kl < 4; ++kl)
                for (std::uint32_t kr = 0; kr < 4; ++kr)
                    g.couplers.emplace_back(g.qubit(r, c, 0, kl), g.qubit(r, c, 1, kr));
            if (r + 1 < n)
                for (std::uint32_t k = 0; k < 4; ++k)
                    g.couplers.emplace_back(g.qubit(r, c, 0, k), g.qubit(r + 1, c, 0, k));
            if (c + 1 < n)
                for (std::uint32_t k = 0; k < 4; ++k)
                    g.couplers.emplace_back(g.qubit(r, c, 1, k), g.qubit(r, c + 1, 1, k));
        }
    for (auto& [a, b] : g.couplers)
        if (a > b) std::swap(a, b);
    std::sort(g.couplers.begin(), g.couplers.end());
    return g;
}

struct Embedding {
    std::uint32_t grid_n = 0;
    std::vector<std::vector<std::uint32_t>> chains;  // logical spin -> sorted qubits
    double chain_strength = 1.0;

    //! Sorted union of all chain qubits; the physical problem indexes into it.
    std::vector<std::uint32_t> used_qubits() const {
        std::vector<std::uint32_t> used;
        for (const auto& chain : chains) used.insert(used.end(), chain.begin(), chain.end());
        std::sort(used.begin(), used.end());
        return used;
    }
};

//! Checks the three embedding invariants: vertex-disjoint chains, chain
//! connectivity inside the graph, and a physical coupler for every logical
//! coupling. Throws ContractViolation naming the first violation.
inline void validate_embedding(const Embedding& e, const IsingProblem& p,
                               const ChimeraGraph& g) {
    if (e.chains.size() != p.size())
        throw ContractViolation("embedding has " + std::to_string(e.chains.size()) +
                                " chains for " + std::to_string(p.size()) + " logical spins");
    if (!(e.chain_strength > 0.0))
        throw ContractViolation("chain strength must be positive");

    std::set<std::uint32_t> seen;
    for (std::size_t v = 0; v < e.chains.size(); ++v) {
        const auto& chain = e.chains[v];
        if (chain.empty())
            throw ContractViolation("logical spin " + std::to_string(v) + " has an empty chain");
        for (const auto q : chain) {
            if (q >= g.n_qubits())
                throw ContractViolation("chain qubit " + std::to_string(q) +
                                        " is outside the graph");
            if (!seen.insert(q).second)
                throw ContractViolation("qubit " + std::to_string(q) +
                                        " belongs to more than one chain");
        }

        // connectivity by breadth-first search over graph couplers
        std::set<std::uint32_t> members(chain.begin(), chain.end());
        std::set<std::uint32_t> visited{chain.front()};
        std::queue<std::uint32_t> frontier;
        frontier.push(chain.front());
        while (!frontier.empty()) {
            const auto q = frontier.front();
            frontier.pop();
            for (const auto m : members)
                if (!visited.count(m) && g.has_coupler(q, m)) {
                    visited.insert(m);
                    frontier.push(m);
                }
        }
        if (visited.size() != members.size())
            throw ContractViolation("chain of logical spin " + std::to_string(v) +
                                    " is not connected");
    }

    for (const auto& c : p.couplings()) {
        bool covered = false;
        for (const auto qa : e.chains[c.i]) {
            for (const auto qb : e.chains[c.j])
                if (g.has_coupler(qa, qb)) {
                    covered = true;
                    break;
                }
            if (covered) break;
        }
        if (!covered)
            throw ContractViolation("logical coupling (" + std::to_string(c.i) + "," +
                                    std::to_string(c.j) + ") has no physical coupler");
    }
}

//! Largest-magnitude problem term; the default chain strength is 1 + 2*this.
inline double max_abs_term(const IsingProblem& p) {
    double m = 0.0;
    for (const auto v : p.fields()) m = std::max(m, std::abs(v));
    for (const auto& c : p.couplings()) m = std::max(m, std::abs(c.value));
    return m;
}

//! Deterministic clique embedding of up to 4n logical spins on an n x n grid.
inline Embedding find_embedding(const IsingProblem& p, const ChimeraGraph& g) {
    const std::size_t capacity = 4u * g.grid_n;
    if (p.size() > capacity)
        throw InfeasibleError("problem with " + std::to_string(p.size()) +
                              " spins exceeds the clique capacity of " +
                              std::to_string(capacity) + " on a " + std::to_string(g.grid_n) +
                              "x" + std::to_string(g.grid_n) + " chimera");

    Embedding e;
    e.grid_n = g.grid_n;
    e.chain_strength = 1.0 + 2.0 * max_abs_term(p);
    if (p.size() == 1) {
        e.chains = {{g.qubit(0, 0, 0, 0)}};  // no couplings to realize
    } else {
        for (std::uint32_t v = 0; v < p.size(); ++v) {
            const std::uint32_t a = v / 4;
            const std::uint32_t k = v % 4;
            std::vector<std::uint32_t> chain;
            for (std::uint32_t r = a; r < g.grid_n; ++r) chain.push_back(g.qubit(r, a, 0, k));
            for (std::uint32_t c = 0; c <= a; ++c) chain.push_back(g.qubit(a, c, 1, k));
            std::sort(chain.begin(), chain.end());
            e.chains.push_back(std::move(chain));
        }
    }
    validate_embedding(e, p, g);
    return e;
}

//! Physical realization: logical fields split evenly over chain qubits,
//! logical couplings on one deterministic inter-chain coupler, intra-chain
//! couplers at -chain_strength so aligned chains are favored. Indices are
//! compact positions into e.used_qubits().
inline IsingProblem embed_problem(const IsingProblem& p, const Embedding& e,
                                  const ChimeraGraph& g) {
    validate_embedding(e, p, g);
    const auto used = e.used_qubits();
    std::map<std::uint32_t, std::uint32_t> index_of;
    for (std::uint32_t i = 0; i < used.size(); ++i) index_of[used[i]] = i;

    IsingProblem physical(used.size());
    for (std::size_t v = 0; v < e.chains.size(); ++v) {
        const double share = p.fields()[v] / static_cast<double>(e.chains[v].size());
        for (const auto q : e.chains[v])
            physical.set_field(index_of[q], share);
    }
    for (const auto& c : p.couplings()) {
        std::pair<std::uint32_t, std::uint32_t> best{0, 0};
        bool found = false;
        for (const auto qa : e.chains[c.i])
            for (const auto qb : e.chains[c.j]) {
                const auto lo = std::min(qa, qb);
                const auto hi = std::max(qa, qb);
                if (!g.has_coupler(lo, hi)) continue;
                if (!found || std::pair{lo, hi} < best) {
                    best = {lo, hi};
                    found = true;
                }
            }
        physical.add_coupling(index_of[best.first], index_of[best.second], c.value);
    }
    for (const auto& chain : e.chains)
        for (std::size_t x = 0; x < chain.size(); ++x)
            for (std::size_t y = x + 1; y < chain.size(); ++y)
                if (g.has_coupler(chain[x], chain[y]))
                    physical.add_coupling(index_of[chain[x]], index_of[chain[y]],
                                          -e.chain_strength);
    return physical;
}

struct DecodeResult {
    SpinState state;                  // one logical spin per chain
    std::vector<std::uint8_t> broken; // chain not unanimous
    std::size_t broken_count = 0;
};

//! Majority vote per chain over the physical state (indexed as in
//! embed_problem); ties resolve to -1. A chain is broken when its qubits
//! disagree.
inline DecodeResult decode_state(const SpinState& physical, const Embedding& e) {
    const auto used = e.used_qubits();
    if (physical.size() != used.size())
        throw ContractViolation("physical state covers " + std::to_string(physical.size()) +
                                " qubits, embedding uses " + std::to_string(used.size()));
    std::map<std::uint32_t, std::uint32_t> index_of;
    for (std::uint32_t i = 0; i < used.size(); ++i) index_of[used[i]] = i;

    DecodeResult result;
    for (const auto& chain : e.chains) {
        int vote = 0;
        bool all_up = true, all_down = true;
        for (const auto q : chain) {
            const int s = physical.s[index_of[q]];
            vote += s;
            all_up = all_up && s > 0;
            all_down = all_down && s < 0;
        }
        result.state.s.push_back(vote > 0 ? 1 : -1);
        const bool is_broken = !(all_up || all_down);
        result.broken.push_back(is_broken);
        result.broken_count += is_broken;
    }
    return result;
}

//! Embedding JSON: {"grid_n": n, "chains": {"<logical>": [qubits]},
//! "chain_strength": s}.
inline nlohmann::json embedding_to_json(const Embedding& e) {
    nlohmann::json chains = nlohmann::json::object();
    for (std::size_t v = 0; v < e.chains.size(); ++v)
        chains[std::to_string(v)] = e.chains[v];
    return {{"grid_n", e.grid_n}, {"chains", chains}, {"chain_strength", e.chain_strength}};
}

inline Embedding embedding_from_json(const nlohmann::json& j) {
    Embedding e;
    try {
        e.grid_n = j.at("grid_n").get<std::uint32_t>();
        e.chain_strength = j.at("chain_strength").get<double>();
        const auto& chains = j.at("chains");
        e.chains.resize(chains.size());
        for (const auto& [key, value] : chains.items()) {
            const auto v = static_cast<std::size_t>(std::stoul(key));
            if (v >= e.chains.size()) throw ParseError("chain key out of range: " + key);
            e.chains[v] = value.get<std::vector<std::uint32_t>>();
        }
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("malformed embedding document: ") + ex.what());
    } catch (const std::invalid_argument&) {
        throw ParseError("chain keys must be logical spin indices");
    }
    return e;
}

inline void save_embedding_file(const Embedding& e, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << embedding_to_json(e).dump(2) << "\n";
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

inline Embedding load_embedding_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": malformed JSON: " + e.what());
    }
    return embedding_from_json(j);
}

}  // namespace qtrack
