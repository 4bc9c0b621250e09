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

// Solves one random spin glass with every backend and, for an embeddable
// size, round-trips it through a chimera minor embedding.

#include <cstdio>

#include "qtrack/chimera.hpp"
#include "qtrack/rng.hpp"
#include "qtrack/solvers.hpp"

int main() {
    using namespace qtrack;

    Rng rng(derive_seed(1, "demo-glass"));
    IsingProblem glass(8);
    for (std::uint32_t a = 0; a < 8; ++a) {
        glass.set_field(a, rng.uniform(-1.0, 1.0));
        for (std::uint32_t b = a + 1; b < 8; ++b)
            glass.add_coupling(a, b, rng.uniform(-1.0, 1.0));
    }

    const auto exact = brute_force(glass);
    std::printf("exact:     E = %+.6f\n", exact.best_energy);

    const auto sa = simulated_anneal(glass, default_sa_schedule(1));
    std::printf("sa:        E = %+.6f  (accepted %llu of %llu flips)\n", sa.best_energy,
                static_cast<unsigned long long>(sa.acceptance.accepted),
                static_cast<unsigned long long>(sa.acceptance.attempted));

    const auto sqa = simulated_quantum_anneal(glass, default_sqa_params(1));
    std::printf("sqa:       E = %+.6f  (final slice lock %.2f)\n", sqa.best_energy,
                sqa.slice_lock_fractions.back());

    const auto graph = build_chimera(2);
    const auto embedding = find_embedding(glass, graph);
    const auto physical = embed_problem(glass, embedding, graph);
    const auto decoded = decode_state(brute_force(physical).best_spins, embedding);
    std::printf("embedded:  E = %+.6f  (%zu physical qubits, %zu broken chains)\n",
                ising_energy(glass, decoded.state), physical.size(), decoded.broken_count);
    return 0;
}
