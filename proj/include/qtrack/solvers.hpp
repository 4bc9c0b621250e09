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

// Minimizers for the spin/binary quadratic models: exact enumeration,
// Metropolis simulated annealing, and path-integral simulated quantum
// annealing (transverse-field driver realized as P coupled replica slices on
// a closed ring). All runs are bit-reproducible per (problem, params, seed).

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qtrack/detail/adjacency.hpp"
#include "qtrack/errors.hpp"
#include "qtrack/ising.hpp"
#include "qtrack/mean_field.hpp"
#include "qtrack/rng.hpp"

namespace qtrack {

enum class SolveMethod { exact, sa, sqa, meanfield };

inline std::optional<SolveMethod> parse_solve_method(std::string_view name) {
    if (name == "exact") return SolveMethod::exact;
    if (name == "sa") return SolveMethod::sa;
    if (name == "sqa") return SolveMethod::sqa;
    if (name == "meanfield") return SolveMethod::meanfield;
    return std::nullopt;
}

inline std::string to_string(SolveMethod m) {
    switch (m) {
        case SolveMethod::exact: return "exact";
        case SolveMethod::sa: return "sa";
        case SolveMethod::sqa: return "sqa";
        case SolveMethod::meanfield: return "meanfield";
    }
    return "unknown";
}

//! Metropolis temperature ladder plus restart budget.
struct AnnealSchedule {
    std::vector<double> temperatures;        // strictly decreasing, positive; may be empty
    std::uint32_t sweeps_per_temperature = 40;
    std::uint32_t restarts = 50;
    std::uint64_t seed = 0;

    void validate() const {
        double prev = std::numeric_limits<double>::infinity();
        for (double t : temperatures) {
            if (!(t > 0.0) || !(t < prev))
                throw ContractViolation("temperatures must be positive and strictly decreasing");
            prev = t;
        }
        if (sweeps_per_temperature < 1)
            throw ContractViolation("sweeps_per_temperature must be >= 1");
        if (restarts < 1) throw ContractViolation("restarts must be >= 1");
    }
};

inline AnnealSchedule default_sa_schedule(std::uint64_t seed = 0) {
    AnnealSchedule s;
    s.temperatures = geometric_ladder(2.0, 0.05, 20);
    s.sweeps_per_temperature = 40;
    s.restarts = 50;
    s.seed = seed;
    return s;
}

//! Replica-system parameters for simulated quantum annealing.
struct SqaParams {
    std::uint32_t trotter_slices = 16;       // P
    std::vector<double> gammas;              // transverse field ladder, decreasing, positive
    double temperature = 0.1;                // fixed T; Metropolis runs at effective P*T
    std::uint32_t sweeps_per_gamma = 20;
    std::uint32_t restarts = 8;
    std::uint64_t seed = 0;

    void validate() const {
        if (trotter_slices < 2) throw ContractViolation("trotter_slices must be >= 2");
        if (!(temperature > 0.0)) throw ContractViolation("temperature must be > 0");
        double prev = std::numeric_limits<double>::infinity();
        for (double g : gammas) {
            if (!(g > 0.0) || !(g < prev))
                throw ContractViolation("gammas must be positive and strictly decreasing");
            prev = g;
        }
        if (sweeps_per_gamma < 1) throw ContractViolation("sweeps_per_gamma must be >= 1");
        if (restarts < 1) throw ContractViolation("restarts must be >= 1");
    }
};

inline SqaParams default_sqa_params(std::uint64_t seed = 0) {
    SqaParams p;
    p.trotter_slices = 16;
    p.gammas = linear_ladder(3.0, 0.05, 30);
    p.temperature = 0.1;
    p.sweeps_per_gamma = 20;
    p.restarts = 8;
    p.seed = seed;
    return p;
}

//! One row of the plot-ready energy trace: best energy seen by `restart`
//! after ladder step `step` at control value (temperature or gamma) `control`.
struct TraceRow {
    std::uint32_t restart = 0;
    std::uint32_t step = 0;
    double control = 0.0;
    double best_energy = 0.0;
};

struct AcceptanceStats {
    std::uint64_t attempted = 0;
    std::uint64_t accepted = 0;
};

struct SolveResult {
    std::string method;
    std::uint64_t seed = 0;
    bool binary_domain = false;
    SpinState best_spins;                 // populated when !binary_domain
    BinaryState best_binary;              // populated when binary_domain
    double best_energy = 0.0;
    std::vector<double> restart_energies; // best energy per restart
    AcceptanceStats acceptance;
    std::vector<TraceRow> trace;
    std::vector<double> slice_lock_fractions;  // sqa: per restart, fraction of
                                               // spins with all slices agreeing
                                               // at the final gamma
};

namespace detail {

inline double ising_energy_raw(const IsingProblem& p, const std::vector<std::int8_t>& s) {
    double e = 0.0;
    for (const auto& c : p.couplings()) e += c.value * s[c.i] * s[c.j];
    for (std::uint32_t i = 0; i < p.size(); ++i) e += p.fields()[i] * s[i];
    return e;
}

inline std::vector<std::int8_t> random_spins(std::size_t n, Rng& rng) {
    std::vector<std::int8_t> s(n);
    for (auto& v : s) v = rng.uniform_index(2) ? 1 : -1;
    return s;
}

//! One Metropolis sweep: every spin attempted once in a fresh seeded order.
inline void metropolis_sweep(const Adjacency& adj, const std::vector<double>& fields,
                             std::vector<std::int8_t>& s, double temp, Rng& rng,
                             double& energy, AcceptanceStats& stats) {
    const auto order = rng.permutation(static_cast<std::uint32_t>(s.size()));
    for (const auto i : order) {
        const double delta = -2.0 * s[i] * local_field(adj, fields, s, i);
        ++stats.attempted;
        if (delta <= 0.0 || rng.uniform01() < std::exp(-delta / temp)) {
            s[i] = static_cast<std::int8_t>(-s[i]);
            energy += delta;
            ++stats.accepted;
        }
    }
}

//! Audits and returns the recomputed energy of a reported state.
inline double energy_audit(const IsingProblem& p, const std::vector<std::int8_t>& s,
                           double tracked) {
    const double recomputed = ising_energy_raw(p, s);
    const double scale = std::max({1.0, std::abs(recomputed), std::abs(tracked)});
    if (std::abs(recomputed - tracked) > 1e-9 * scale)
        throw ContractViolation("internal energy bookkeeping diverged from recomputation");
    return recomputed;
}

}  // namespace detail

//! Exact minimum by Gray-code enumeration of all 2^n states.
//! Ties resolve to the lexicographically smallest state with -1 < +1.
inline SolveResult brute_force(const IsingProblem& p) {
    const std::size_t n = p.size();
    if (n > 25)
        throw CapacityError("brute force enumeration is limited to 25 spins (got " +
                            std::to_string(n) + ")");
    const detail::Adjacency adj = detail::build_adjacency(n, p.couplings());

    std::vector<std::int8_t> s(n, -1);
    double energy = detail::ising_energy_raw(p, s);
    std::vector<std::int8_t> best = s;
    double best_energy = energy;

    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t idx = 1; idx < total; ++idx) {
        const auto bit = static_cast<std::uint32_t>(std::countr_zero(idx));
        energy += -2.0 * s[bit] * detail::local_field(adj, p.fields(), s, bit);
        s[bit] = static_cast<std::int8_t>(-s[bit]);
        if ((idx & 0xFFFFu) == 0) energy = detail::ising_energy_raw(p, s);  // resync fp drift
        if (energy < best_energy ||
            (energy == best_energy &&
             std::lexicographical_compare(s.begin(), s.end(), best.begin(), best.end()))) {
            best_energy = energy;
            best = s;
        }
    }

    SolveResult result;
    result.method = "exact";
    result.best_energy = detail::energy_audit(p, best, best_energy);
    result.best_spins.s = std::move(best);
    result.restart_energies = {result.best_energy};
    return result;
}

//! Metropolis single-spin-flip annealing along the schedule's ladder.
//! Restart r draws from the sub-seed derive_seed(seed, "restart", r).
inline SolveResult simulated_anneal(const IsingProblem& p, const AnnealSchedule& schedule) {
    schedule.validate();
    const std::size_t n = p.size();
    const detail::Adjacency adj = detail::build_adjacency(n, p.couplings());

    SolveResult result;
    result.method = "sa";
    result.seed = schedule.seed;
    std::vector<std::int8_t> global_best;
    double global_energy = 0.0;

    for (std::uint32_t r = 0; r < schedule.restarts; ++r) {
        Rng rng(derive_seed(schedule.seed, "restart", r));
        std::vector<std::int8_t> s = detail::random_spins(n, rng);
        double energy = detail::ising_energy_raw(p, s);
        std::vector<std::int8_t> best = s;
        double best_energy = energy;

        for (std::uint32_t step = 0; step < schedule.temperatures.size(); ++step) {
            const double temp = schedule.temperatures[step];
            energy = detail::ising_energy_raw(p, s);  // resync fp drift per step
            for (std::uint32_t sweep = 0; sweep < schedule.sweeps_per_temperature; ++sweep) {
                detail::metropolis_sweep(adj, p.fields(), s, temp, rng, energy,
                                         result.acceptance);
                if (energy < best_energy) {
                    best_energy = energy;
                    best = s;
                }
            }
            result.trace.push_back({r, step, temp, best_energy});
        }

        best_energy = detail::energy_audit(p, best, best_energy);
        result.restart_energies.push_back(best_energy);
        if (r == 0 || best_energy < global_energy) {
            global_energy = best_energy;
            global_best = std::move(best);
        }
    }

    result.best_energy = detail::energy_audit(p, global_best, global_energy);
    result.best_spins.s = std::move(global_best);
    return result;
}

//! Energy of the P-replica system at inter-slice coupling j_perp:
//!   sum_k E(slice_k)/P  -  j_perp * sum_i sum_k s_i^k s_i^{k+1 mod P}
//! Positive j_perp favors aligned slices under this sign convention.
inline double sqa_replica_energy(const IsingProblem& p, const std::vector<SpinState>& slices,
                                 double j_perp) {
    if (slices.empty()) throw ContractViolation("replica system needs at least one slice");
    const std::size_t slice_count = slices.size();
    double e = 0.0;
    for (const auto& slice : slices) {
        if (slice.size() != p.size()) throw ContractViolation("slice length != problem size");
        e += ising_energy(p, slice) / static_cast<double>(slice_count);
    }
    double ring = 0.0;
    for (std::size_t k = 0; k < slice_count; ++k) {
        const auto& a = slices[k].s;
        const auto& b = slices[(k + 1) % slice_count].s;
        for (std::size_t i = 0; i < a.size(); ++i) ring += a[i] * b[i];
    }
    return e - j_perp * ring;
}

//! Transverse-field annealing simulated as P coupled replicas on a closed
//! ring. The inter-slice coupling at field gamma is
//!   j_perp = -(P*T/2) * ln tanh(gamma / (P*T))
//! which diverges as gamma -> 0 (slices lock) and vanishes for large gamma.
//! Metropolis runs at effective temperature P*T. Returns the best
//! single-slice state by recomputed classical energy.
inline SolveResult simulated_quantum_anneal(const IsingProblem& p, const SqaParams& params) {
    params.validate();
    const std::size_t n = p.size();
    const std::uint32_t slices = params.trotter_slices;
    const double pt = slices * params.temperature;
    const detail::Adjacency adj = detail::build_adjacency(n, p.couplings());

    SolveResult result;
    result.method = "sqa";
    result.seed = params.seed;
    std::vector<std::int8_t> global_best;
    double global_energy = 0.0;
    bool have_global = false;

    for (std::uint32_t r = 0; r < params.restarts; ++r) {
        Rng rng(derive_seed(params.seed, "restart", r));
        std::vector<std::vector<std::int8_t>> replica(slices);
        std::vector<double> slice_energy(slices);
        std::vector<std::int8_t> best;
        double best_energy = 0.0;
        for (std::uint32_t k = 0; k < slices; ++k) {
            replica[k] = detail::random_spins(n, rng);
            slice_energy[k] = detail::ising_energy_raw(p, replica[k]);
            if (k == 0 || slice_energy[k] < best_energy) {
                best_energy = slice_energy[k];
                best = replica[k];
            }
        }

        for (std::uint32_t step = 0; step < params.gammas.size(); ++step) {
            const double gamma = params.gammas[step];
            const double j_perp = -(pt / 2.0) * std::log(std::tanh(gamma / pt));
            for (std::uint32_t k = 0; k < slices; ++k)
                slice_energy[k] = detail::ising_energy_raw(p, replica[k]);  // resync

            for (std::uint32_t sweep = 0; sweep < params.sweeps_per_gamma; ++sweep) {
                const auto order =
                    rng.permutation(static_cast<std::uint32_t>(n * slices));
                for (const auto site : order) {
                    const std::uint32_t k = site / n;
                    const std::uint32_t i = site % n;
                    auto& s = replica[k];
                    const double field = detail::local_field(adj, p.fields(), s, i);
                    const double delta_classical = -2.0 * s[i] * field;
                    const int ring = replica[(k + 1) % slices][i] +
                                     replica[(k + slices - 1) % slices][i];
                    const double delta = delta_classical / slices +
                                         2.0 * j_perp * s[i] * ring;
                    ++result.acceptance.attempted;
                    if (delta <= 0.0 || rng.uniform01() < std::exp(-delta / pt)) {
                        s[i] = static_cast<std::int8_t>(-s[i]);
                        slice_energy[k] += delta_classical;
                        ++result.acceptance.accepted;
                        if (slice_energy[k] < best_energy) {
                            best_energy = slice_energy[k];
                            best = s;
                        }
                    }
                }
            }
            result.trace.push_back({r, step, gamma, best_energy});
        }

        std::uint32_t locked = 0;
        for (std::uint32_t i = 0; i < n; ++i) {
            bool agree = true;
            for (std::uint32_t k = 1; k < slices && agree; ++k)
                agree = replica[k][i] == replica[0][i];
            locked += agree;
        }
        result.slice_lock_fractions.push_back(n == 0 ? 1.0
                                                     : static_cast<double>(locked) / n);

        best_energy = detail::energy_audit(p, best, best_energy);
        result.restart_energies.push_back(best_energy);
        if (!have_global || best_energy < global_energy) {
            global_energy = best_energy;
            global_best = std::move(best);
            have_global = true;
        }
    }

    result.best_energy = detail::energy_audit(p, global_best, global_energy);
    result.best_spins.s = std::move(global_best);
    return result;
}

//! Fixed-temperature Metropolis chain over an n <= 20 problem; returns visit
//! counts per state index (bit i set when s_i == +1), sampled after each sweep.
inline std::vector<std::uint64_t> metropolis_sample(const IsingProblem& p, double temperature,
                                                    std::uint64_t sweeps, std::uint64_t seed) {
    const std::size_t n = p.size();
    if (n > 20) throw CapacityError("metropolis_sample is limited to 20 spins");
    if (!(temperature > 0.0)) throw ContractViolation("temperature must be > 0");
    const detail::Adjacency adj = detail::build_adjacency(n, p.couplings());

    Rng rng(seed);
    std::vector<std::int8_t> s = detail::random_spins(n, rng);
    double energy = detail::ising_energy_raw(p, s);
    AcceptanceStats stats;
    std::vector<std::uint64_t> counts(std::size_t{1} << n, 0);
    for (std::uint64_t sweep = 0; sweep < sweeps; ++sweep) {
        detail::metropolis_sweep(adj, p.fields(), s, temperature, rng, energy, stats);
        std::size_t idx = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (s[i] > 0) idx |= std::size_t{1} << i;
        ++counts[idx];
    }
    return counts;
}

struct SolverOptions {
    SolveMethod method = SolveMethod::exact;
    AnnealSchedule sa = default_sa_schedule();
    SqaParams sqa = default_sqa_params();
    MeanFieldSchedule meanfield{geometric_ladder(1.0, 0.01, 25), 200, 1e-7};
    std::uint64_t meanfield_seed = 0;
};

namespace detail {

//! Mean-field relaxation of a QUBO; thresholds the converged activations.
inline SolveResult mean_field_solve(const QuboProblem& p, const MeanFieldSchedule& schedule,
                                    std::uint64_t seed) {
    std::vector<double> bias(p.size(), 0.0);
    std::vector<Coupling> upper;
    upper.reserve(p.entries().size());
    for (const auto& e : p.entries()) {
        if (e.i == e.j)
            bias[e.i] += e.value;
        else
            upper.push_back(e);
    }
    const MeanFieldRun run = mean_field_minimize(p.size(), upper, bias, schedule, seed);

    SolveResult result;
    result.method = "meanfield";
    result.seed = seed;
    result.binary_domain = true;
    result.best_binary.y.reserve(p.size());
    for (double a : run.activations)
        result.best_binary.y.push_back(a > 0.5 ? 1 : 0);
    result.best_energy = qubo_energy(p, result.best_binary);
    result.restart_energies = {result.best_energy};
    for (std::uint32_t step = 0; step < run.ladder_energies.size(); ++step)
        result.trace.push_back({0, step, run.ladder_energies[step].first,
                                run.ladder_energies[step].second + p.offset()});
    return result;
}

}  // namespace detail

//! Dispatch over an Ising problem; the result stays in the spin domain.
inline SolveResult solve_ising(const IsingProblem& p, const SolverOptions& options) {
    switch (options.method) {
        case SolveMethod::exact:
            return brute_force(p);
        case SolveMethod::sa:
            return simulated_anneal(p, options.sa);
        case SolveMethod::sqa:
            return simulated_quantum_anneal(p, options.sqa);
        case SolveMethod::meanfield: {
            const QuboProblem q = ising_to_qubo(p);
            SolveResult result = detail::mean_field_solve(q, options.meanfield,
                                                          options.meanfield_seed);
            result.binary_domain = false;
            result.best_spins = to_spin(result.best_binary);
            result.best_binary = BinaryState{};
            result.best_energy = ising_energy(p, result.best_spins);
            result.restart_energies = {result.best_energy};
            return result;
        }
    }
    throw ContractViolation("unreachable solve method");
}

//! Dispatch over a QUBO; the result is mapped to the binary domain through
//! y = (1+s)/2 and the reported energy is recomputed by qubo_energy.
inline SolveResult solve_qubo(const QuboProblem& p, const SolverOptions& options) {
    if (options.method == SolveMethod::meanfield)
        return detail::mean_field_solve(p, options.meanfield, options.meanfield_seed);

    const IsingWithOffset conv = qubo_to_ising(p);
    SolveResult result = solve_ising(conv.problem, options);
    result.binary_domain = true;
    result.best_binary = to_binary(result.best_spins);
    result.best_spins = SpinState{};
    result.best_energy = qubo_energy(p, result.best_binary);
    for (auto& e : result.restart_energies) e += conv.offset;
    for (auto& row : result.trace) row.best_energy += conv.offset;
    return result;
}

}  // namespace qtrack
