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

// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Property-based checks with exhaustive/brute-force oracles; thresholds and
// tolerances are pinned in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qtrack/chimera.hpp"
#include "qtrack/denby_peterson.hpp"
#include "qtrack/event_gen.hpp"
#include "qtrack/ising.hpp"
#include "qtrack/metrics.hpp"
#include "qtrack/pipeline.hpp"
#include "qtrack/rng.hpp"
#include "qtrack/solvers.hpp"

using namespace qtrack;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

SpinState spin_from_mask(std::size_t n, std::uint32_t mask) {
    SpinState s;
    s.s.resize(n);
    for (std::size_t i = 0; i < n; ++i) s.s[i] = (mask >> i) & 1u ? 1 : -1;
    return s;
}

BinaryState binary_from_mask(std::size_t n, std::uint32_t mask) {
    BinaryState b;
    b.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) b.y[i] = (mask >> i) & 1u;
    return b;
}

IsingProblem random_glass(std::size_t n, Rng& rng) {
    IsingProblem p(n);
    for (std::uint32_t a = 0; a < n; ++a) {
        p.set_field(a, rng.uniform(-1.0, 1.0));
        for (std::uint32_t b = a + 1; b < n; ++b)
            p.add_coupling(a, b, rng.uniform(-1.0, 1.0));
    }
    return p;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

// --- criterion 1 -----------------------------------------------------------

Outcome criterion_transform_exactness() {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    Rng rng(derive_seed(1, "acceptance-transform"));
    double worst = 0.0;
    for (int instance = 0; instance < 200; ++instance) {
        const std::size_t n = 1 + rng.uniform_index(10);
        const IsingProblem p = random_glass(n, rng);
        const QuboProblem q = ising_to_qubo(p);

        double ising_min = std::numeric_limits<double>::infinity();
        double qubo_min = std::numeric_limits<double>::infinity();
        std::vector<double> ising_e(1u << n), qubo_e(1u << n);
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            const auto s = spin_from_mask(n, mask);
            ising_e[mask] = ising_energy(p, s);
            qubo_e[mask] = qubo_energy(q, to_binary(s));  // y=(1+s)/2 keeps the mask
            worst = std::max(worst, std::abs(ising_e[mask] - qubo_e[mask]));
            ising_min = std::min(ising_min, ising_e[mask]);
            qubo_min = std::min(qubo_min, qubo_e[mask]);
        }
        std::set<std::uint32_t> ising_arg, qubo_arg;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            if (ising_e[mask] <= ising_min + 1e-12) ising_arg.insert(mask);
            if (qubo_e[mask] <= qubo_min + 1e-12) qubo_arg.insert(mask);
        }
        if (ising_arg != qubo_arg) {
            out.pass = false;
            out.detail << "argmin sets diverge on instance " << instance << "; ";
            break;
        }
    }
    if (worst > 1e-9) out.pass = false;
    const double elapsed = seconds_since(start);
    if (elapsed >= 10.0) out.pass = false;
    out.detail << "200 instances n in [1,10], max |dE| " << worst << ", " << elapsed << " s";
    return out;
}

// --- criterion 2 -----------------------------------------------------------

Outcome criterion_polynomial_squaring() {
    Outcome out;
    Rng rng(derive_seed(2, "acceptance-square"));
    double worst = 0.0;
    bool exact_match = true;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng.uniform_index(8);
        std::vector<double> a(n);
        for (auto& v : a) v = rng.uniform(-1.0, 1.0);
        const QuboProblem q = square_polynomial(a);
        const auto m = square_polynomial_symmetric(a);
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            const auto y = binary_from_mask(n, mask);
            std::vector<double> x(y.y.begin(), y.y.end());
            double lin = 0.0;
            for (std::size_t i = 0; i < n; ++i) lin += a[i] * x[i];
            const double upper = qubo_energy(q, y);
            worst = std::max(worst, std::abs(upper - lin * lin));
            exact_match = exact_match && symmetric_form_value(m, x) == upper;
        }
    }
    if (worst > 1e-12 || !exact_match) out.pass = false;
    out.detail << "100 vectors n <= 8, max |form - square| " << worst
               << (exact_match ? ", representations exact" : ", representations DIVERGE");
    return out;
}

// --- criterion 3 -----------------------------------------------------------

Outcome criterion_sa_quality() {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    Rng rng(derive_seed(3, "acceptance-sa"));
    int hits = 0;
    const int instances = 50;
    for (int instance = 0; instance < instances; ++instance) {
        const IsingProblem p = random_glass(16, rng);
        const auto exact = brute_force(p);
        const auto sa = simulated_anneal(p, default_sa_schedule(derive_seed(30, "sa", instance)));
        if (std::abs(sa.best_energy - exact.best_energy) < 1e-9) ++hits;
    }
    const double elapsed = seconds_since(start);
    if (hits < 45 || elapsed >= 60.0) out.pass = false;
    out.detail << hits << "/50 ground states with the default preset, " << elapsed << " s";
    return out;
}

// --- criterion 4 -----------------------------------------------------------

Outcome criterion_sqa() {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    Rng rng(derive_seed(4, "acceptance-sqa"));

    // honesty + hit rate on 50 random n=12 instances with the default preset
    int hits = 0;
    bool honest = true;
    for (int instance = 0; instance < 50; ++instance) {
        const IsingProblem p = random_glass(12, rng);
        const auto exact = brute_force(p);
        const auto sqa =
            simulated_quantum_anneal(p, default_sqa_params(derive_seed(40, "sqa", instance)));
        honest = honest && sqa.best_energy == ising_energy(p, sqa.best_spins);
        if (std::abs(sqa.best_energy - exact.best_energy) < 1e-9) ++hits;
    }

    // replica locking in the vanishing-field limit on an n=8 fixture
    const IsingProblem fixture = random_glass(8, rng);
    SqaParams lock_params = default_sqa_params(7);
    lock_params.gammas = linear_ladder(3.0, 0.01, 40);
    lock_params.restarts = 4;
    const auto locked = simulated_quantum_anneal(fixture, lock_params);
    double lock_fraction = 0.0;
    for (const double f : locked.slice_lock_fractions) lock_fraction += f;
    lock_fraction /= locked.slice_lock_fractions.size();

    const double elapsed = seconds_since(start);
    if (hits < 40 || !honest || lock_fraction < 0.99 || elapsed >= 120.0) out.pass = false;
    out.detail << hits << "/50 ground states, energies " << (honest ? "honest" : "DISHONEST")
               << ", lock fraction " << lock_fraction << ", " << elapsed << " s";
    return out;
}

// --- criterion 5 -----------------------------------------------------------

Outcome criterion_boltzmann() {
    Outcome out;
    IsingProblem p(2);
    p.add_coupling(0, 1, 0.4);
    p.set_field(0, 0.15);
    p.set_field(1, -0.2);
    const double temperature = 1.2;
    const std::uint64_t sweeps = 1000000;
    const auto counts = metropolis_sample(p, temperature, sweeps, derive_seed(5, "boltzmann"));

    double z = 0.0;
    std::vector<double> weight(4);
    for (std::uint32_t mask = 0; mask < 4; ++mask) {
        weight[mask] = std::exp(-ising_energy(p, spin_from_mask(2, mask)) / temperature);
        z += weight[mask];
    }
    double worst_sigmas = 0.0;
    for (std::uint32_t mask = 0; mask < 4; ++mask) {
        const double prob = weight[mask] / z;
        const double expected = sweeps * prob;
        const double sigma = std::sqrt(sweeps * prob * (1.0 - prob));
        worst_sigmas =
            std::max(worst_sigmas, std::abs(static_cast<double>(counts[mask]) - expected) / sigma);
    }
    if (worst_sigmas >= 3.0) out.pass = false;
    out.detail << "2-spin chain over 1e6 sweeps, worst deviation " << worst_sigmas << " sigma";
    return out;
}

// --- criterion 6 -----------------------------------------------------------

Outcome criterion_reconstruction() {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;

    // frozen noiseless fixture: 3 tracks x 5 layers
    {
        EventGenConfig config;
        config.n_tracks = 3;
        config.curvature_min = -0.1;
        config.curvature_max = 0.1;
        config.noise_hit_count = 0;
        config.smear = false;
        config.seed = 1;
        const Event event = generate_event(config, DetectorGeometry{{1, 2, 3, 4, 5}, 0.01});
        const auto set = build_segments(event, default_segment_cuts());
        const auto net = build_network(set, default_dp_params());
        const auto state = mean_field_anneal(net, default_dp_schedule(), 0);
        const auto score = score_segments(set, state, event);
        if (!(score.efficiency == 1.0 && score.purity == 1.0)) {
            out.pass = false;
            out.detail << "frozen fixture eff " << score.efficiency.value_or(-1) << " pur "
                       << score.purity.value_or(-1) << "; ";
        }
    }

    // the same fixture through the full pipeline with the meanfield solver
    {
        RunConfig rc;
        rc.geometry = DetectorGeometry{{1, 2, 3, 4, 5}, 0.01};
        rc.generator.n_tracks = 3;
        rc.generator.noise_hit_count = 0;
        rc.generator.smear = false;
        rc.method = SolveMethod::meanfield;
        rc.seed = 7;
        rc.out_dir =
            (std::filesystem::temp_directory_path() / "qtrack-acceptance-runall").string();
        std::filesystem::remove_all(rc.out_dir);
        const auto artifacts = cmd_run_all(rc);
        const auto report = nlohmann::json::parse(slurp(artifacts.report_path));
        if (report["segment_score"]["efficiency"].get<double>() != 1.0 ||
            report["segment_score"]["purity"].get<double>() != 1.0) {
            out.pass = false;
            out.detail << "pipeline report not 1.0/1.0; ";
        }
    }

    // 5 tracks x 6 layers with 20% noise hits, averaged over 20 seeds
    double eff = 0.0, pur = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        EventGenConfig config;
        config.n_tracks = 5;
        config.curvature_min = -0.1;
        config.curvature_max = 0.1;
        config.noise_hit_count = 6;  // 20% of the 30 track hits
        config.smear = true;
        config.seed = seed;
        const Event event = generate_event(config, DetectorGeometry{{1, 2, 3, 4, 5, 6}, 0.01});
        const auto set = build_segments(event, default_segment_cuts());
        const auto net = build_network(set, default_dp_params());
        const auto state = mean_field_anneal(net, default_dp_schedule(), 0);
        const auto score = score_segments(set, state, event);
        eff += score.efficiency.value_or(0.0);
        pur += score.purity.value_or(0.0);
    }
    eff /= 20.0;
    pur /= 20.0;
    const double elapsed = seconds_since(start);
    if (eff < 0.9 || pur < 0.9 || elapsed >= 60.0) out.pass = false;
    out.detail << "noisy mean efficiency " << eff << ", purity " << pur << " over 20 seeds, "
               << elapsed << " s";
    return out;
}

// --- criterion 7 -----------------------------------------------------------

Outcome criterion_hopfield_descent() {
    Outcome out;
    Rng rng(derive_seed(7, "acceptance-hopfield"));
    int trajectories = 0;
    double worst_rise = 0.0;
    while (trajectories < 100) {
        EventGenConfig config;
        config.n_tracks = 2 + rng.uniform_index(3);
        config.noise_hit_count = rng.uniform_index(5);
        config.smear = true;
        config.seed = derive_seed(70, "event", trajectories);
        const Event event =
            generate_event(config, DetectorGeometry{{1, 2, 3, 4, 5}, 0.01});
        const auto set = build_segments(event, default_segment_cuts());
        if (set.size() == 0) continue;
        const auto net = build_network(set, default_dp_params());
        const std::size_t n = net.size();
        std::vector<double> t(n * n, 0.0);
        for (const auto& c : net.couplings()) {
            t[c.i * n + c.j] = c.value;
            t[c.j * n + c.i] = c.value;
        }

        ActivationState state;
        state.activations.resize(n);
        for (auto& a : state.activations) a = rng.uniform_index(2) ? 1.0 : 0.0;
        double energy = network_energy(net, state);
        for (int sweep = 0; sweep < 6; ++sweep) {
            for (std::size_t step = 0; step < n; ++step) {
                const auto i = static_cast<std::size_t>(rng.uniform_index(n));
                double field = 0.0;
                for (std::size_t j = 0; j < n; ++j) field += t[i * n + j] * state.activations[j];
                state.activations[i] = field > 0.0 ? 1.0 : 0.0;
                const double next = network_energy(net, state);
                worst_rise = std::max(worst_rise, next - energy);
                energy = next;
            }
        }
        ++trajectories;
    }
    if (worst_rise > 1e-9) out.pass = false;
    out.detail << "100 trajectories, worst single-update energy rise " << worst_rise;
    return out;
}

// --- criterion 8 -----------------------------------------------------------

Outcome criterion_chimera() {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;

    const auto c3 = build_chimera(3);
    if (c3.n_qubits() != 72) {
        out.pass = false;
        out.detail << "n=3 qubit count " << c3.n_qubits() << " != 72; ";
    }

    Rng rng(derive_seed(8, "acceptance-chimera"));
    const auto g = build_chimera(2);
    int clean = 0;
    bool all_valid = true;
    const int trials = 100;
    for (int trial = 0; trial < trials; ++trial) {
        const std::size_t n = 1 + rng.uniform_index(8);
        const IsingProblem p = random_glass(n, rng);
        const Embedding e = find_embedding(p, g);  // validates its invariants
        try {
            validate_embedding(e, p, g);
        } catch (const ContractViolation&) {
            all_valid = false;
        }
        const IsingProblem physical = embed_problem(p, e, g);
        const auto decoded = decode_state(brute_force(physical).best_spins, e);
        if (decoded.broken_count == 0 && decoded.state == brute_force(p).best_spins) ++clean;
    }
    const double elapsed = seconds_since(start);
    if (clean < 95 || !all_valid || elapsed >= 60.0) out.pass = false;
    out.detail << clean << "/100 clean ground-state round trips, embeddings "
               << (all_valid ? "valid" : "INVALID") << ", " << elapsed << " s";
    return out;
}

// --- criterion 9 -----------------------------------------------------------

Outcome criterion_determinism() {
    Outcome out;
    RunConfig rc;
    rc.geometry = DetectorGeometry{{1, 2, 3, 4, 5}, 0.01};
    rc.generator.n_tracks = 3;
    rc.generator.noise_hit_count = 2;
    rc.generator.smear = true;
    rc.method = SolveMethod::meanfield;
    rc.seed = 11;

    const auto base = std::filesystem::temp_directory_path() / "qtrack-acceptance-determinism";
    std::filesystem::remove_all(base);

    rc.out_dir = (base / "a").string();
    const auto a = cmd_run_all(rc);
    rc.out_dir = (base / "b").string();
    cmd_run_all(rc);

    const char* names[] = {"event.json", "network.ising", "network.qubo",
                           "result.json", "report.json", "trace.csv"};
    bool identical = true;
    for (const auto name : names)
        identical = identical && slurp(base / "a" / name) == slurp(base / "b" / name);

    const auto c = base / "stages";
    std::filesystem::create_directories(c);
    rc.out_dir = c.string();
    cmd_generate(rc, (c / "event.json").string());
    cmd_build_net((c / "event.json").string(), rc, (c / "network.ising").string());
    cmd_to_qubo((c / "network.ising").string(), (c / "network.qubo").string());
    cmd_solve((c / "network.ising").string(), rc, (c / "result.json").string());
    cmd_evaluate((c / "result.json").string(), (c / "event.json").string(), rc, c.string());
    bool composable = true;
    for (const auto name : names)
        composable = composable && slurp(base / "a" / name) == slurp(c / name);

    (void)a;
    if (!identical || !composable) out.pass = false;
    out.detail << "re-run " << (identical ? "byte-identical" : "DIVERGES") << ", stage-wise "
               << (composable ? "matches run-all" : "DIVERGES");
    return out;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"QUBO transform exactness", criterion_transform_exactness},
        {"polynomial squaring", criterion_polynomial_squaring},
        {"SA ground-state quality", criterion_sa_quality},
        {"SQA honesty, locking and quality", criterion_sqa},
        {"SA Boltzmann fidelity", criterion_boltzmann},
        {"segment-network reconstruction", criterion_reconstruction},
        {"Hopfield descent invariant", criterion_hopfield_descent},
        {"chimera embedding round trip", criterion_chimera},
        {"end-to-end determinism", criterion_determinism},
    };

    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome outcome;
        try {
            outcome = criteria[k].run();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.detail << "exception: " << e.what();
        }
        failures += !outcome.pass;
        std::printf("[%s] criterion %zu: %s (%s)\n", outcome.pass ? "PASS" : "FAIL", k + 1,
                    criteria[k].name, outcome.detail.str().c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
