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

// End-to-end orchestration. Every stage is a pure function of its input
// files plus the run configuration, so running the stages one by one and
// running the whole pipeline produce byte-identical artifacts.
//
// All randomness flows from [run].seed; stages derive their sub-seeds as
//   derive_seed(seed, stage_name, index)
// (stage names "generate" and "solve"). Solvers derive one further level,
// derive_seed(stage_seed, "restart", r), per restart.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qtrack/chimera.hpp"
#include "qtrack/config.hpp"
#include "qtrack/denby_peterson.hpp"
#include "qtrack/errors.hpp"
#include "qtrack/event_gen.hpp"
#include "qtrack/event_io.hpp"
#include "qtrack/ising_io.hpp"
#include "qtrack/metrics.hpp"
#include "qtrack/result_io.hpp"
#include "qtrack/segment.hpp"
#include "qtrack/solvers.hpp"

namespace qtrack {

struct RunConfig {
    DetectorGeometry geometry{{1, 2, 3, 4, 5, 6}, 0.01};
    EventGenConfig generator;  // generator.seed is derived from `seed` at run time
    SegmentCuts cuts = default_segment_cuts();
    DPParams dp = default_dp_params();
    MeanFieldSchedule dp_schedule = default_dp_schedule();
    SolveMethod method = SolveMethod::meanfield;
    AnnealSchedule sa = default_sa_schedule();
    SqaParams sqa = default_sqa_params();
    std::uint32_t chimera_grid = 0;  // 0 disables the embedding stage
    double candidate_majority = 0.75;
    double track_coverage = 0.5;
    std::uint64_t seed = 1;
    std::string out_dir = "out";
};

inline RunConfig run_config_from(const ConfigFile& cfg) {
    RunConfig rc;
    rc.geometry.layer_radii =
        cfg.get_double_list("geometry", "layer_radii", rc.geometry.layer_radii);
    rc.geometry.sigma_phi = cfg.get_double("geometry", "sigma_phi", rc.geometry.sigma_phi);

    rc.generator.n_tracks = cfg.get_u32("generator", "n_tracks", rc.generator.n_tracks);
    rc.generator.curvature_min =
        cfg.get_double("generator", "curvature_min", rc.generator.curvature_min);
    rc.generator.curvature_max =
        cfg.get_double("generator", "curvature_max", rc.generator.curvature_max);
    rc.generator.phi_min = cfg.get_double("generator", "phi_min", rc.generator.phi_min);
    rc.generator.phi_max = cfg.get_double("generator", "phi_max", rc.generator.phi_max);
    rc.generator.noise_hit_count =
        cfg.get_u32("generator", "noise_hits", rc.generator.noise_hit_count);
    rc.generator.smear = cfg.get_bool("generator", "smear", rc.generator.smear);

    rc.cuts.max_segment_length =
        cfg.get_double("cuts", "max_segment_length", rc.cuts.max_segment_length);
    rc.cuts.max_kink_angle = cfg.get_double("cuts", "max_kink_angle", rc.cuts.max_kink_angle);
    rc.cuts.max_neurons = cfg.get_u32("cuts", "max_neurons", rc.cuts.max_neurons);

    rc.dp.cost_exponent = cfg.get_u32("dp", "m", rc.dp.cost_exponent);
    rc.dp.alpha = cfg.get_double("dp", "alpha", rc.dp.alpha);
    rc.dp.beta = cfg.get_double("dp", "beta", rc.dp.beta);
    rc.dp_schedule.temperatures =
        geometric_ladder(cfg.get_double("dp", "t_start", 1.0), cfg.get_double("dp", "t_end", 0.01),
                         cfg.get_u32("dp", "t_steps", 25));
    rc.dp_schedule.max_sweeps_per_temperature =
        cfg.get_u32("dp", "max_sweeps", rc.dp_schedule.max_sweeps_per_temperature);
    rc.dp_schedule.tolerance = cfg.get_double("dp", "tolerance", rc.dp_schedule.tolerance);

    const std::string method = cfg.get_string("solver", "method", to_string(rc.method));
    const auto parsed = parse_solve_method(method);
    if (!parsed) throw ParseError("unknown solver method '" + method + "'");
    rc.method = *parsed;
    rc.sa.temperatures = geometric_ladder(cfg.get_double("solver", "sa_t_start", 2.0),
                                          cfg.get_double("solver", "sa_t_end", 0.05),
                                          cfg.get_u32("solver", "sa_t_steps", 20));
    rc.sa.sweeps_per_temperature =
        cfg.get_u32("solver", "sa_sweeps", rc.sa.sweeps_per_temperature);
    rc.sa.restarts = cfg.get_u32("solver", "sa_restarts", rc.sa.restarts);
    rc.sqa.trotter_slices = cfg.get_u32("solver", "sqa_slices", rc.sqa.trotter_slices);
    rc.sqa.gammas = linear_ladder(cfg.get_double("solver", "sqa_gamma_start", 3.0),
                                  cfg.get_double("solver", "sqa_gamma_end", 0.05),
                                  cfg.get_u32("solver", "sqa_gamma_steps", 30));
    rc.sqa.temperature = cfg.get_double("solver", "sqa_temperature", rc.sqa.temperature);
    rc.sqa.sweeps_per_gamma = cfg.get_u32("solver", "sqa_sweeps", rc.sqa.sweeps_per_gamma);
    rc.sqa.restarts = cfg.get_u32("solver", "sqa_restarts", rc.sqa.restarts);

    rc.chimera_grid = cfg.get_u32("chimera", "grid", rc.chimera_grid);
    rc.candidate_majority =
        cfg.get_double("match", "candidate_majority", rc.candidate_majority);
    rc.track_coverage = cfg.get_double("match", "track_coverage", rc.track_coverage);
    rc.seed = cfg.get_u64("run", "seed", rc.seed);
    rc.out_dir = cfg.get_string("run", "out", rc.out_dir);

    cfg.reject_unconsumed();
    return rc;
}

inline RunConfig load_run_config(const std::string& path) {
    return run_config_from(ConfigFile::load(path));
}

//! Stage 1: synthesize the event and write it to `event_path`.
inline void cmd_generate(const RunConfig& config, const std::string& event_path) {
    EventGenConfig gen = config.generator;
    gen.seed = derive_seed(config.seed, "generate", 0);
    save_event_file(generate_event(gen, config.geometry), event_path);
}

//! Stage 2: build segments and the coupling network, export it as a spin
//! problem under the activation encoding y = (1+s)/2. The transform constant
//! has no spin-file field and is dropped; states are unaffected.
inline void cmd_build_net(const std::string& event_path, const RunConfig& config,
                          const std::string& ising_path) {
    const Event event = load_event_file(event_path);
    const SegmentSet set = build_segments(event, config.cuts);
    const NeuronNetwork net = build_network(set, config.dp);
    const IsingWithOffset conv = qubo_to_ising(network_to_qubo(net));
    save_ising_file(conv.problem, ising_path);
}

//! Stage 3: spin form to binary form.
inline void cmd_to_qubo(const std::string& ising_path, const std::string& qubo_path) {
    save_qubo_file(ising_to_qubo(load_ising_file(ising_path)), qubo_path);
}

namespace detail {

enum class ProblemKind { ising, qubo };

inline ProblemKind sniff_problem_kind(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "ising") return ProblemKind::ising;
        if (tag == "qubo") return ProblemKind::qubo;
        throw ParseError(path + ": unrecognized problem header '" + tag + "'");
    }
    throw ParseError(path + ": empty problem file");
}

inline SolverOptions solver_options_from(const RunConfig& config) {
    SolverOptions options;
    options.method = config.method;
    options.sa = config.sa;
    options.sqa = config.sqa;
    options.meanfield = config.dp_schedule;
    const std::uint64_t solve_seed = derive_seed(config.seed, "solve", 0);
    options.sa.seed = solve_seed;
    options.sqa.seed = solve_seed;
    options.meanfield_seed = solve_seed;
    return options;
}

inline nlohmann::json params_echo(const SolverOptions& options) {
    switch (options.method) {
        case SolveMethod::exact:
            return nlohmann::json::object();
        case SolveMethod::sa:
            return {{"temperatures", options.sa.temperatures},
                    {"sweeps_per_temperature", options.sa.sweeps_per_temperature},
                    {"restarts", options.sa.restarts}};
        case SolveMethod::sqa:
            return {{"trotter_slices", options.sqa.trotter_slices},
                    {"gammas", options.sqa.gammas},
                    {"temperature", options.sqa.temperature},
                    {"sweeps_per_gamma", options.sqa.sweeps_per_gamma},
                    {"restarts", options.sqa.restarts}};
        case SolveMethod::meanfield:
            return {{"temperatures", options.meanfield.temperatures},
                    {"max_sweeps_per_temperature", options.meanfield.max_sweeps_per_temperature},
                    {"tolerance", options.meanfield.tolerance}};
    }
    return nlohmann::json::object();
}

}  // namespace detail

//! Stage 4: minimize the problem file with the configured backend. Spin
//! files yield spin-domain results, binary files binary-domain results.
inline void cmd_solve(const std::string& problem_path, const RunConfig& config,
                      const std::string& result_path) {
    const SolverOptions options = detail::solver_options_from(config);
    SolveResult result;
    if (detail::sniff_problem_kind(problem_path) == detail::ProblemKind::ising)
        result = solve_ising(load_ising_file(problem_path), options);
    else
        result = solve_qubo(load_qubo_file(problem_path), options);
    save_result_file(result, detail::params_echo(options), result_path);
}

//! Stage 5: clique-embed the spin problem onto an n x n chimera.
inline void cmd_embed(const std::string& ising_path, std::uint32_t grid_n,
                      const std::string& embedding_path, const std::string& physical_path) {
    const IsingProblem logical = load_ising_file(ising_path);
    const ChimeraGraph graph = build_chimera(grid_n);
    const Embedding embedding = find_embedding(logical, graph);
    save_embedding_file(embedding, embedding_path);
    save_ising_file(embed_problem(logical, embedding, graph), physical_path);
}

//! Stage 6: rebuild the segment view of the event, map the solved state back
//! to on-segments, score against truth, and emit report.json + trace.csv.
inline void cmd_evaluate(const std::string& result_path, const std::string& event_path,
                         const RunConfig& config, const std::string& out_dir) {
    const SolveResult result = load_result_file(result_path);
    const Event event = load_event_file(event_path);
    const SegmentSet set = build_segments(event, config.cuts);

    const std::size_t n = result.binary_domain ? result.best_binary.size()
                                               : result.best_spins.size();
    if (n != set.size())
        throw ParseError("result has " + std::to_string(n) + " variables but the event yields " +
                         std::to_string(set.size()) + " segments; config/event mismatch");

    ActivationState state;
    state.activations.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool on = result.binary_domain ? result.best_binary.y[i] == 1
                                             : result.best_spins.s[i] > 0;
        state.activations.push_back(on ? 1.0 : 0.0);
    }

    const SegmentScore seg_score = score_segments(set, state, event);
    const auto candidates = extract_tracks(state, set);
    const TrackScore trk_score = score_tracks(candidates, *event.truth,
                                              config.candidate_majority, config.track_coverage);
    emit_report(seg_score, trk_score, {result}, out_dir);
}

struct RunAllArtifacts {
    std::string event_path;
    std::string ising_path;
    std::string qubo_path;
    std::string result_path;
    std::string embedding_path;  // empty when the embedding stage is disabled
    std::string physical_path;
    std::string report_path;
    std::string trace_path;
};

//! The full chain; byte-identical to invoking the stages individually.
inline RunAllArtifacts cmd_run_all(const RunConfig& config) {
    std::filesystem::create_directories(config.out_dir);
    RunAllArtifacts a;
    a.event_path = config.out_dir + "/event.json";
    a.ising_path = config.out_dir + "/network.ising";
    a.qubo_path = config.out_dir + "/network.qubo";
    a.result_path = config.out_dir + "/result.json";
    a.report_path = config.out_dir + "/report.json";
    a.trace_path = config.out_dir + "/trace.csv";

    cmd_generate(config, a.event_path);
    cmd_build_net(a.event_path, config, a.ising_path);
    cmd_to_qubo(a.ising_path, a.qubo_path);
    cmd_solve(a.ising_path, config, a.result_path);
    if (config.chimera_grid > 0) {
        a.embedding_path = config.out_dir + "/embedding.json";
        a.physical_path = config.out_dir + "/physical.ising";
        cmd_embed(a.ising_path, config.chimera_grid, a.embedding_path, a.physical_path);
    }
    cmd_evaluate(a.result_path, a.event_path, config, config.out_dir);
    return a;
}

}  // namespace qtrack
