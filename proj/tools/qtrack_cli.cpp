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

// Command-line front end over the pipeline stages.
//
// Exit codes: 0 success, 1 usage error, 2 input/parse error,
// 3 capacity/infeasible. Errors go to stderr as "ERROR <code>: ...".

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "qtrack/pipeline.hpp"

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    std::string solver;
    CLI::Option* config_opt = nullptr;
    CLI::Option* out_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* solver_opt = nullptr;
};

CommonFlags add_common_flags(CLI::App* sub, bool with_solver) {
    CommonFlags flags;
    flags.config_opt = sub->add_option("--config", flags.config_path, "run configuration file");
    flags.out_opt = sub->add_option("--out", flags.out_dir, "output directory");
    flags.seed_opt = sub->add_option("--seed", flags.seed, "master seed (overrides the config)");
    if (with_solver)
        flags.solver_opt =
            sub->add_option("--solver", flags.solver, "exact|sa|sqa|meanfield (overrides)");
    return flags;
}

qtrack::RunConfig resolve_config(const CommonFlags& flags) {
    qtrack::RunConfig rc;
    if (flags.config_opt->count()) rc = qtrack::load_run_config(flags.config_path);
    if (flags.seed_opt->count()) rc.seed = flags.seed;
    if (flags.out_opt->count()) rc.out_dir = flags.out_dir;
    if (flags.solver_opt && flags.solver_opt->count()) {
        const auto method = qtrack::parse_solve_method(flags.solver);
        if (!method) throw UsageError("unknown solver method '" + flags.solver + "'");
        rc.method = *method;
    }
    return rc;
}

std::string in_out_dir(const qtrack::RunConfig& rc, const std::string& name) {
    std::filesystem::create_directories(rc.out_dir);
    return rc.out_dir + "/" + name;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"track finding on synthetic events via segment networks, "
                 "spin/binary quadratic models and annealing solvers"};
    app.require_subcommand(1);

    std::string event_file, problem_file, result_file;
    std::uint32_t grid_flag = 0;

    auto* generate = app.add_subcommand("generate", "synthesize an event file");
    auto gen_flags = add_common_flags(generate, false);
    generate->callback([&] {
        const auto rc = resolve_config(gen_flags);
        qtrack::cmd_generate(rc, in_out_dir(rc, "event.json"));
    });

    auto* build_net = app.add_subcommand("build-net", "build the segment network "
                                                      "and export it as a spin problem");
    build_net->add_option("event", event_file, "event JSON file")->required();
    auto net_flags = add_common_flags(build_net, false);
    build_net->callback([&] {
        const auto rc = resolve_config(net_flags);
        qtrack::cmd_build_net(event_file, rc, in_out_dir(rc, "network.ising"));
    });

    auto* to_qubo = app.add_subcommand("to-qubo", "convert a spin problem to binary form");
    to_qubo->add_option("ising", problem_file, "spin problem file")->required();
    auto qubo_flags = add_common_flags(to_qubo, false);
    to_qubo->callback([&] {
        const auto rc = resolve_config(qubo_flags);
        qtrack::cmd_to_qubo(problem_file, in_out_dir(rc, "network.qubo"));
    });

    auto* solve = app.add_subcommand("solve", "minimize a spin or binary problem file");
    solve->add_option("problem", problem_file, "problem file (spin or binary)")->required();
    auto solve_flags = add_common_flags(solve, true);
    solve->callback([&] {
        const auto rc = resolve_config(solve_flags);
        qtrack::cmd_solve(problem_file, rc, in_out_dir(rc, "result.json"));
    });

    auto* embed = app.add_subcommand("embed", "minor-embed a spin problem onto a chimera grid");
    embed->add_option("ising", problem_file, "spin problem file")->required();
    auto embed_flags = add_common_flags(embed, false);
    auto* grid_opt = embed->add_option("--grid", grid_flag, "chimera grid size (cells per side)");
    embed->callback([&] {
        auto rc = resolve_config(embed_flags);
        if (grid_opt->count()) rc.chimera_grid = grid_flag;
        if (rc.chimera_grid == 0)
            throw UsageError("embedding needs a grid size: pass --grid or set [chimera].grid");
        qtrack::cmd_embed(problem_file, rc.chimera_grid, in_out_dir(rc, "embedding.json"),
                          in_out_dir(rc, "physical.ising"));
    });

    auto* evaluate = app.add_subcommand("evaluate", "score a solve result against event truth");
    evaluate->add_option("result", result_file, "solve result JSON")->required();
    evaluate->add_option("event", event_file, "event JSON file")->required();
    auto eval_flags = add_common_flags(evaluate, false);
    evaluate->callback([&] {
        const auto rc = resolve_config(eval_flags);
        std::filesystem::create_directories(rc.out_dir);
        qtrack::cmd_evaluate(result_file, event_file, rc, rc.out_dir);
    });

    auto* run_all = app.add_subcommand("run-all", "generate, build, convert, solve, "
                                                  "embed (optional) and evaluate");
    auto all_flags = add_common_flags(run_all, true);
    run_all->callback([&] { qtrack::cmd_run_all(resolve_config(all_flags)); });

    try {
        app.parse(argc, argv);
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "ERROR 1: " << e.what() << "\n";
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "ERROR 1: " << e.what() << "\n";
        return 1;
    } catch (const qtrack::ParseError& e) {
        std::cerr << "ERROR 2: " << e.what() << "\n";
        return 2;
    } catch (const qtrack::IoError& e) {
        std::cerr << "ERROR 2: " << e.what() << "\n";
        return 2;
    } catch (const qtrack::CapacityError& e) {
        std::cerr << "ERROR 3: " << e.what() << "\n";
        return 3;
    } catch (const qtrack::InfeasibleError& e) {
        std::cerr << "ERROR 3: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "ERROR 1: " << e.what() << "\n";
        return 1;
    }
}
