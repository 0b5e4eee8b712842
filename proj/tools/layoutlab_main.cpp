// layoutlab command-line front end. Talks to the shared library through
// the C API only; exit codes are 0 success, 2 configuration/usage error,
// 3 run failure.

#include <cstdint>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "layoutlab.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRun = 3;

int exit_code_for(llb_status status) {
    switch (status) {
        case LLB_OK:
            return kExitOk;
        case LLB_ERR_CONFIG:
        case LLB_ERR_INVALID_ARGUMENT:
            return kExitConfig;
        default:
            return kExitRun;
    }
}

int fail(llb_status status) {
    std::fprintf(stderr, "layoutlab: error: %s\n", llb_last_error());
    return exit_code_for(status);
}

int cmd_gen(std::uint32_t width, std::uint32_t height, std::uint64_t seed,
            const std::string& out_path) {
    llb_maze* maze = nullptr;
    if (llb_status s = llb_maze_generate(width, height, seed, &maze)) return fail(s);
    const llb_status s = llb_maze_save(maze, out_path.c_str());
    llb_maze_free(maze);
    if (s) return fail(s);
    std::printf("wrote %ux%u maze (seed %llu) to %s\n", width, height,
                static_cast<unsigned long long>(seed), out_path.c_str());
    return kExitOk;
}

int cmd_run(const std::string& config_path, const std::string& out_dir) {
    if (llb_status s = llb_run_experiment_file(config_path.c_str(), out_dir.c_str())) {
        return fail(s);
    }
    std::printf("wrote report.json, summary.csv, figdata/ to %s\n", out_dir.c_str());
    return kExitOk;
}

int cmd_simulate(const std::string& trace_path, const std::string& cache_spec,
                 const std::string& out_path) {
    if (llb_status s =
            llb_simulate_trace_file(trace_path.c_str(), cache_spec.c_str(), out_path.c_str())) {
        return fail(s);
    }
    std::printf("wrote cache report to %s\n", out_path.c_str());
    return kExitOk;
}

int cmd_validate(const std::string& maze_path) {
    llb_maze* maze = nullptr;
    if (llb_status s = llb_maze_load(maze_path.c_str(), &maze)) return fail(s);
    int ok = 0;
    char* report = nullptr;
    const llb_status s = llb_maze_validate(maze, &ok, &report);
    llb_maze_free(maze);
    if (s) return fail(s);
    if (ok) {
        std::printf("%s: ok (perfect maze)\n", maze_path.c_str());
        llb_string_free(report);
        return kExitOk;
    }
    std::printf("%s: INVALID\n%s", maze_path.c_str(), report ? report : "");
    llb_string_free(report);
    return kExitRun;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"A*-over-maze data-layout benchmark laboratory"};
    app.require_subcommand(1);

    std::uint32_t width = 200, height = 200;
    std::uint64_t seed = 1;
    std::string out_path, config_path, trace_path, maze_path;
    std::string cache_spec = "default";

    CLI::App* gen = app.add_subcommand("gen", "Generate a perfect maze file");
    gen->add_option("--width", width, "Maze width in cells")->required();
    gen->add_option("--height", height, "Maze height in cells")->required();
    gen->add_option("--seed", seed, "Generation seed");
    gen->add_option("--out", out_path, "Output maze file")->required();

    CLI::App* run = app.add_subcommand("run", "Run a layout x executor experiment");
    run->add_option("--config", config_path, "key=value experiment config file")->required();
    run->add_option("--out", out_path, "Output report directory")->required();

    CLI::App* simulate = app.add_subcommand("simulate", "Replay a trace through the cache model");
    simulate->add_option("--trace", trace_path, "LLTRACE input file")->required();
    simulate->add_option("--cache", cache_spec, "'default' or a key=value cache file");
    simulate->add_option("--out", out_path, "Output JSON report")->required();

    CLI::App* validate = app.add_subcommand("validate", "Check the perfect-maze invariants");
    validate->add_option("--maze", maze_path, "Maze file to check")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    if (gen->parsed()) return cmd_gen(width, height, seed, out_path);
    if (run->parsed()) return cmd_run(config_path, out_path);
    if (simulate->parsed()) return cmd_simulate(trace_path, cache_spec, out_path);
    if (validate->parsed()) return cmd_validate(maze_path);
    return kExitConfig;
}
