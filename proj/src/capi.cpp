#include "layoutlab.h"

#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "cache_sim.hpp"
#include "errors.hpp"
#include "harness.hpp"
#include "kv_file.hpp"
#include "maze.hpp"
#include "trace.hpp"

using layoutlab::GridMaze;

struct llb_maze {
    GridMaze maze;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

// Runs the body and maps C++ failures onto status codes.
template <typename Fn>
llb_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return LLB_OK;
    } catch (const layoutlab::FormatError& e) {
        set_error(e.what());
        return LLB_ERR_FORMAT;
    } catch (const layoutlab::ValidationError& e) {
        set_error(e.what());
        return LLB_ERR_VALIDATION;
    } catch (const layoutlab::NoPathError& e) {
        set_error(e.what());
        return LLB_ERR_NO_PATH;
    } catch (const layoutlab::ConfigError& e) {
        set_error(e.what());
        return LLB_ERR_CONFIG;
    } catch (const layoutlab::UnavailableError& e) {
        set_error(e.what());
        return LLB_ERR_UNAVAILABLE;
    } catch (const layoutlab::InternalStateError& e) {
        set_error(e.what());
        return LLB_ERR_INTERNAL;
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return LLB_ERR_INVALID_ARGUMENT;
    } catch (const std::bad_alloc&) {
        set_error("out of memory");
        return LLB_ERR_INTERNAL;
    } catch (const std::exception& e) {
        // Remaining runtime_errors are file I/O or in-run failures.
        set_error(e.what());
        return LLB_ERR_IO;
    } catch (...) {
        set_error("unknown error");
        return LLB_ERR_INTERNAL;
    }
}

char* copy_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

llb_status require(bool cond, const char* msg) {
    if (cond) return LLB_OK;
    set_error(msg);
    return LLB_ERR_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* llb_version(void) { return "1.0.0"; }

const char* llb_last_error(void) { return g_last_error.c_str(); }

void llb_string_free(char* s) { delete[] s; }

llb_status llb_maze_generate(uint32_t width, uint32_t height, uint64_t seed,
                             llb_maze** out_maze) {
    if (llb_status s = require(out_maze != nullptr, "out_maze is NULL")) return s;
    return guarded([&] {
        *out_maze = new llb_maze{layoutlab::generate_perfect_maze(width, height, seed)};
    });
}

llb_status llb_maze_load(const char* path, llb_maze** out_maze) {
    if (llb_status s = require(path && out_maze, "path/out_maze is NULL")) return s;
    return guarded([&] { *out_maze = new llb_maze{layoutlab::load_maze(path)}; });
}

llb_status llb_maze_save(const llb_maze* maze, const char* path) {
    if (llb_status s = require(maze && path, "maze/path is NULL")) return s;
    return guarded([&] { layoutlab::save_maze(maze->maze, path); });
}

void llb_maze_free(llb_maze* maze) { delete maze; }

uint32_t llb_maze_width(const llb_maze* maze) { return maze ? maze->maze.width() : 0; }
uint32_t llb_maze_height(const llb_maze* maze) { return maze ? maze->maze.height() : 0; }
uint64_t llb_maze_seed(const llb_maze* maze) { return maze ? maze->maze.seed() : 0; }

llb_status llb_maze_validate(const llb_maze* maze, int* out_ok, char** out_report) {
    if (llb_status s = require(maze && out_ok, "maze/out_ok is NULL")) return s;
    return guarded([&] {
        const layoutlab::ValidationReport report = layoutlab::validate_perfect(maze->maze);
        *out_ok = report.ok ? 1 : 0;
        if (out_report) {
            std::string text;
            for (const std::string& v : report.violations) {
                text += v;
                text += '\n';
            }
            *out_report = copy_string(text);
        }
    });
}

llb_status llb_run_experiment_file(const char* config_path, const char* out_dir) {
    if (llb_status s = require(config_path && out_dir, "config_path/out_dir is NULL")) return s;
    return guarded([&] {
        const std::string text = layoutlab::read_text_file(config_path);
        const layoutlab::ExperimentConfig cfg = layoutlab::parse_experiment_config(text);
        const layoutlab::RunReport report = layoutlab::run_experiment(cfg);
        layoutlab::emit_reports(report, out_dir);
    });
}

llb_status llb_simulate_trace_file(const char* trace_path, const char* cache_spec,
                                   const char* out_json_path) {
    if (llb_status s = require(trace_path && cache_spec && out_json_path,
                               "trace_path/cache_spec/out_json_path is NULL")) {
        return s;
    }
    return guarded([&] {
        const layoutlab::MemoryTrace trace = layoutlab::load_trace(trace_path);
        const layoutlab::CacheConfig cfg = layoutlab::parse_cache_spec(cache_spec);
        const layoutlab::CacheReport report = layoutlab::simulate(trace, cfg);
        std::ofstream out(out_json_path, std::ios::binary);
        if (!out) throw std::runtime_error(std::string("cannot open for writing: ") +
                                           out_json_path);
        const std::string json = layoutlab::render_cache_report_json(report);
        out.write(json.data(), static_cast<std::streamsize>(json.size()));
        if (!out) throw std::runtime_error(std::string("write failed: ") + out_json_path);
    });
}

}  // extern "C"
