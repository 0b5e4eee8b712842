#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cache_sim.hpp"
#include "maze.hpp"
#include "node_store.hpp"
#include "search.hpp"

namespace layoutlab {

enum class Executor : std::uint8_t { ST = 0, MT = 1 };

std::string layout_name(Layout layout);      // "aos" / "soa"
std::string executor_name(Executor ex);      // "st" / "mt"

struct MazeGenSpec {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint64_t seed = 0;
};

// One experiment: a maze source, the {layout x executor} matrix and the
// measurement knobs. Exactly one of maze_path / gen must be set.
struct ExperimentConfig {
    std::optional<std::string> maze_path;
    std::optional<MazeGenSpec> gen;
    std::optional<CellCoord> start_override;
    std::optional<CellCoord> goal_override;
    std::vector<Layout> layouts = {Layout::AoS, Layout::SoA};
    std::vector<Executor> executors = {Executor::ST, Executor::MT};
    std::uint32_t workers = 4;
    std::uint32_t trials = 5;
    std::string cache_spec = "default";
    bool trace = true;
    bool os_memory = false;  // sample VmHWM per cell; reported, never asserted
    std::string output_dir;
};

// Parses the flat key=value config text. Recognized keys: maze, width,
// height, seed, start, goal, layouts, executors, workers, trials, cache,
// trace, os_memory, output. Throws ConfigError on unknown keys, bad
// values or an invalid combination (no maze source, empty matrix,
// trials < 1, workers < 1).
ExperimentConfig parse_experiment_config(const std::string& text);
void validate_experiment_config(const ExperimentConfig& cfg);

struct WallTimes {
    double median_s = 0.0;
    double min_s = 0.0;
    double max_s = 0.0;
};

// One (layout, executor) cell of the matrix.
struct CellResult {
    Layout layout = Layout::AoS;
    Executor executor = Executor::ST;
    WallTimes wall;
    std::uint64_t cost = 0;
    std::uint64_t expansions = 0;
    std::uint64_t heap_pushes = 0;
    std::uint64_t heap_pops = 0;
    std::uint64_t memory_bytes = 0;  // deterministic byte-accounting model
    std::uint64_t d_refs = 0;        // store field accesses in one solve
    std::optional<CacheReport> cache;               // ST cells with tracing on
    std::optional<std::uint32_t> observed_workers;  // MT cells
    std::optional<std::uint64_t> os_peak_rss_bytes;
};

struct SpeedupRatio {
    std::string name;  // e.g. "time_mt_over_st_aos"
    double value = 0.0;
    bool defined = true;  // false when the denominator median is zero
};

struct RunReport {
    ExperimentConfig config;
    std::uint32_t maze_width = 0;
    std::uint32_t maze_height = 0;
    std::uint64_t maze_seed = 0;
    CellCoord start;
    CellCoord goal;
    std::vector<CellResult> cells;    // fixed order: ST-AoS, ST-SoA, MT-AoS, MT-SoA
    std::vector<SpeedupRatio> ratios; // pure functions of the cell medians
};

// Loads or generates the maze, runs every configured cell in the fixed
// order and fills in the derived ratios. Timing wraps the solve call
// only. All non-timing fields are deterministic for a given config; a
// failing cell is rethrown with the cell name attached.
RunReport run_experiment(const ExperimentConfig& cfg);

// Writes report.json (sorted keys, 6-decimal floats), summary.csv and the
// figdata/*.csv series into `dir`, creating directories as needed. Output
// is byte-stable for identical report content.
void emit_reports(const RunReport& report, const std::string& dir);

// The report.json text alone (what emit_reports writes).
std::string render_report_json(const RunReport& report);

// A standalone cache report as a key-sorted JSON document (the same
// schema the per-cell "cache" objects use).
std::string render_cache_report_json(const CacheReport& report);

}  // namespace layoutlab
