#include "harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "errors.hpp"
#include "kv_file.hpp"
#include "parallel.hpp"

namespace layoutlab {

namespace {

namespace fs = std::filesystem;

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::uint64_t parse_u64_cfg(const std::string& value, const std::string& key) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value for " + key + ": '" + value + "'");
    }
}

bool parse_on_off(const std::string& value, const std::string& key) {
    if (value == "on" || value == "true" || value == "1") return true;
    if (value == "off" || value == "false" || value == "0") return false;
    throw ConfigError("config: " + key + " must be on or off, got '" + value + "'");
}

CellCoord parse_coord(const std::string& value, const std::string& key) {
    const auto comma = value.find(',');
    if (comma == std::string::npos) {
        throw ConfigError("config: " + key + " must be row,col, got '" + value + "'");
    }
    return {static_cast<std::uint32_t>(parse_u64_cfg(value.substr(0, comma), key)),
            static_cast<std::uint32_t>(parse_u64_cfg(value.substr(comma + 1), key))};
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(value);
    while (std::getline(in, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        if (first != std::string::npos) out.push_back(item.substr(first, last - first + 1));
    }
    return out;
}

WallTimes summarize(std::vector<double> seconds) {
    std::sort(seconds.begin(), seconds.end());
    WallTimes w;
    w.min_s = seconds.front();
    w.max_s = seconds.back();
    const std::size_t n = seconds.size();
    w.median_s = (n % 2 == 1) ? seconds[n / 2] : 0.5 * (seconds[n / 2 - 1] + seconds[n / 2]);
    return w;
}

std::optional<std::uint64_t> sample_peak_rss_bytes() {
    std::ifstream in("/proc/self/status");
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("VmHWM:", 0) == 0) {
            std::uint64_t kib = 0;
            if (std::sscanf(line.c_str(), "VmHWM: %lu", &kib) == 1) return kib * 1024;
        }
    }
    return std::nullopt;
}

std::string cell_label(Layout layout, Executor ex) {
    return executor_name(ex) + "-" + layout_name(layout);
}

CellResult run_cell(const GridMaze& maze, Layout layout, Executor ex,
                    const ExperimentConfig& cfg, const CacheConfig& cache_cfg) {
    CellResult cell;
    cell.layout = layout;
    cell.executor = ex;
    cell.memory_bytes = memory_model_bytes(layout, maze.cell_count());

    std::vector<double> seconds;
    seconds.reserve(cfg.trials);
    for (std::uint32_t t = 0; t < cfg.trials; ++t) {
        NodeStore store(layout, maze.cell_count(), false);
        const auto t0 = std::chrono::steady_clock::now();
        SearchResult result = ex == Executor::ST
                                  ? astar(maze, store)
                                  : astar_mt(maze, store, {cfg.workers, 1, true});
        const auto t1 = std::chrono::steady_clock::now();
        seconds.push_back(std::chrono::duration<double>(t1 - t0).count());
        if (t == 0) {
            cell.cost = result.cost;
            cell.expansions = result.expansions;
            cell.heap_pushes = result.heap_pushes;
            cell.heap_pops = result.heap_pops;
            cell.d_refs = store.access_count();
            if (ex == Executor::MT) cell.observed_workers = observed_worker_count(result);
        }
    }
    cell.wall = summarize(std::move(seconds));

    // Cache behavior comes from a separate traced (and therefore slower)
    // single-threaded run; multi-threaded cells are never traced because
    // their interleaving would make the trace order nondeterministic.
    if (cfg.trace && ex == Executor::ST) {
        NodeStore store(layout, maze.cell_count(), true);
        astar(maze, store);
        cell.cache = simulate(store.trace(), cache_cfg);
    }

    if (cfg.os_memory) cell.os_peak_rss_bytes = sample_peak_rss_bytes();
    return cell;
}

double median_of(const RunReport& report, Layout layout, Executor ex, bool& found) {
    for (const CellResult& cell : report.cells) {
        if (cell.layout == layout && cell.executor == ex) {
            found = true;
            return cell.wall.median_s;
        }
    }
    found = false;
    return 0.0;
}

void add_ratio(RunReport& report, const std::string& name, double num, double den) {
    SpeedupRatio r;
    r.name = name;
    if (den == 0.0) {
        r.defined = false;
    } else {
        r.value = num / den;
    }
    report.ratios.push_back(std::move(r));
}

}  // namespace

std::string layout_name(Layout layout) { return layout == Layout::AoS ? "aos" : "soa"; }
std::string executor_name(Executor ex) { return ex == Executor::ST ? "st" : "mt"; }

ExperimentConfig parse_experiment_config(const std::string& text) {
    ExperimentConfig cfg;
    MazeGenSpec gen;
    bool saw_width = false, saw_height = false, saw_seed = false;
    bool saw_layouts = false, saw_executors = false;

    for (const auto& [key, value] : parse_key_values(text)) {
        if (key == "maze") {
            cfg.maze_path = value;
        } else if (key == "width") {
            gen.width = static_cast<std::uint32_t>(parse_u64_cfg(value, key));
            saw_width = true;
        } else if (key == "height") {
            gen.height = static_cast<std::uint32_t>(parse_u64_cfg(value, key));
            saw_height = true;
        } else if (key == "seed") {
            gen.seed = parse_u64_cfg(value, key);
            saw_seed = true;
        } else if (key == "start") {
            cfg.start_override = parse_coord(value, key);
        } else if (key == "goal") {
            cfg.goal_override = parse_coord(value, key);
        } else if (key == "layouts") {
            cfg.layouts.clear();
            saw_layouts = true;
            for (const std::string& item : split_list(value)) {
                if (item == "aos") cfg.layouts.push_back(Layout::AoS);
                else if (item == "soa") cfg.layouts.push_back(Layout::SoA);
                else throw ConfigError("config: unknown layout '" + item + "'");
            }
        } else if (key == "executors") {
            cfg.executors.clear();
            saw_executors = true;
            for (const std::string& item : split_list(value)) {
                if (item == "st") cfg.executors.push_back(Executor::ST);
                else if (item == "mt") cfg.executors.push_back(Executor::MT);
                else throw ConfigError("config: unknown executor '" + item + "'");
            }
        } else if (key == "workers") {
            cfg.workers = static_cast<std::uint32_t>(parse_u64_cfg(value, key));
        } else if (key == "trials") {
            cfg.trials = static_cast<std::uint32_t>(parse_u64_cfg(value, key));
        } else if (key == "cache") {
            cfg.cache_spec = value;
        } else if (key == "trace") {
            cfg.trace = parse_on_off(value, key);
        } else if (key == "os_memory") {
            cfg.os_memory = parse_on_off(value, key);
        } else if (key == "output") {
            cfg.output_dir = value;
        } else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }

    if (saw_width || saw_height || saw_seed) {
        if (!(saw_width && saw_height)) {
            throw ConfigError("config: width and height must be given together");
        }
        cfg.gen = gen;
    }
    (void)saw_layouts;
    (void)saw_executors;
    validate_experiment_config(cfg);
    return cfg;
}

void validate_experiment_config(const ExperimentConfig& cfg) {
    if (cfg.maze_path.has_value() == cfg.gen.has_value()) {
        throw ConfigError("config: exactly one maze source required (maze= or width/height/seed)");
    }
    if (cfg.gen && (cfg.gen->width == 0 || cfg.gen->height == 0)) {
        throw ConfigError("config: maze dimensions must be >= 1");
    }
    if (cfg.layouts.empty()) throw ConfigError("config: layouts must not be empty");
    if (cfg.executors.empty()) throw ConfigError("config: executors must not be empty");
    if (cfg.trials < 1) throw ConfigError("config: trials must be >= 1");
    if (cfg.workers < 1) throw ConfigError("config: workers must be >= 1");
}

RunReport run_experiment(const ExperimentConfig& cfg) {
    validate_experiment_config(cfg);

    GridMaze maze = cfg.maze_path ? load_maze(*cfg.maze_path)
                                  : generate_perfect_maze(cfg.gen->width, cfg.gen->height,
                                                          cfg.gen->seed);
    try {
        if (cfg.start_override) maze = maze.with_start(*cfg.start_override);
        if (cfg.goal_override) maze = maze.with_goal(*cfg.goal_override);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    const CacheConfig cache_cfg = parse_cache_spec(cfg.cache_spec);

    RunReport report;
    report.config = cfg;
    report.maze_width = maze.width();
    report.maze_height = maze.height();
    report.maze_seed = maze.seed();
    report.start = maze.start();
    report.goal = maze.goal();

    for (const Executor ex : {Executor::ST, Executor::MT}) {
        if (std::find(cfg.executors.begin(), cfg.executors.end(), ex) == cfg.executors.end()) {
            continue;
        }
        for (const Layout layout : {Layout::AoS, Layout::SoA}) {
            if (std::find(cfg.layouts.begin(), cfg.layouts.end(), layout) == cfg.layouts.end()) {
                continue;
            }
            try {
                report.cells.push_back(run_cell(maze, layout, ex, cfg, cache_cfg));
            } catch (const std::exception& e) {
                throw std::runtime_error("cell " + cell_label(layout, ex) +
                                         " failed: " + e.what());
            }
        }
    }

    // t(AoS)/t(SoA) per executor, then t(MT)/t(ST) per layout.
    for (const Executor ex : {Executor::MT, Executor::ST}) {
        bool have_aos = false, have_soa = false;
        const double aos = median_of(report, Layout::AoS, ex, have_aos);
        const double soa = median_of(report, Layout::SoA, ex, have_soa);
        if (have_aos && have_soa) {
            add_ratio(report, "time_aos_over_soa_" + executor_name(ex), aos, soa);
        }
    }
    for (const Layout layout : {Layout::AoS, Layout::SoA}) {
        bool have_st = false, have_mt = false;
        const double st = median_of(report, layout, Executor::ST, have_st);
        const double mt = median_of(report, layout, Executor::MT, have_mt);
        if (have_st && have_mt) {
            add_ratio(report, "time_mt_over_st_" + layout_name(layout), mt, st);
        }
    }
    std::sort(report.ratios.begin(), report.ratios.end(),
              [](const SpeedupRatio& a, const SpeedupRatio& b) { return a.name < b.name; });
    return report;
}

namespace {

void append_cache_json(std::string& out, const CacheReport& cache, const std::string& indent) {
    out += "{\n";
    out += indent + "  \"d_refs\": " + std::to_string(cache.d_refs) + ",\n";
    out += indent + "  \"levels\": [\n";
    for (std::size_t i = 0; i < cache.levels.size(); ++i) {
        const CacheLevelReport& lvl = cache.levels[i];
        out += indent + "    {\n";
        out += indent + "      \"accesses\": " + std::to_string(lvl.accesses) + ",\n";
        out += indent + "      \"miss_pct\": " + fmt6(lvl.miss_pct()) + ",\n";
        out += indent + "      \"misses\": " + std::to_string(lvl.misses) + ",\n";
        out += indent + "      \"name\": \"" + lvl.name + "\"\n";
        out += indent + "    }" + (i + 1 < cache.levels.size() ? "," : "") + "\n";
    }
    out += indent + "  ]\n";
    out += indent + "}";
}

}  // namespace

std::string render_cache_report_json(const CacheReport& report) {
    std::string out;
    append_cache_json(out, report, "");
    out += "\n";
    return out;
}

std::string render_report_json(const RunReport& report) {
    const ExperimentConfig& cfg = report.config;
    std::string out = "{\n";

    out += "  \"cells\": [\n";
    for (std::size_t i = 0; i < report.cells.size(); ++i) {
        const CellResult& cell = report.cells[i];
        out += "    {\n";
        out += "      \"cache\": ";
        if (cell.cache) {
            append_cache_json(out, *cell.cache, "      ");
            out += ",\n";
        } else {
            out += "\"not simulated\",\n";
        }
        out += "      \"cost\": " + std::to_string(cell.cost) + ",\n";
        out += "      \"d_refs\": " + std::to_string(cell.d_refs) + ",\n";
        out += "      \"executor\": \"" + executor_name(cell.executor) + "\",\n";
        out += "      \"expansions\": " + std::to_string(cell.expansions) + ",\n";
        out += "      \"heap_pops\": " + std::to_string(cell.heap_pops) + ",\n";
        out += "      \"heap_pushes\": " + std::to_string(cell.heap_pushes) + ",\n";
        out += "      \"layout\": \"" + layout_name(cell.layout) + "\",\n";
        out += "      \"memory_model_bytes\": " + std::to_string(cell.memory_bytes) + ",\n";
        out += "      \"observed_worker_count\": " +
               (cell.observed_workers ? std::to_string(*cell.observed_workers)
                                      : std::string("null")) +
               ",\n";
        if (cell.os_peak_rss_bytes) {
            out += "      \"os_peak_rss_bytes\": " + std::to_string(*cell.os_peak_rss_bytes) +
                   ",\n";
        }
        out += "      \"wall_time_s\": {\n";
        out += "        \"max\": " + fmt6(cell.wall.max_s) + ",\n";
        out += "        \"median\": " + fmt6(cell.wall.median_s) + ",\n";
        out += "        \"min\": " + fmt6(cell.wall.min_s) + "\n";
        out += "      }\n";
        out += "    }";
        out += (i + 1 < report.cells.size()) ? ",\n" : "\n";
    }
    out += "  ],\n";

    out += "  \"config\": {\n";
    out += "    \"cache\": \"" + cfg.cache_spec + "\",\n";
    out += "    \"executors\": [";
    for (std::size_t i = 0; i < cfg.executors.size(); ++i) {
        out += std::string(i ? ", " : "") + "\"" + executor_name(cfg.executors[i]) + "\"";
    }
    out += "],\n";
    out += "    \"goal\": [" + std::to_string(report.goal.row) + ", " +
           std::to_string(report.goal.col) + "],\n";
    out += "    \"layouts\": [";
    for (std::size_t i = 0; i < cfg.layouts.size(); ++i) {
        out += std::string(i ? ", " : "") + "\"" + layout_name(cfg.layouts[i]) + "\"";
    }
    out += "],\n";
    out += "    \"maze\": {\n";
    out += "      \"height\": " + std::to_string(report.maze_height) + ",\n";
    if (cfg.maze_path) out += "      \"path\": \"" + *cfg.maze_path + "\",\n";
    out += "      \"seed\": " + std::to_string(report.maze_seed) + ",\n";
    out += "      \"width\": " + std::to_string(report.maze_width) + "\n";
    out += "    },\n";
    out += "    \"start\": [" + std::to_string(report.start.row) + ", " +
           std::to_string(report.start.col) + "],\n";
    out += "    \"trace\": " + std::string(cfg.trace ? "true" : "false") + ",\n";
    out += "    \"trials\": " + std::to_string(cfg.trials) + ",\n";
    out += "    \"workers\": " + std::to_string(cfg.workers) + "\n";
    out += "  },\n";

    out += "  \"ratios\": {\n";
    for (std::size_t i = 0; i < report.ratios.size(); ++i) {
        const SpeedupRatio& r = report.ratios[i];
        out += "    \"" + r.name + "\": " + (r.defined ? fmt6(r.value) : std::string("null"));
        out += (i + 1 < report.ratios.size()) ? ",\n" : "\n";
    }
    out += "  }\n";
    out += "}\n";
    return out;
}

void emit_reports(const RunReport& report, const std::string& dir) {
    if (report.cells.empty()) throw ConfigError("report: no cells to emit");

    std::error_code ec;
    fs::create_directories(fs::path(dir) / "figdata", ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir + ": " + ec.message());

    auto write_file = [&](const fs::path& rel, const std::string& content) {
        const fs::path full = fs::path(dir) / rel;
        std::ofstream out(full, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open for writing: " + full.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("write failed: " + full.string());
    };

    write_file("report.json", render_report_json(report));

    std::string csv =
        "layout,executor,cost,expansions,heap_pushes,heap_pops,wall_time_median_s,"
        "wall_time_min_s,wall_time_max_s,memory_model_bytes,d_refs,d1_accesses,d1_misses,"
        "d1_miss_pct,ll_accesses,ll_misses,ll_miss_pct,observed_worker_count\n";
    for (const CellResult& cell : report.cells) {
        csv += layout_name(cell.layout) + "," + executor_name(cell.executor) + ",";
        csv += std::to_string(cell.cost) + "," + std::to_string(cell.expansions) + ",";
        csv += std::to_string(cell.heap_pushes) + "," + std::to_string(cell.heap_pops) + ",";
        csv += fmt6(cell.wall.median_s) + "," + fmt6(cell.wall.min_s) + "," +
               fmt6(cell.wall.max_s) + ",";
        csv += std::to_string(cell.memory_bytes) + "," + std::to_string(cell.d_refs) + ",";
        if (cell.cache) {
            const CacheLevelReport& d1 = cell.cache->level("D1");
            const CacheLevelReport& ll = cell.cache->level("LL");
            csv += std::to_string(d1.accesses) + "," + std::to_string(d1.misses) + "," +
                   fmt6(d1.miss_pct()) + ",";
            csv += std::to_string(ll.accesses) + "," + std::to_string(ll.misses) + "," +
                   fmt6(ll.miss_pct()) + ",";
        } else {
            csv += ",,,,,,";
        }
        csv += cell.observed_workers ? std::to_string(*cell.observed_workers) : "";
        csv += "\n";
    }
    write_file("summary.csv", csv);

    std::string timing = "cell,wall_time_median_s\n";
    std::string memory = "cell,mebibytes\n";
    std::string drefs = "cell,d_refs\n";
    std::string miss_pct = "cell,level,miss_pct\n";
    std::string raw_misses = "cell,level,misses\n";
    for (const CellResult& cell : report.cells) {
        const std::string label = cell_label(cell.layout, cell.executor);
        timing += label + "," + fmt6(cell.wall.median_s) + "\n";
        memory += label + "," +
                  fmt6(static_cast<double>(cell.memory_bytes) / (1024.0 * 1024.0)) + "\n";
        drefs += label + "," + std::to_string(cell.d_refs) + "\n";
        if (cell.cache) {
            for (const CacheLevelReport& lvl : cell.cache->levels) {
                miss_pct += label + "," + lvl.name + "," + fmt6(lvl.miss_pct()) + "\n";
                raw_misses += label + "," + lvl.name + "," + std::to_string(lvl.misses) + "\n";
            }
        }
    }
    write_file(fs::path("figdata") / "execution_time.csv", timing);
    write_file(fs::path("figdata") / "memory.csv", memory);
    write_file(fs::path("figdata") / "d_refs.csv", drefs);
    write_file(fs::path("figdata") / "miss_pct.csv", miss_pct);
    write_file(fs::path("figdata") / "raw_misses.csv", raw_misses);
}

}  // namespace layoutlab
