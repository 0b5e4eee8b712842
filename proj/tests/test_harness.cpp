#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <vector>

#include "errors.hpp"
#include "harness.hpp"
#include "json.hpp"
#include "test_util.hpp"

using namespace layoutlab;
namespace fs = std::filesystem;

namespace {

ExperimentConfig golden_config() {
    ExperimentConfig cfg;
    cfg.gen = MazeGenSpec{4, 4, 42};
    cfg.trials = 2;
    cfg.workers = 2;
    cfg.trace = true;
    return cfg;
}

}  // namespace

TEST_CASE("config parsing") {
    SUBCASE("full generated-maze config") {
        const ExperimentConfig cfg = parse_experiment_config(
            "# comment\n"
            "width = 16\nheight = 8\nseed = 3\n"
            "start = 8,16\ngoal = 1,1\n"
            "layouts = aos,soa\nexecutors = st,mt\n"
            "workers = 4\ntrials = 3\ncache = default\ntrace = on\noutput = out\n");
        REQUIRE(cfg.gen.has_value());
        CHECK(cfg.gen->width == 16);
        CHECK(cfg.gen->height == 8);
        CHECK(cfg.gen->seed == 3);
        CHECK(cfg.start_override == CellCoord{8, 16});
        CHECK(cfg.trials == 3);
        CHECK(cfg.trace);
        CHECK(cfg.output_dir == "out");
    }
    SUBCASE("maze path config") {
        const ExperimentConfig cfg = parse_experiment_config("maze = m.llm\ntrials = 1\n");
        CHECK(cfg.maze_path == "m.llm");
        CHECK(cfg.layouts.size() == 2);    // defaults
        CHECK(cfg.executors.size() == 2);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(parse_experiment_config("bogus = 1\n"), ConfigError);
        CHECK_THROWS_AS(parse_experiment_config("width = 4\n"), ConfigError);  // no height
        CHECK_THROWS_AS(parse_experiment_config(""), ConfigError);             // no source
        CHECK_THROWS_AS(parse_experiment_config("maze = a\nwidth = 1\nheight = 1\n"),
                        ConfigError);  // two sources
        CHECK_THROWS_AS(parse_experiment_config("maze = a\ntrials = 0\n"), ConfigError);
        CHECK_THROWS_AS(parse_experiment_config("maze = a\nlayouts =\n"), ConfigError);
        CHECK_THROWS_AS(parse_experiment_config("maze = a\nexecutors =\n"), ConfigError);
        CHECK_THROWS_AS(parse_experiment_config("maze = a\nworkers = 0\n"), ConfigError);
        CHECK_THROWS_AS(parse_experiment_config("maze = a\ntrace = maybe\n"), ConfigError);
        CHECK_THROWS_AS(parse_experiment_config("maze = a\nlayouts = rowwise\n"), ConfigError);
    }
}

TEST_CASE("trivial 1x1 experiment: all four cells, cost zero, ratios present") {
    ExperimentConfig cfg;
    cfg.gen = MazeGenSpec{1, 1, 0};
    cfg.trials = 1;
    cfg.workers = 2;
    const RunReport report = run_experiment(cfg);
    REQUIRE(report.cells.size() == 4);
    for (const CellResult& cell : report.cells) CHECK(cell.cost == 0);
    // Fixed order: ST-AoS, ST-SoA, MT-AoS, MT-SoA.
    CHECK(report.cells[0].executor == Executor::ST);
    CHECK(report.cells[0].layout == Layout::AoS);
    CHECK(report.cells[1].layout == Layout::SoA);
    CHECK(report.cells[2].executor == Executor::MT);
    CHECK(report.cells[3].layout == Layout::SoA);
    CHECK(report.ratios.size() == 4);
    for (const SpeedupRatio& r : report.ratios) CHECK(r.defined);
}

TEST_CASE("cross-cell invariants on a mid-size maze") {
    ExperimentConfig cfg;
    cfg.gen = MazeGenSpec{32, 32, 7};
    cfg.trials = 1;
    cfg.workers = 2;
    const RunReport report = run_experiment(cfg);
    REQUIRE(report.cells.size() == 4);

    // Cost identical across all four cells; d_refs equal across layouts
    // under the same executor (trace-length law).
    for (const CellResult& cell : report.cells) {
        CHECK(cell.cost == report.cells[0].cost);
    }
    CHECK(report.cells[0].d_refs == report.cells[1].d_refs);
    CHECK(report.cells[2].d_refs == report.cells[3].d_refs);

    // ST cells carry cache reports (trace defaults on); MT cells do not.
    CHECK(report.cells[0].cache.has_value());
    CHECK(report.cells[1].cache.has_value());
    CHECK_FALSE(report.cells[2].cache.has_value());
    CHECK_FALSE(report.cells[3].cache.has_value());

    // Traced d_refs equals the untraced access count for the same cell.
    CHECK(report.cells[0].cache->d_refs == report.cells[0].d_refs);
    CHECK(report.cells[1].cache->d_refs == report.cells[1].d_refs);

    // MT cells observed workers within [1, plan].
    REQUIRE(report.cells[2].observed_workers.has_value());
    CHECK(*report.cells[2].observed_workers >= 1);
    CHECK(*report.cells[2].observed_workers <= 2);

    // Memory model: payload parity holds at 1024 cells (multiple of 8).
    CHECK(report.cells[0].memory_bytes == report.cells[1].memory_bytes);
}

TEST_CASE("ratio consistency: speedups equal the quotient of reported medians") {
    ExperimentConfig cfg;
    cfg.gen = MazeGenSpec{24, 24, 5};
    cfg.trials = 3;
    cfg.workers = 2;
    const RunReport report = run_experiment(cfg);
    auto median = [&](Layout l, Executor e) {
        for (const CellResult& c : report.cells) {
            if (c.layout == l && c.executor == e) return c.wall.median_s;
        }
        FAIL("cell missing");
        return 0.0;
    };
    for (const SpeedupRatio& r : report.ratios) {
        double expected = 0.0;
        if (r.name == "time_aos_over_soa_st") {
            expected = median(Layout::AoS, Executor::ST) / median(Layout::SoA, Executor::ST);
        } else if (r.name == "time_aos_over_soa_mt") {
            expected = median(Layout::AoS, Executor::MT) / median(Layout::SoA, Executor::MT);
        } else if (r.name == "time_mt_over_st_aos") {
            expected = median(Layout::AoS, Executor::MT) / median(Layout::AoS, Executor::ST);
        } else {
            expected = median(Layout::SoA, Executor::MT) / median(Layout::SoA, Executor::ST);
        }
        CHECK(std::abs(r.value - expected) < 5e-7);  // 6 decimal places
    }
}

TEST_CASE("subset matrices") {
    ExperimentConfig cfg;
    cfg.gen = MazeGenSpec{8, 8, 1};
    cfg.trials = 1;
    cfg.layouts = {Layout::SoA};
    cfg.executors = {Executor::ST};
    const RunReport report = run_experiment(cfg);
    REQUIRE(report.cells.size() == 1);
    CHECK(report.cells[0].layout == Layout::SoA);
    CHECK(report.ratios.empty());
}

TEST_CASE("endpoint overrides reach the report and the solver") {
    ExperimentConfig cfg;
    cfg.gen = MazeGenSpec{6, 6, 9};
    cfg.trials = 1;
    cfg.executors = {Executor::ST};
    cfg.start_override = CellCoord{3, 3};
    cfg.goal_override = CellCoord{3, 3};
    const RunReport report = run_experiment(cfg);
    CHECK(report.start == CellCoord{3, 3});
    CHECK(report.goal == CellCoord{3, 3});
    CHECK(report.cells[0].cost == 0);

    cfg.start_override = CellCoord{7, 1};  // outside the 6x6 grid
    CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
}

TEST_CASE("emitted files: structure, row counts, byte stability") {
    testutil::TempDir tmp("harness");
    const RunReport report = run_experiment(golden_config());
    emit_reports(report, tmp.path().string());

    REQUIRE(fs::exists(tmp.path() / "report.json"));
    REQUIRE(fs::exists(tmp.path() / "summary.csv"));
    for (const char* name :
         {"execution_time.csv", "memory.csv", "d_refs.csv", "miss_pct.csv", "raw_misses.csv"}) {
        CHECK(fs::exists(tmp.path() / "figdata" / name));
    }

    // summary.csv: header + one row per cell.
    const std::string csv = testutil::read_file(tmp.path() / "summary.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 4);

    // report.json parses, and its keys are emitted in sorted order.
    const std::string text = testutil::read_file(tmp.path() / "report.json");
    const nlohmann::json doc = nlohmann::json::parse(text);
    CHECK(doc.at("cells").size() == 4);
    CHECK(doc.at("config").at("trials") == 2);
    CHECK(doc.at("ratios").size() == 4);
    CHECK(doc.at("cells")[0].at("cache").is_object());
    CHECK(doc.at("cells")[2].at("cache") == "not simulated");
    CHECK(doc.at("cells")[2].at("observed_worker_count").is_number());
    CHECK(doc.at("cells")[0].at("observed_worker_count").is_null());

    // Key ordering: every object in the document must list its keys in
    // sorted order. Walk the raw text per '{' scope.
    std::vector<std::vector<std::string>> scopes;
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '{') {
            scopes.emplace_back();
            stack.push_back(scopes.size() - 1);
        } else if (text[i] == '}') {
            REQUIRE_FALSE(stack.empty());
            stack.pop_back();
        } else if (text[i] == '"' && !stack.empty()) {
            const auto end = text.find('"', i + 1);
            REQUIRE(end != std::string::npos);
            const std::string token = text.substr(i + 1, end - i - 1);
            if (text.compare(end, 3, "\": ") == 0) scopes[stack.back()].push_back(token);
            i = end;
        }
    }
    for (const auto& keys : scopes) {
        CHECK(std::is_sorted(keys.begin(), keys.end()));
    }

    // Byte stability: a second emission of the same report is identical.
    testutil::TempDir tmp2("harness2");
    emit_reports(report, tmp2.path().string());
    CHECK(testutil::read_file(tmp2.path() / "report.json") == text);
    CHECK(testutil::read_file(tmp2.path() / "summary.csv") == csv);
}

TEST_CASE("golden report: deterministic fields are frozen byte-for-byte") {
    const RunReport report = run_experiment(golden_config());
    const std::string masked = testutil::mask_volatile_fields(render_report_json(report));
    const std::string golden =
        testutil::read_file(testutil::golden_dir() / "report_4x4.json");
    CHECK(masked == testutil::mask_volatile_fields(golden));
}

TEST_CASE("determinism modulo time: two runs differ only in masked fields") {
    const ExperimentConfig cfg = golden_config();
    const std::string a = testutil::mask_volatile_fields(render_report_json(run_experiment(cfg)));
    const std::string b = testutil::mask_volatile_fields(render_report_json(run_experiment(cfg)));
    CHECK(a == b);
}

TEST_CASE("a failing cell aborts the run and names the cell") {
    // Disconnected maze: structurally loadable, but the goal is
    // unreachable, so the first cell's solve fails.
    testutil::TempDir tmp("harnessfail");
    const GridMaze broken(2, 2, {0x2, 0x8, 0x2, 0x8}, {1, 1}, {2, 2}, 0);
    const std::string path = (tmp.path() / "broken.llm").string();
    save_maze(broken, path);

    ExperimentConfig cfg;
    cfg.maze_path = path;
    cfg.trials = 1;
    try {
        run_experiment(cfg);
        FAIL("expected the run to abort");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("cell st-aos") != std::string::npos);
        CHECK(std::string(e.what()).find("unreachable") != std::string::npos);
    }
}

TEST_CASE("emit_reports failure modes") {
    const RunReport empty{};
    testutil::TempDir tmp("harness3");
    CHECK_THROWS_AS(emit_reports(empty, tmp.path().string()), ConfigError);

    const RunReport report = run_experiment(golden_config());
    CHECK_THROWS(emit_reports(report, "/proc/definitely/not/writable"));
}
