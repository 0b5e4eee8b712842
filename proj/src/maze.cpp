#include "maze.hpp"

#include <zlib.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "errors.hpp"
#include "rng.hpp"

namespace layoutlab {

namespace {

struct Step {
    std::int32_t drow;
    std::int32_t dcol;
};

// Indexed by Direction; the N,E,S,W order here is the determinism
// contract for neighbor enumeration.
constexpr std::array<Step, 4> kSteps = {{{-1, 0}, {0, 1}, {1, 0}, {0, -1}}};

bool step_in_grid(const GridMaze& maze, CellCoord c, Direction d, CellCoord& out) {
    const Step s = kSteps[static_cast<std::size_t>(d)];
    const std::int64_t row = static_cast<std::int64_t>(c.row) + s.drow;
    const std::int64_t col = static_cast<std::int64_t>(c.col) + s.dcol;
    if (row < 1 || col < 1 || row > maze.height() || col > maze.width()) return false;
    out = {static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(col)};
    return true;
}

std::uint32_t crc32_of(const std::string& bytes) {
    return static_cast<std::uint32_t>(
        ::crc32(0L, reinterpret_cast<const Bytef*>(bytes.data()),
                static_cast<uInt>(bytes.size())));
}

}  // namespace

Direction opposite(Direction d) {
    switch (d) {
        case Direction::North: return Direction::South;
        case Direction::East: return Direction::West;
        case Direction::South: return Direction::North;
        case Direction::West: return Direction::East;
    }
    throw std::invalid_argument("bad direction");
}

WallBit wall_bit(Direction d) {
    return static_cast<WallBit>(1u << static_cast<std::uint8_t>(d));
}

GridMaze::GridMaze(std::uint32_t width, std::uint32_t height, std::vector<std::uint8_t> walls,
                   CellCoord start, CellCoord goal, std::uint64_t seed)
    : width_(width), height_(height), walls_(std::move(walls)), start_(start), goal_(goal),
      seed_(seed) {
    if (width_ == 0 || height_ == 0) throw std::invalid_argument("maze dimensions must be >= 1");
    if (walls_.size() != cell_count()) throw std::invalid_argument("wall mask count != cells");
    if (!in_grid(start_) || !in_grid(goal_)) throw std::invalid_argument("start/goal outside grid");
}

GridMaze GridMaze::with_start(CellCoord start) const {
    if (!in_grid(start)) throw std::invalid_argument("start outside grid");
    return GridMaze(width_, height_, walls_, start, goal_, seed_);
}

GridMaze GridMaze::with_goal(CellCoord goal) const {
    if (!in_grid(goal)) throw std::invalid_argument("goal outside grid");
    return GridMaze(width_, height_, walls_, start_, goal, seed_);
}

GridMaze generate_perfect_maze(std::uint32_t width, std::uint32_t height, std::uint64_t seed) {
    if (width == 0 || height == 0) throw std::invalid_argument("maze dimensions must be >= 1");

    const std::size_t cells = static_cast<std::size_t>(width) * height;
    std::vector<std::uint8_t> walls(cells, 0);
    std::vector<bool> visited(cells, false);
    std::vector<std::uint32_t> stack;
    stack.reserve(cells);

    // Helper maze used only for coordinate arithmetic during carving.
    GridMaze frame(width, height, walls, {1, 1}, {1, 1}, seed);

    SplitMix64 rng(seed);
    visited[0] = true;  // carve from (1,1)
    stack.push_back(0);

    while (!stack.empty()) {
        const CellCoord cur = frame.cell_at(stack.back());

        std::array<Direction, 4> candidates{};
        std::uint32_t n = 0;
        for (std::uint8_t d = 0; d < 4; ++d) {
            const auto dir = static_cast<Direction>(d);
            CellCoord next;
            if (step_in_grid(frame, cur, dir, next) && !visited[frame.cell_index(next)]) {
                candidates[n++] = dir;
            }
        }
        if (n == 0) {
            stack.pop_back();
            continue;
        }
        const Direction dir = candidates[rng.below(n)];
        CellCoord next;
        step_in_grid(frame, cur, dir, next);
        walls[frame.cell_index(cur)] |= wall_bit(dir);
        walls[frame.cell_index(next)] |= wall_bit(opposite(dir));
        visited[frame.cell_index(next)] = true;
        stack.push_back(static_cast<std::uint32_t>(frame.cell_index(next)));
    }

    return GridMaze(width, height, std::move(walls), {height, width}, {1, 1}, seed);
}

ValidationReport validate_perfect(const GridMaze& maze) {
    ValidationReport report;
    auto violate = [&report](std::string msg) {
        report.ok = false;
        report.violations.push_back(std::move(msg));
    };

    std::size_t open_half_walls = 0;
    for (std::size_t i = 0; i < maze.cell_count(); ++i) {
        const CellCoord c = maze.cell_at(i);
        for (std::uint8_t d = 0; d < 4; ++d) {
            const auto dir = static_cast<Direction>(d);
            if (!maze.is_open(c, dir)) continue;
            ++open_half_walls;
            CellCoord n;
            if (!step_in_grid(maze, c, dir, n)) {
                violate("boundary: cell (" + std::to_string(c.row) + "," + std::to_string(c.col) +
                        ") open toward the outside");
                continue;
            }
            if (!maze.is_open(n, opposite(dir))) {
                violate("symmetry: (" + std::to_string(c.row) + "," + std::to_string(c.col) +
                        ") open toward (" + std::to_string(n.row) + "," + std::to_string(n.col) +
                        ") but not vice versa");
            }
        }
    }

    // Every symmetric internal opening contributes two half-walls.
    const std::size_t edges = open_half_walls / 2;
    if (edges != maze.cell_count() - 1) {
        violate("cycle/edge-count: " + std::to_string(edges) + " open wall pairs, expected " +
                std::to_string(maze.cell_count() - 1));
    }

    // Connectivity from (1,1) over open walls.
    std::vector<bool> seen(maze.cell_count(), false);
    std::vector<std::uint32_t> frontier{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!frontier.empty()) {
        const CellCoord c = maze.cell_at(frontier.back());
        frontier.pop_back();
        for (std::uint8_t d = 0; d < 4; ++d) {
            const auto dir = static_cast<Direction>(d);
            CellCoord n;
            if (!maze.is_open(c, dir) || !step_in_grid(maze, c, dir, n)) continue;
            const std::size_t ni = maze.cell_index(n);
            if (!seen[ni]) {
                seen[ni] = true;
                ++reached;
                frontier.push_back(static_cast<std::uint32_t>(ni));
            }
        }
    }
    if (reached != maze.cell_count()) {
        violate("connectivity: only " + std::to_string(reached) + " of " +
                std::to_string(maze.cell_count()) + " cells reachable from (1,1)");
    }

    return report;
}

std::vector<CellCoord> open_neighbors(const GridMaze& maze, CellCoord c) {
    if (!maze.in_grid(c)) throw std::invalid_argument("coordinate outside grid");
    std::vector<CellCoord> out;
    out.reserve(4);
    for (std::uint8_t d = 0; d < 4; ++d) {
        const auto dir = static_cast<Direction>(d);
        CellCoord n;
        if (maze.is_open(c, dir) && step_in_grid(maze, c, dir, n)) out.push_back(n);
    }
    return out;
}

std::string serialize_maze(const GridMaze& maze) {
    std::ostringstream out;
    out << "LLMAZE 1\n";
    out << maze.width() << ' ' << maze.height() << ' ' << maze.seed() << '\n';
    out << maze.start().row << ' ' << maze.start().col << ' ' << maze.goal().row << ' '
        << maze.goal().col << '\n';
    for (std::uint32_t r = 1; r <= maze.height(); ++r) {
        for (std::uint32_t c = 1; c <= maze.width(); ++c) {
            if (c > 1) out << ' ';
            out << std::hex << static_cast<unsigned>(maze.wall_mask({r, c})) << std::dec;
        }
        out << '\n';
    }
    std::string body = out.str();
    char crc[16];
    std::snprintf(crc, sizeof(crc), "%08x", crc32_of(body));
    body += "CRC32 ";
    body += crc;
    body += '\n';
    return body;
}

GridMaze parse_maze(const std::string& text) {
    // The checksum line covers every byte before it; split it off first.
    const std::string marker = "CRC32 ";
    const std::size_t crc_pos = text.rfind(marker);
    if (crc_pos == std::string::npos || crc_pos + marker.size() + 8 > text.size()) {
        throw FormatError("maze file: missing CRC32 line");
    }
    const std::string body = text.substr(0, crc_pos);
    const std::string crc_hex = text.substr(crc_pos + marker.size(), 8);
    const std::string after = text.substr(crc_pos + marker.size() + 8);
    if (!after.empty() && after != "\n") {
        throw FormatError("maze file: trailing content after CRC32 line");
    }
    std::uint32_t stored_crc = 0;
    if (std::sscanf(crc_hex.c_str(), "%8x", &stored_crc) != 1) {
        throw FormatError("maze file: unreadable CRC32 value");
    }
    if (stored_crc != crc32_of(body)) throw FormatError("maze file: CRC32 mismatch");

    std::istringstream in(body);
    std::string magic;
    int version = 0;
    if (!(in >> magic >> version) || magic != "LLMAZE") {
        throw FormatError("maze file: bad magic");
    }
    if (version != 1) throw FormatError("maze file: unsupported version");

    std::uint32_t width = 0, height = 0;
    std::uint64_t seed = 0;
    CellCoord start, goal;
    if (!(in >> width >> height >> seed >> start.row >> start.col >> goal.row >> goal.col)) {
        throw FormatError("maze file: truncated header");
    }
    if (width == 0 || height == 0) throw ValidationError("maze file: zero dimension");

    std::vector<std::uint8_t> walls;
    walls.reserve(static_cast<std::size_t>(width) * height);
    for (std::size_t i = 0; i < static_cast<std::size_t>(width) * height; ++i) {
        std::string tok;
        if (!(in >> tok)) throw FormatError("maze file: truncated wall masks");
        if (tok.size() != 1) throw FormatError("maze file: wall mask '" + tok + "' not a hex digit");
        const char ch = tok[0];
        unsigned v = 0;
        if (ch >= '0' && ch <= '9') v = static_cast<unsigned>(ch - '0');
        else if (ch >= 'a' && ch <= 'f') v = static_cast<unsigned>(ch - 'a') + 10;
        else throw FormatError("maze file: wall mask '" + tok + "' not a hex digit");
        walls.push_back(static_cast<std::uint8_t>(v));
    }
    std::string trailing;
    if (in >> trailing) throw FormatError("maze file: trailing content after wall masks");

    GridMaze maze = [&] {
        try {
            return GridMaze(width, height, std::move(walls), start, goal, seed);
        } catch (const std::invalid_argument& e) {
            throw ValidationError(std::string("maze file: ") + e.what());
        }
    }();

    // Structural consistency only; perfectness is validate_perfect's job.
    for (std::size_t i = 0; i < maze.cell_count(); ++i) {
        const CellCoord c = maze.cell_at(i);
        for (std::uint8_t d = 0; d < 4; ++d) {
            const auto dir = static_cast<Direction>(d);
            if (!maze.is_open(c, dir)) continue;
            CellCoord n;
            if (!step_in_grid(maze, c, dir, n)) {
                throw ValidationError("maze file: cell open toward the grid boundary");
            }
            if (!maze.is_open(n, opposite(dir))) {
                throw ValidationError("maze file: asymmetric wall openness");
            }
        }
    }
    return maze;
}

void save_maze(const GridMaze& maze, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    const std::string text = serialize_maze(maze);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

GridMaze load_maze(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_maze(buf.str());
}

}  // namespace layoutlab
