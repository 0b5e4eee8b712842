#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace layoutlab {

// 1-based grid coordinate. Row 1 is the top row, column 1 the leftmost
// column; the conventional start corner (height, width) is bottom-right.
struct CellCoord {
    std::uint32_t row = 0;
    std::uint32_t col = 0;

    friend bool operator==(const CellCoord&, const CellCoord&) = default;
};

// Wall-openness bits of one cell. A set bit means the passage toward that
// side is open. Openness is stored on both sides of a shared wall.
enum WallBit : std::uint8_t {
    kNorthOpen = 1u << 0,
    kEastOpen = 1u << 1,
    kSouthOpen = 1u << 2,
    kWestOpen = 1u << 3,
};

enum class Direction : std::uint8_t { North = 0, East = 1, South = 2, West = 3 };

Direction opposite(Direction d);
WallBit wall_bit(Direction d);

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;
};

// Immutable rectangular maze. `walls[i]` holds the 4-bit openness mask of
// the cell with row-major index i = (row-1)*width + (col-1).
class GridMaze {
public:
    GridMaze(std::uint32_t width, std::uint32_t height, std::vector<std::uint8_t> walls,
             CellCoord start, CellCoord goal, std::uint64_t seed);

    std::uint32_t width() const { return width_; }
    std::uint32_t height() const { return height_; }
    std::uint64_t seed() const { return seed_; }
    CellCoord start() const { return start_; }
    CellCoord goal() const { return goal_; }
    std::size_t cell_count() const { return static_cast<std::size_t>(width_) * height_; }

    bool in_grid(CellCoord c) const {
        return c.row >= 1 && c.row <= height_ && c.col >= 1 && c.col <= width_;
    }

    std::size_t cell_index(CellCoord c) const {
        return static_cast<std::size_t>(c.row - 1) * width_ + (c.col - 1);
    }

    CellCoord cell_at(std::size_t index) const {
        return {static_cast<std::uint32_t>(index / width_) + 1,
                static_cast<std::uint32_t>(index % width_) + 1};
    }

    std::uint8_t wall_mask(CellCoord c) const { return walls_[cell_index(c)]; }
    const std::vector<std::uint8_t>& walls() const { return walls_; }

    bool is_open(CellCoord c, Direction d) const { return (wall_mask(c) & wall_bit(d)) != 0; }

    // Copies of this maze with a different start/goal; used for the
    // harness's endpoint overrides. Throws std::invalid_argument if the
    // coordinate lies outside the grid.
    GridMaze with_start(CellCoord start) const;
    GridMaze with_goal(CellCoord goal) const;

    friend bool operator==(const GridMaze&, const GridMaze&) = default;

private:
    std::uint32_t width_;
    std::uint32_t height_;
    std::vector<std::uint8_t> walls_;
    CellCoord start_;
    CellCoord goal_;
    std::uint64_t seed_;
};

// Randomized depth-first backtracker with an explicit stack, driven by
// SplitMix64. Produces a spanning tree of the grid by construction.
// Start defaults to the bottom-right corner, goal to (1,1).
GridMaze generate_perfect_maze(std::uint32_t width, std::uint32_t height, std::uint64_t seed);

// Checks wall symmetry, closed boundary, connectivity and the spanning
// tree edge count (cells - 1). Violations are reported, never thrown.
ValidationReport validate_perfect(const GridMaze& maze);

// Neighbors reachable through open walls, always in North, East, South,
// West order. Throws std::invalid_argument for out-of-grid coordinates.
std::vector<CellCoord> open_neighbors(const GridMaze& maze, CellCoord c);

// Text format, round-trips bit-exactly:
//   LLMAZE 1
//   <width> <height> <seed>
//   <start_row> <start_col> <goal_row> <goal_col>
//   <height rows of width space-separated hex wall masks>
//   CRC32 <8 hex digits over all preceding bytes>
std::string serialize_maze(const GridMaze& maze);
GridMaze parse_maze(const std::string& text);

void save_maze(const GridMaze& maze, const std::string& path);
GridMaze load_maze(const std::string& path);

}  // namespace layoutlab
