#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "maze.hpp"
#include "node_store.hpp"
#include "trace.hpp"

namespace layoutlab {

struct SearchResult {
    std::vector<CellCoord> path;             // start first, goal last
    std::uint64_t cost = 0;                  // unit steps = path length - 1
    std::uint64_t expansions = 0;            // nodes moved to closed
    std::uint64_t heap_pushes = 0;
    std::uint64_t heap_pops = 0;
    std::vector<std::uint32_t> expansion_order;  // closed cells, row-major indices
    std::optional<MemoryTrace> trace;
    // Tasks executed per pool worker; present only for instrumented
    // multi-threaded runs.
    std::optional<std::vector<std::uint64_t>> worker_task_counts;
};

std::uint64_t manhattan(CellCoord c, CellCoord d);

// A* with unit edge cost over the maze's open walls, using `store` for the
// per-cell row/col/g/f fields and parent/status bookkeeping. The open list
// is a binary min-heap ordered by (f, then larger g first, then smaller
// row-major index); stale heap entries are dropped lazily on pop. The
// ordering is total, so runs are deterministic and layout-independent.
// Requires store.capacity == width*height. Throws NoPathError when the
// goal is unreachable.
SearchResult astar(const GridMaze& maze, NodeStore& store);

// Exact shortest-path step count by exhaustive breadth-first traversal.
// Deliberately shares nothing with astar: no store, no heap, no heuristic.
std::uint64_t bfs_oracle(const GridMaze& maze, CellCoord start, CellCoord goal);

// Follows parent links goal -> start and returns the reversed list,
// mapping parent indices to coordinates through the maze's row-major
// indexing. Throws InternalStateError if the chain is broken or cyclic.
std::vector<CellCoord> reconstruct_path(const GridMaze& maze, NodeStore& store, CellCoord goal);

}  // namespace layoutlab
