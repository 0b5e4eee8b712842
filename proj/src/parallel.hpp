#pragma once

#include <cstdint>

#include "search.hpp"

namespace layoutlab {

// Execution plan for the multi-threaded A* variant.
//   workers    - fixed pool size, created once per run.
//   batch      - neighbor relaxations grouped into one task; 1 is the
//                finest grain (one task per neighbor, at most 4 per
//                expansion on a grid).
//   instrument - record per-worker task counts in the result.
struct ParallelPlan {
    std::uint32_t workers = 1;
    std::uint32_t batch = 1;
    bool instrument = true;
};

// Multi-threaded A*: the controlling thread pops one node per iteration,
// fans its neighbor relaxations out to the pool, and waits for the batch
// to drain before the next pop. Shared state (open list, store) is
// guarded by one mutex. Deliberately fine-grained: per-expansion task
// dispatch plus a barrier is the pattern whose scheduling overhead the
// harness measures, and an optimized coarse-grained mode is a non-goal.
//
// Cost always equals the single-threaded result; with batch semantics as
// above the expansion sequence matches astar exactly as well.
SearchResult astar_mt(const GridMaze& maze, NodeStore& store, const ParallelPlan& plan);

// Number of distinct pool workers that executed at least one task, never
// less than 1 (the controlling thread always works). Throws
// UnavailableError if the run was not instrumented.
std::uint32_t observed_worker_count(const SearchResult& result);

}  // namespace layoutlab
