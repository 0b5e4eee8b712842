#include "parallel.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <stdexcept>

#include "errors.hpp"
#include "open_list.hpp"
#include "task_pool.hpp"

namespace layoutlab {

SearchResult astar_mt(const GridMaze& maze, NodeStore& store, const ParallelPlan& plan) {
    if (plan.workers < 1) throw std::invalid_argument("plan.workers must be >= 1");
    if (plan.batch < 1) throw std::invalid_argument("plan.batch must be >= 1");
    if (store.capacity() != maze.cell_count()) {
        throw std::invalid_argument("store capacity != maze cell count");
    }

    const CellCoord start = maze.start();
    const CellCoord goal = maze.goal();
    const auto goal_idx = static_cast<std::uint32_t>(maze.cell_index(goal));

    SearchResult result;
    OpenList open;
    // One mutual-exclusion region guards the open list and all store
    // mutation; workers and the controlling thread take it alike.
    std::mutex state_mutex;
    TaskPool pool(plan.workers);

    {
        std::lock_guard lock(state_mutex);
        const auto start_idx = static_cast<std::uint32_t>(maze.cell_index(start));
        const double h0 = static_cast<double>(manhattan(start, goal));
        store.set_field(start_idx, Field::G, 0.0);
        store.set_field(start_idx, Field::F, h0);
        store.set_status(start_idx, CellStatus::Open);
        open.push({h0, 0.0, start_idx});
        ++result.heap_pushes;
    }

    bool found = false;
    while (true) {
        OpenEntry entry;
        {
            std::lock_guard lock(state_mutex);
            // Lazy deletion, same rules as the single-threaded executor.
            while (true) {
                if (open.empty()) goto drained;
                entry = open.top();
                open.pop();
                ++result.heap_pops;
                if (store.status(entry.cell) == CellStatus::Closed) continue;
                if (entry.f > store.get_field(entry.cell, Field::F)) continue;
                break;
            }
            store.set_status(entry.cell, CellStatus::Closed);
            ++result.expansions;
            result.expansion_order.push_back(entry.cell);
        }

        if (entry.cell == goal_idx) {
            found = true;
            break;
        }

        double g_cur;
        std::vector<CellCoord> neighbors;
        {
            std::lock_guard lock(state_mutex);
            g_cur = store.get_field(entry.cell, Field::G);
            neighbors = open_neighbors(maze, maze.cell_at(entry.cell));
        }

        // Fan out this expansion's neighbor relaxations, then barrier.
        for (std::size_t base = 0; base < neighbors.size(); base += plan.batch) {
            const std::size_t end = std::min(neighbors.size(), base + plan.batch);
            pool.submit([&, base, end, g_cur, parent_cell = entry.cell] {
                for (std::size_t k = base; k < end; ++k) {
                    const CellCoord nb = neighbors[k];
                    const auto nb_idx = static_cast<std::uint32_t>(maze.cell_index(nb));
                    std::lock_guard lock(state_mutex);
                    if (store.status(nb_idx) == CellStatus::Closed) continue;
                    const double tentative = g_cur + 1.0;
                    if (tentative < store.get_field(nb_idx, Field::G)) {
                        const double f =
                            tentative + static_cast<double>(manhattan(nb, goal));
                        store.set_field(nb_idx, Field::G, tentative);
                        store.set_field(nb_idx, Field::F, f);
                        store.set_parent(nb_idx, parent_cell);
                        store.set_status(nb_idx, CellStatus::Open);
                        open.push({f, tentative, nb_idx});
                        ++result.heap_pushes;
                    }
                }
            });
        }
        pool.wait_idle();
    }
drained:

    if (!found) throw NoPathError("goal unreachable from start");

    result.path = reconstruct_path(maze, store, goal);
    result.cost = result.path.size() - 1;
    if (store.tracing()) result.trace = store.trace();
    if (plan.instrument) result.worker_task_counts = pool.task_counts();
    return result;
}

std::uint32_t observed_worker_count(const SearchResult& result) {
    if (!result.worker_task_counts) {
        throw UnavailableError("run was not instrumented with worker task counts");
    }
    const auto busy = static_cast<std::uint32_t>(
        std::count_if(result.worker_task_counts->begin(), result.worker_task_counts->end(),
                      [](std::uint64_t n) { return n > 0; }));
    return std::max<std::uint32_t>(1, busy);
}

}  // namespace layoutlab
