#include "search.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "errors.hpp"
#include "open_list.hpp"

namespace layoutlab {

namespace {

std::uint64_t abs_diff(std::uint32_t a, std::uint32_t b) {
    return a > b ? a - b : b - a;
}

}  // namespace

std::uint64_t manhattan(CellCoord c, CellCoord d) {
    return abs_diff(c.row, d.row) + abs_diff(c.col, d.col);
}

SearchResult astar(const GridMaze& maze, NodeStore& store) {
    if (store.capacity() != maze.cell_count()) {
        throw std::invalid_argument("store capacity != maze cell count");
    }
    const CellCoord start = maze.start();
    const CellCoord goal = maze.goal();
    const auto start_idx = static_cast<std::uint32_t>(maze.cell_index(start));
    const auto goal_idx = static_cast<std::uint32_t>(maze.cell_index(goal));

    SearchResult result;
    OpenList open;

    // Only g and f are hot: coordinates derive from the row-major index
    // mapping, so the Row/Col fields stay as constructed.
    const double h0 = static_cast<double>(manhattan(start, goal));
    store.set_field(start_idx, Field::G, 0.0);
    store.set_field(start_idx, Field::F, h0);
    store.set_status(start_idx, CellStatus::Open);
    open.push({h0, 0.0, start_idx});
    ++result.heap_pushes;

    bool found = false;
    while (!open.empty()) {
        const OpenEntry entry = open.top();
        open.pop();
        ++result.heap_pops;

        if (store.status(entry.cell) == CellStatus::Closed) continue;
        // Lazy deletion: a later relaxation lowered this cell's f, so a
        // fresher entry is still in the queue.
        if (entry.f > store.get_field(entry.cell, Field::F)) continue;

        store.set_status(entry.cell, CellStatus::Closed);
        ++result.expansions;
        result.expansion_order.push_back(entry.cell);

        if (entry.cell == goal_idx) {
            found = true;
            break;
        }

        const double g_cur = store.get_field(entry.cell, Field::G);
        const CellCoord cur = maze.cell_at(entry.cell);
        for (const CellCoord nb : open_neighbors(maze, cur)) {
            const auto nb_idx = static_cast<std::uint32_t>(maze.cell_index(nb));
            if (store.status(nb_idx) == CellStatus::Closed) continue;
            const double tentative = g_cur + 1.0;
            if (tentative < store.get_field(nb_idx, Field::G)) {
                const double f = tentative + static_cast<double>(manhattan(nb, goal));
                store.set_field(nb_idx, Field::G, tentative);
                store.set_field(nb_idx, Field::F, f);
                store.set_parent(nb_idx, entry.cell);
                store.set_status(nb_idx, CellStatus::Open);
                open.push({f, tentative, nb_idx});
                ++result.heap_pushes;
            }
        }
    }

    if (!found) throw NoPathError("goal unreachable from start");

    result.path = reconstruct_path(maze, store, goal);
    result.cost = result.path.size() - 1;
    if (store.tracing()) result.trace = store.trace();
    return result;
}

std::uint64_t bfs_oracle(const GridMaze& maze, CellCoord start, CellCoord goal) {
    if (!maze.in_grid(start) || !maze.in_grid(goal)) {
        throw std::invalid_argument("start/goal outside grid");
    }
    constexpr std::uint64_t kUnreached = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint64_t> dist(maze.cell_count(), kUnreached);
    std::vector<std::uint32_t> queue;
    queue.reserve(maze.cell_count());

    dist[maze.cell_index(start)] = 0;
    queue.push_back(static_cast<std::uint32_t>(maze.cell_index(start)));
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::uint32_t cur = queue[head];
        if (cur == maze.cell_index(goal)) return dist[cur];
        for (const CellCoord nb : open_neighbors(maze, maze.cell_at(cur))) {
            const std::size_t ni = maze.cell_index(nb);
            if (dist[ni] == kUnreached) {
                dist[ni] = dist[cur] + 1;
                queue.push_back(static_cast<std::uint32_t>(ni));
            }
        }
    }
    throw NoPathError("goal unreachable from start");
}

std::vector<CellCoord> reconstruct_path(const GridMaze& maze, NodeStore& store, CellCoord goal) {
    auto cur = static_cast<std::uint32_t>(maze.cell_index(goal));
    if (store.status(cur) == CellStatus::Unvisited) {
        throw InternalStateError("reconstruct: goal cell was never reached");
    }

    std::vector<CellCoord> path;
    while (true) {
        if (path.size() > store.capacity()) {
            throw InternalStateError("reconstruct: parent chain cycle");
        }
        if (store.status(cur) == CellStatus::Unvisited) {
            throw InternalStateError("reconstruct: parent chain crosses an unvisited cell");
        }
        path.push_back(maze.cell_at(cur));
        const std::uint32_t parent = store.parent(cur);
        if (parent == kNoParent) break;  // chain root: the start cell
        cur = parent;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace layoutlab
