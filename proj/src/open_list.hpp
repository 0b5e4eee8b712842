#pragma once

#include <cstdint>
#include <queue>
#include <vector>

namespace layoutlab {

// Open-list entry: f/g snapshots taken at push time plus the cell index.
struct OpenEntry {
    double f = 0.0;
    double g = 0.0;
    std::uint32_t cell = 0;
};

// Total order: lowest f first, then larger g first (deeper nodes win
// ties), then smaller row-major cell index. Totality is what makes every
// run deterministic, including the multi-threaded executor: the minimum
// of the open list is unique up to duplicate entries for the same cell.
struct PopsLater {
    bool operator()(const OpenEntry& a, const OpenEntry& b) const {
        if (a.f != b.f) return a.f > b.f;
        if (a.g != b.g) return a.g < b.g;
        return a.cell > b.cell;
    }
};

using OpenList = std::priority_queue<OpenEntry, std::vector<OpenEntry>, PopsLater>;

}  // namespace layoutlab
