#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trace.hpp"

namespace layoutlab {

// One set-associative level. Replacement is exact LRU; writes are
// write-back + write-allocate; the hierarchy is inclusive.
struct CacheLevelConfig {
    std::string name;
    std::uint64_t capacity_bytes = 0;
    std::uint32_t associativity = 0;
    std::uint32_t line_bytes = 0;
};

struct CacheConfig {
    std::vector<CacheLevelConfig> levels;  // ordered nearest (D1) to last (LL)
};

// i5-7200U derived defaults: D1 = 32 KiB 8-way (the CPU's 128 KB total L1
// is two cores x split I/D; the per-core data half is 32 KiB), LL = the
// 3 MiB L3, 12-way. 64-byte lines.
CacheConfig default_config();

// Throws ConfigError unless every capacity divides into whole sets of
// power-of-two lines and all levels share one line size.
void validate_config(const CacheConfig& cfg);

struct CacheLevelReport {
    std::string name;
    std::uint64_t accesses = 0;
    std::uint64_t misses = 0;
    // 100*misses/accesses, 0 when there were no accesses.
    double miss_pct() const {
        return accesses == 0 ? 0.0 : 100.0 * static_cast<double>(misses) /
                                         static_cast<double>(accesses);
    }
};

struct CacheReport {
    std::vector<CacheLevelReport> levels;
    std::uint64_t d_refs = 0;  // trace event count before line splitting

    const CacheLevelReport& level(const std::string& name) const;
};

// Replays the trace through the hierarchy from a cold state. Pure
// function of (trace, cfg): same inputs, same report. Events that span a
// line boundary are split into one access per touched line.
CacheReport simulate(const MemoryTrace& trace, const CacheConfig& cfg);

struct RatioEntry {
    std::string name;        // e.g. "D1.misses"
    double ratio = 0.0;      // a.metric / b.metric
    bool infinite = false;   // a > 0 while b == 0
};

using RatioTable = std::vector<RatioEntry>;

// Per-level access and miss ratios a/b, plus d_refs. 0/0 compares as 1.0;
// x/0 with x > 0 sets the infinite flag. Throws std::invalid_argument
// when the level sets differ.
RatioTable compare_reports(const CacheReport& a, const CacheReport& b);

// "default" or a key=value file with d1.capacity, d1.associativity,
// d1.line, ll.capacity, ll.associativity, ll.line (missing keys keep the
// default value). Throws ConfigError on unreadable input.
CacheConfig parse_cache_spec(const std::string& spec);

}  // namespace layoutlab
