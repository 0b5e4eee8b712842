#include "cache_sim.hpp"

#include <bit>
#include <charconv>
#include <limits>
#include <stdexcept>

#include "errors.hpp"
#include "kv_file.hpp"

namespace layoutlab {

namespace {

struct Way {
    std::uint64_t line = 0;   // line address (byte address / line size)
    std::uint64_t stamp = 0;  // last-use tick; larger = more recent
    bool valid = false;
    bool dirty = false;
};

class SimLevel {
public:
    explicit SimLevel(const CacheLevelConfig& cfg)
        : sets_(cfg.capacity_bytes / (static_cast<std::uint64_t>(cfg.associativity) *
                                      cfg.line_bytes)),
          ways_per_set_(cfg.associativity), slots_(sets_ * ways_per_set_) {}

    Way* find(std::uint64_t line) {
        Way* base = set_of(line);
        for (std::uint32_t w = 0; w < ways_per_set_; ++w) {
            if (base[w].valid && base[w].line == line) return &base[w];
        }
        return nullptr;
    }

    // Invalid way if any, else exact LRU (lowest stamp; ties broken by
    // lowest way index, so replacement is fully deterministic).
    Way* pick_victim(std::uint64_t line) {
        Way* base = set_of(line);
        Way* victim = &base[0];
        for (std::uint32_t w = 0; w < ways_per_set_; ++w) {
            if (!base[w].valid) return &base[w];
            if (base[w].stamp < victim->stamp) victim = &base[w];
        }
        return victim;
    }

    void invalidate(std::uint64_t line) {
        if (Way* w = find(line)) *w = Way{};
    }

    std::uint64_t accesses = 0;
    std::uint64_t misses = 0;

private:
    Way* set_of(std::uint64_t line) { return &slots_[(line % sets_) * ways_per_set_]; }

    std::uint64_t sets_;
    std::uint32_t ways_per_set_;
    std::vector<Way> slots_;
};

class Hierarchy {
public:
    explicit Hierarchy(const CacheConfig& cfg) : line_bytes_(cfg.levels.front().line_bytes) {
        levels_.reserve(cfg.levels.size());
        for (const CacheLevelConfig& lvl : cfg.levels) levels_.emplace_back(lvl);
    }

    void access(const TraceEvent& e) {
        const std::uint64_t span = e.size > 0 ? e.size : 1;
        const std::uint64_t first = e.address / line_bytes_;
        const std::uint64_t last = (e.address + span - 1) / line_bytes_;
        for (std::uint64_t line = first; line <= last; ++line) {
            access_line(0, line, e.op == MemOp::Write);
        }
    }

    const SimLevel& level(std::size_t i) const { return levels_[i]; }

private:
    void access_line(std::size_t i, std::uint64_t line, bool is_write) {
        SimLevel& lvl = levels_[i];
        ++lvl.accesses;
        if (Way* hit = lvl.find(line)) {
            hit->stamp = ++tick_;
            if (is_write) hit->dirty = true;
            return;
        }
        ++lvl.misses;
        // Write-allocate: the miss fetches the line; only the originating
        // level's copy becomes dirty.
        if (i + 1 < levels_.size()) access_line(i + 1, line, false);

        Way* victim = lvl.pick_victim(line);
        if (victim->valid) evict(i, *victim);
        *victim = Way{line, ++tick_, true, is_write};
    }

    void evict(std::size_t i, const Way& victim) {
        // Dirty write-back updates the next level's copy in place. The
        // copy is present: inclusion guarantees every valid upper-level
        // line exists below, and counters model demand traffic only.
        if (victim.dirty && i + 1 < levels_.size()) {
            if (Way* below = levels_[i + 1].find(victim.line)) below->dirty = true;
        }
        // Inclusive hierarchy: a line evicted from a lower level may not
        // survive above it.
        for (std::size_t upper = 0; upper < i; ++upper) {
            levels_[upper].invalidate(victim.line);
        }
    }

    std::uint64_t line_bytes_;
    std::uint64_t tick_ = 0;
    std::vector<SimLevel> levels_;
};

std::uint64_t parse_u64(const std::string& value, const std::string& key) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ConfigError("cache spec: bad numeric value for " + key + ": '" + value + "'");
    }
    return out;
}

}  // namespace

CacheConfig default_config() {
    return CacheConfig{{
        {"D1", 32 * 1024, 8, 64},
        {"LL", 3 * 1024 * 1024, 12, 64},
    }};
}

void validate_config(const CacheConfig& cfg) {
    if (cfg.levels.empty()) throw ConfigError("cache config: no levels");
    const std::uint32_t line = cfg.levels.front().line_bytes;
    for (const CacheLevelConfig& lvl : cfg.levels) {
        if (lvl.name.empty()) throw ConfigError("cache config: unnamed level");
        if (lvl.line_bytes == 0 || !std::has_single_bit(lvl.line_bytes)) {
            throw ConfigError("cache config: " + lvl.name + ": line size must be a power of two");
        }
        if (lvl.line_bytes != line) {
            throw ConfigError("cache config: line size must be identical across levels");
        }
        if (lvl.associativity == 0) {
            throw ConfigError("cache config: " + lvl.name + ": associativity must be >= 1");
        }
        const std::uint64_t set_bytes =
            static_cast<std::uint64_t>(lvl.associativity) * lvl.line_bytes;
        if (lvl.capacity_bytes == 0 || lvl.capacity_bytes % set_bytes != 0) {
            throw ConfigError("cache config: " + lvl.name +
                              ": capacity must divide into associativity x line");
        }
    }
    for (std::size_t i = 0; i < cfg.levels.size(); ++i) {
        for (std::size_t j = i + 1; j < cfg.levels.size(); ++j) {
            if (cfg.levels[i].name == cfg.levels[j].name) {
                throw ConfigError("cache config: duplicate level name " + cfg.levels[i].name);
            }
        }
    }
}

const CacheLevelReport& CacheReport::level(const std::string& name) const {
    for (const CacheLevelReport& lvl : levels) {
        if (lvl.name == name) return lvl;
    }
    throw std::invalid_argument("no cache level named " + name);
}

CacheReport simulate(const MemoryTrace& trace, const CacheConfig& cfg) {
    validate_config(cfg);
    Hierarchy hierarchy(cfg);
    for (const TraceEvent& e : trace) hierarchy.access(e);

    CacheReport report;
    report.d_refs = trace.size();
    for (std::size_t i = 0; i < cfg.levels.size(); ++i) {
        report.levels.push_back(
            {cfg.levels[i].name, hierarchy.level(i).accesses, hierarchy.level(i).misses});
    }
    return report;
}

RatioTable compare_reports(const CacheReport& a, const CacheReport& b) {
    if (a.levels.size() != b.levels.size()) {
        throw std::invalid_argument("compare_reports: mismatched level sets");
    }
    for (std::size_t i = 0; i < a.levels.size(); ++i) {
        if (a.levels[i].name != b.levels[i].name) {
            throw std::invalid_argument("compare_reports: mismatched level sets");
        }
    }

    RatioTable table;
    auto push = [&table](const std::string& name, std::uint64_t x, std::uint64_t y) {
        RatioEntry e{name, 0.0, false};
        if (y == 0) {
            if (x == 0) {
                e.ratio = 1.0;
            } else {
                e.ratio = std::numeric_limits<double>::infinity();
                e.infinite = true;
            }
        } else {
            e.ratio = static_cast<double>(x) / static_cast<double>(y);
        }
        table.push_back(e);
    };
    for (std::size_t i = 0; i < a.levels.size(); ++i) {
        push(a.levels[i].name + ".accesses", a.levels[i].accesses, b.levels[i].accesses);
        push(a.levels[i].name + ".misses", a.levels[i].misses, b.levels[i].misses);
    }
    push("d_refs", a.d_refs, b.d_refs);
    return table;
}

CacheConfig parse_cache_spec(const std::string& spec) {
    if (spec == "default") return default_config();

    CacheConfig cfg = default_config();
    const std::string text = [&] {
        try {
            return read_text_file(spec);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("cache spec: ") + e.what());
        }
    }();
    for (const auto& [key, value] : parse_key_values(text)) {
        CacheLevelConfig* lvl = nullptr;
        std::string field;
        if (key.rfind("d1.", 0) == 0) {
            lvl = &cfg.levels[0];
            field = key.substr(3);
        } else if (key.rfind("ll.", 0) == 0) {
            lvl = &cfg.levels[1];
            field = key.substr(3);
        } else {
            throw ConfigError("cache spec: unknown key '" + key + "'");
        }
        if (field == "capacity") lvl->capacity_bytes = parse_u64(value, key);
        else if (field == "associativity") lvl->associativity =
            static_cast<std::uint32_t>(parse_u64(value, key));
        else if (field == "line") lvl->line_bytes = static_cast<std::uint32_t>(parse_u64(value, key));
        else throw ConfigError("cache spec: unknown key '" + key + "'");
    }
    validate_config(cfg);
    return cfg;
}

}  // namespace layoutlab
