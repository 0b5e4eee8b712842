#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <vector>

#include "trace.hpp"

namespace layoutlab {

enum class Layout : std::uint8_t { AoS = 0, SoA = 1 };

// The four per-cell search fields. Field ids double as layout offsets:
// AoS record slot and SoA region number.
enum class Field : std::uint32_t { Row = 0, Col = 1, G = 2, F = 3 };

inline constexpr std::uint32_t kFieldCount = 4;
inline constexpr std::uint64_t kFieldBytes = 8;       // every field is a 64-bit real
inline constexpr std::uint64_t kRecordBytes = 32;     // AoS stride: 4 naturally packed fields
inline constexpr std::uint64_t kRegionAlign = 64;     // SoA regions start on cache-line bounds

enum class CellStatus : std::uint8_t { Unvisited = 0, Open = 1, Closed = 2 };

inline constexpr std::uint32_t kNoParent = std::numeric_limits<std::uint32_t>::max();

constexpr std::uint64_t align64(std::uint64_t bytes) {
    return (bytes + kRegionAlign - 1) / kRegionAlign * kRegionAlign;
}

// Model byte address of (cell, field) with the store origin at 0. These
// mappings are shared verbatim by the store, the cache simulator's
// expectations and the tests.
constexpr std::uint64_t aos_address(std::uint64_t cell, Field field) {
    return cell * kRecordBytes + static_cast<std::uint64_t>(field) * kFieldBytes;
}

constexpr std::uint64_t soa_address(std::uint64_t cell, Field field, std::uint64_t capacity) {
    return static_cast<std::uint64_t>(field) * align64(capacity * kFieldBytes) +
           cell * kFieldBytes;
}

// Bytes occupied by the traced field regions alone.
constexpr std::uint64_t field_region_bytes(Layout layout, std::uint64_t capacity) {
    return layout == Layout::AoS ? capacity * kRecordBytes
                                 : kFieldCount * align64(capacity * kFieldBytes);
}

// Fixed per-store overhead charged by the memory model for either layout
// (control block: layout tag, capacity, buffer pointer and trace hook).
inline constexpr std::uint64_t kStoreOverheadBytes = 64;

// Deterministic byte accounting for one store: traced field regions plus
// the per-cell bookkeeping (4-byte parent, 1-byte status) and the fixed
// overhead. Stands in for OS-level resident-memory sampling.
constexpr std::uint64_t memory_model_bytes(Layout layout, std::uint64_t capacity) {
    return field_region_bytes(layout, capacity) + capacity * 4 + capacity * 1 +
           kStoreOverheadBytes;
}

// Layout-polymorphic store of per-cell search fields. The backing buffer
// is physically arranged exactly as the model mapping says, so a model
// address is also the real offset of the value inside the buffer. AoS and
// SoA stores are observationally identical through this interface; only
// the addresses in an attached trace differ.
//
// Not safe for concurrent mutation. With tracing on, all access must be
// single-threaded so the trace order is deterministic.
class NodeStore {
public:
    NodeStore(Layout layout, std::uint64_t capacity, bool trace_enabled);

    Layout layout() const { return layout_; }
    std::uint64_t capacity() const { return capacity_; }
    bool tracing() const { return trace_enabled_; }

    std::uint64_t address_of(std::uint64_t cell, Field field) const {
        return layout_ == Layout::AoS ? aos_address(cell, field)
                                      : soa_address(cell, field, capacity_);
    }

    // Read-after-write: returns the last value stored for (cell, field).
    // When tracing, each call appends exactly one event. Throws
    // std::invalid_argument for cell >= capacity.
    double get_field(std::uint64_t cell, Field field);
    void set_field(std::uint64_t cell, Field field, double value);

    // Bookkeeping lives in a separate untraced region in both layouts so
    // the traced footprint isolates the layout effect.
    CellStatus status(std::uint64_t cell) const;
    void set_status(std::uint64_t cell, CellStatus s);
    std::uint32_t parent(std::uint64_t cell) const;
    void set_parent(std::uint64_t cell, std::uint32_t parent_cell);

    const MemoryTrace& trace() const { return trace_; }
    MemoryTrace take_trace() { return std::move(trace_); }

    // Total get/set calls so far; equals the trace length when tracing.
    // Counted unconditionally so untraced (e.g. multi-threaded) runs can
    // still report their data-reference count.
    std::uint64_t access_count() const { return access_count_; }

private:
    void check_cell(std::uint64_t cell) const;
    double* slot(std::uint64_t cell, Field field) {
        return reinterpret_cast<double*>(buffer_.get() + address_of(cell, field));
    }

    struct AlignedDelete {
        void operator()(std::byte* p) const { ::operator delete[](p, std::align_val_t{kRegionAlign}); }
    };

    Layout layout_;
    std::uint64_t capacity_;
    bool trace_enabled_;
    std::unique_ptr<std::byte[], AlignedDelete> buffer_;
    std::vector<std::uint32_t> parent_;
    std::vector<CellStatus> status_;
    MemoryTrace trace_;
    std::uint64_t access_count_ = 0;
};

}  // namespace layoutlab
