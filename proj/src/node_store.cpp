#include "node_store.hpp"

#include <stdexcept>
#include <string>

namespace layoutlab {

NodeStore::NodeStore(Layout layout, std::uint64_t capacity, bool trace_enabled)
    : layout_(layout), capacity_(capacity), trace_enabled_(trace_enabled) {
    if (capacity == 0) throw std::invalid_argument("store capacity must be >= 1");

    // 64-byte aligned backing so physical line boundaries coincide with
    // the model's; a model address is the value's real buffer offset.
    buffer_.reset(static_cast<std::byte*>(::operator new[](
        field_region_bytes(layout, capacity), std::align_val_t{kRegionAlign})));
    parent_.assign(capacity, kNoParent);
    status_.assign(capacity, CellStatus::Unvisited);

    // Construction fills the fields directly; the trace records algorithm
    // accesses only, starting from this cold state. Row/Col hold the
    // linear cell index until a search assigns grid coordinates.
    constexpr double inf = std::numeric_limits<double>::infinity();
    for (std::uint64_t i = 0; i < capacity; ++i) {
        *slot(i, Field::Row) = static_cast<double>(i);
        *slot(i, Field::Col) = static_cast<double>(i);
        *slot(i, Field::G) = inf;
        *slot(i, Field::F) = inf;
    }
}

void NodeStore::check_cell(std::uint64_t cell) const {
    if (cell >= capacity_) {
        throw std::invalid_argument("cell index " + std::to_string(cell) + " >= capacity " +
                                    std::to_string(capacity_));
    }
}

double NodeStore::get_field(std::uint64_t cell, Field field) {
    check_cell(cell);
    ++access_count_;
    if (trace_enabled_) {
        trace_.push_back({MemOp::Read, address_of(cell, field),
                          static_cast<std::uint8_t>(kFieldBytes)});
    }
    return *slot(cell, field);
}

void NodeStore::set_field(std::uint64_t cell, Field field, double value) {
    check_cell(cell);
    ++access_count_;
    if (trace_enabled_) {
        trace_.push_back({MemOp::Write, address_of(cell, field),
                          static_cast<std::uint8_t>(kFieldBytes)});
    }
    *slot(cell, field) = value;
}

CellStatus NodeStore::status(std::uint64_t cell) const {
    check_cell(cell);
    return status_[cell];
}

void NodeStore::set_status(std::uint64_t cell, CellStatus s) {
    check_cell(cell);
    status_[cell] = s;
}

std::uint32_t NodeStore::parent(std::uint64_t cell) const {
    check_cell(cell);
    return parent_[cell];
}

void NodeStore::set_parent(std::uint64_t cell, std::uint32_t parent_cell) {
    check_cell(cell);
    parent_[cell] = parent_cell;
}

}  // namespace layoutlab
