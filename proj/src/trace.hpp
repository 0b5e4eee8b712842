#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace layoutlab {

enum class MemOp : std::uint8_t { Read = 0, Write = 1 };

// One byte-addressed access. Addresses are model addresses: offsets from
// the owning store's origin 0, as defined by the layout mapping.
struct TraceEvent {
    MemOp op = MemOp::Read;
    std::uint64_t address = 0;
    std::uint8_t size = 0;

    friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

using MemoryTrace = std::vector<TraceEvent>;

// Binary stream format, little-endian:
//   header "LLTRACE 1\n", then per event 1 byte op, 8 bytes address, 1 byte size.
std::string serialize_trace(const MemoryTrace& trace);
MemoryTrace parse_trace(const std::string& bytes);

void save_trace(const MemoryTrace& trace, const std::string& path);
MemoryTrace load_trace(const std::string& path);

}  // namespace layoutlab
