#include "trace.hpp"

#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace layoutlab {

namespace {

constexpr char kHeader[] = "LLTRACE 1\n";
constexpr std::size_t kHeaderLen = sizeof(kHeader) - 1;
constexpr std::size_t kEventLen = 1 + 8 + 1;

}  // namespace

std::string serialize_trace(const MemoryTrace& trace) {
    std::string out;
    out.reserve(kHeaderLen + trace.size() * kEventLen);
    out.append(kHeader, kHeaderLen);
    for (const TraceEvent& e : trace) {
        out.push_back(static_cast<char>(e.op));
        std::uint64_t a = e.address;
        for (int i = 0; i < 8; ++i) {
            out.push_back(static_cast<char>(a & 0xFF));
            a >>= 8;
        }
        out.push_back(static_cast<char>(e.size));
    }
    return out;
}

MemoryTrace parse_trace(const std::string& bytes) {
    if (bytes.size() < kHeaderLen || bytes.compare(0, kHeaderLen, kHeader) != 0) {
        throw FormatError("trace stream: bad header");
    }
    const std::size_t payload = bytes.size() - kHeaderLen;
    if (payload % kEventLen != 0) throw FormatError("trace stream: truncated event");

    MemoryTrace trace;
    trace.reserve(payload / kEventLen);
    for (std::size_t pos = kHeaderLen; pos < bytes.size(); pos += kEventLen) {
        const auto op_byte = static_cast<std::uint8_t>(bytes[pos]);
        if (op_byte > 1) throw FormatError("trace stream: bad op byte");
        std::uint64_t addr = 0;
        for (int i = 7; i >= 0; --i) {
            addr = (addr << 8) | static_cast<std::uint8_t>(bytes[pos + 1 + i]);
        }
        trace.push_back(TraceEvent{static_cast<MemOp>(op_byte), addr,
                                   static_cast<std::uint8_t>(bytes[pos + 9])});
    }
    return trace;
}

void save_trace(const MemoryTrace& trace, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    const std::string bytes = serialize_trace(trace);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

MemoryTrace load_trace(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_trace(buf.str());
}

}  // namespace layoutlab
