#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "node_store.hpp"

using namespace layoutlab;

TEST_CASE("fresh store state") {
    NodeStore store(Layout::AoS, 1, false);
    CHECK(std::isinf(store.get_field(0, Field::G)));
    CHECK(std::isinf(store.get_field(0, Field::F)));
    CHECK(store.get_field(0, Field::Row) == 0.0);
    CHECK(store.status(0) == CellStatus::Unvisited);
    CHECK(store.parent(0) == kNoParent);
}

TEST_CASE("zero capacity and out-of-range indices are rejected") {
    CHECK_THROWS_AS(NodeStore(Layout::SoA, 0, false), std::invalid_argument);
    NodeStore store(Layout::AoS, 4, false);
    CHECK_THROWS_AS(store.get_field(4, Field::G), std::invalid_argument);
    CHECK_THROWS_AS(store.set_field(100, Field::G, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(store.status(4), std::invalid_argument);
}

TEST_CASE("read-after-write") {
    for (const Layout layout : {Layout::AoS, Layout::SoA}) {
        NodeStore store(layout, 16, false);
        store.set_field(5, Field::G, 3.0);
        CHECK(store.get_field(5, Field::G) == 3.0);
        store.set_field(5, Field::G, 4.5);
        CHECK(store.get_field(5, Field::G) == 4.5);
        CHECK(std::isinf(store.get_field(6, Field::G)));
    }
}

TEST_CASE("address mapping formulas") {
    // Evaluated by hand from the mapping definition.
    CHECK(aos_address(5, Field::F) == 5 * 32 + 3 * 8);
    CHECK(aos_address(5, Field::F) == 184);
    CHECK(align64(100 * 8) == 832);
    CHECK(soa_address(5, Field::F, 100) == 3 * 832 + 5 * 8);
    CHECK(soa_address(5, Field::F, 100) == 2536);
    CHECK(aos_address(0, Field::Row) == 0);
    CHECK(soa_address(0, Field::Row, 100) == 0);

    NodeStore aos(Layout::AoS, 100, false);
    NodeStore soa(Layout::SoA, 100, false);
    CHECK(aos.address_of(5, Field::F) == 184);
    CHECK(soa.address_of(5, Field::F) == 2536);
}

TEST_CASE("tracing emits exactly one event per access") {
    NodeStore store(Layout::AoS, 8, true);
    CHECK(store.trace().empty());  // construction is untraced
    store.set_field(3, Field::G, 1.0);
    store.get_field(3, Field::G);
    REQUIRE(store.trace().size() == 2);
    CHECK(store.trace()[0] == TraceEvent{MemOp::Write, aos_address(3, Field::G), 8});
    CHECK(store.trace()[1] == TraceEvent{MemOp::Read, aos_address(3, Field::G), 8});
    CHECK(store.access_count() == 2);
}

TEST_CASE("full-scan trace geometry") {
    auto full_scan = [](NodeStore& store) {
        for (std::uint64_t i = 0; i < store.capacity(); ++i) {
            for (const Field f : {Field::Row, Field::Col, Field::G, Field::F}) {
                store.get_field(i, f);
            }
        }
    };

    SUBCASE("AoS spans one contiguous region of capacity*32 bytes") {
        NodeStore store(Layout::AoS, 40000, true);
        full_scan(store);
        std::uint64_t lo = UINT64_MAX, hi = 0;
        for (const TraceEvent& e : store.trace()) {
            lo = std::min(lo, e.address);
            hi = std::max(hi, e.address + e.size);
        }
        CHECK(lo == 0);
        CHECK(hi == 40000ull * 32);
        CHECK(store.trace().size() == 40000ull * 4);
    }
    SUBCASE("SoA spans 4 disjoint regions") {
        NodeStore store(Layout::SoA, 40000, true);
        full_scan(store);
        const std::uint64_t region = align64(40000ull * 8);
        for (const TraceEvent& e : store.trace()) {
            const std::uint64_t field = e.address / region;
            CHECK(field < 4);
            // inside the field's populated span
            CHECK(e.address % region < 40000ull * 8);
        }
    }
}

TEST_CASE("memory model arithmetic") {
    CHECK(memory_model_bytes(Layout::AoS, 1) == 32 + 4 + 1 + kStoreOverheadBytes);
    CHECK(field_region_bytes(Layout::AoS, 40000) == 1'280'000);
    CHECK(field_region_bytes(Layout::SoA, 40000) == 4 * 320'000);
    CHECK(field_region_bytes(Layout::SoA, 40000) == field_region_bytes(Layout::AoS, 40000));
    CHECK(memory_model_bytes(Layout::SoA, 40000) ==
          4 * align64(40000 * 8) + 40000 * 4 + 40000 * 1 + kStoreOverheadBytes);
}

TEST_CASE("property: payload parity whenever capacity is a multiple of 8") {
    for (std::uint64_t capacity : {8ull, 64ull, 4096ull, 39'992ull, 123'456ull}) {
        CHECK(field_region_bytes(Layout::SoA, capacity) ==
              field_region_bytes(Layout::AoS, capacity));
    }
    // Non-multiples pad the SoA regions up.
    CHECK(field_region_bytes(Layout::SoA, 3) > field_region_bytes(Layout::AoS, 3));
}

TEST_CASE("property: observational equivalence of AoS and SoA") {
    constexpr std::uint64_t kCells = 257;
    NodeStore aos(Layout::AoS, kCells, false);
    NodeStore soa(Layout::SoA, kCells, false);
    std::mt19937_64 rng(2024);
    for (int step = 0; step < 20'000; ++step) {
        const std::uint64_t cell = rng() % kCells;
        const auto field = static_cast<Field>(rng() % 4);
        if (rng() % 2 == 0) {
            const double value = static_cast<double>(rng() % 1'000'000) / 3.0;
            aos.set_field(cell, field, value);
            soa.set_field(cell, field, value);
        } else {
            const double a = aos.get_field(cell, field);
            const double s = soa.get_field(cell, field);
            const bool equal = (a == s) || (std::isinf(a) && std::isinf(s));
            CHECK(equal);
        }
    }
    CHECK(aos.access_count() == soa.access_count());
}

TEST_CASE("property: trace length is layout-independent, addresses are not") {
    constexpr std::uint64_t kCells = 100;
    NodeStore aos(Layout::AoS, kCells, true);
    NodeStore soa(Layout::SoA, kCells, true);
    std::mt19937_64 rng(7);
    for (int step = 0; step < 5'000; ++step) {
        const std::uint64_t cell = rng() % kCells;
        const auto field = static_cast<Field>(rng() % 4);
        if (rng() % 2 == 0) {
            aos.set_field(cell, field, 1.0);
            soa.set_field(cell, field, 1.0);
        } else {
            aos.get_field(cell, field);
            soa.get_field(cell, field);
        }
    }
    REQUIRE(aos.trace().size() == soa.trace().size());
    bool any_address_differs = false;
    for (std::size_t i = 0; i < aos.trace().size(); ++i) {
        CHECK(aos.trace()[i].op == soa.trace()[i].op);
        CHECK(aos.trace()[i].size == soa.trace()[i].size);
        any_address_differs |= aos.trace()[i].address != soa.trace()[i].address;
    }
    CHECK(any_address_differs);
}

TEST_CASE("property: no two (cell, field) slots overlap") {
    constexpr std::uint64_t kCells = 129;  // odd size exercises padding
    for (const Layout layout : {Layout::AoS, Layout::SoA}) {
        NodeStore store(layout, kCells, false);
        std::set<std::uint64_t> starts;
        for (std::uint64_t i = 0; i < kCells; ++i) {
            for (const Field f : {Field::Row, Field::Col, Field::G, Field::F}) {
                const std::uint64_t addr = store.address_of(i, f);
                CHECK(addr % kFieldBytes == 0);  // slots are 8-aligned, so
                CHECK(starts.insert(addr).second);  // distinct starts imply disjoint
            }
        }
    }
}

TEST_CASE("property: SoA region bases are 64-byte aligned") {
    for (std::uint64_t capacity : {1ull, 3ull, 100ull, 4097ull}) {
        for (const Field f : {Field::Row, Field::Col, Field::G, Field::F}) {
            CHECK(soa_address(0, f, capacity) % 64 == 0);
        }
    }
}
