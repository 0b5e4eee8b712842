#pragma once

#include <stdexcept>
#include <string>

namespace layoutlab {

// File magic/version/checksum problems and malformed binary streams.
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

// Structurally readable input that violates semantic constraints
// (coordinates out of range, asymmetric walls, open boundary).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Goal unreachable from start.
class NoPathError : public std::runtime_error {
public:
    explicit NoPathError(const std::string& what) : std::runtime_error(what) {}
};

// Bad experiment or cache configuration.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Requested data was not recorded for this run (e.g. worker counts
// with instrumentation off).
class UnavailableError : public std::runtime_error {
public:
    explicit UnavailableError(const std::string& what) : std::runtime_error(what) {}
};

// Broken internal state, e.g. a parent chain that does not reach the start.
class InternalStateError : public std::runtime_error {
public:
    explicit InternalStateError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace layoutlab
