#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace clusterbench {

enum class ErrorKind {
    Config,             // invalid scenario configuration
    Input,              // malformed or empty input data
    Consistency,        // snapshot/cluster mismatch
    InvariantViolation, // overlapping clusters, broken partition
    UndefinedIndex,     // fewer than two clusters
    DegenerateGeometry, // Dunn's index 0/0
    Capacity,           // address field overflow
    Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

} // namespace clusterbench
