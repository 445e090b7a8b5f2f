#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rspq {

/// Malformed textual input (regex, DFA file, graph file). `offset` is a
/// character offset for regexes and a 1-based line number for line formats.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t offset)
        : std::runtime_error(message + " (at " + std::to_string(offset) + ")"), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// A configured cap fired. Never used to signal a negative answer.
class ResourceError : public std::runtime_error {
public:
    ResourceError(std::string cap, std::uint64_t limit)
        : std::runtime_error("resource cap '" + cap + "' exceeded (limit " + std::to_string(limit) + ")"),
          cap_(std::move(cap)), limit_(limit) {}

    const std::string& cap() const noexcept { return cap_; }
    std::uint64_t limit() const noexcept { return limit_; }

private:
    std::string cap_;
    std::uint64_t limit_;
};

/// Structurally invalid arguments: alphabet mismatch, out-of-range state, bad certificate.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace rspq
