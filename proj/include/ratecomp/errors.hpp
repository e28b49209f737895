#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ratecomp {

/// Rejected input: dimension mismatches, misaligned traces, empty overlaps.
class input_error : public std::invalid_argument {
public:
    explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Expression parse failure with a 0-based byte offset into the source text.
class expr_error : public std::invalid_argument {
public:
    expr_error(std::size_t offset, const std::string& message)
        : std::invalid_argument(message + " (at offset " + std::to_string(offset) + ")"),
          offset_(offset), message_(message) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::size_t offset_;
    std::string message_;
};

/// Trace generation failure: schedule out of range or non-finite operator output.
/// Carries the 1-based iteration index where generation stopped.
class generation_error : public std::runtime_error {
public:
    generation_error(std::int64_t index, const std::string& message)
        : std::runtime_error(message + " (at n=" + std::to_string(index) + ")"),
          index_(index) {}

    std::int64_t index() const noexcept { return index_; }

private:
    std::int64_t index_;
};

/// Config file rejected: schema violation, bad expression, failed residual check.
class config_error : public std::runtime_error {
public:
    config_error(const std::string& location, const std::string& message)
        : std::runtime_error(location + ": " + message), location_(location) {}

    const std::string& location() const noexcept { return location_; }

private:
    std::string location_;
};

} // namespace ratecomp
