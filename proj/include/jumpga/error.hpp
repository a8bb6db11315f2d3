#pragma once

#include <stdexcept>
#include <string>

namespace jumpga {

/// Raised when a caller violates a documented precondition (bad parameters,
/// mismatched lengths, malformed CLI input).
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when recorded data (e.g. a trace sequence) is internally inconsistent.
class IntegrityError : public std::runtime_error {
public:
    explicit IntegrityError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an output file cannot be written.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace jumpga
