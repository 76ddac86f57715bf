#pragma once

#include <stdexcept>
#include <string>

namespace ordfrag {

/// Raised when an argument lies outside an operation's domain.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a result would exceed a configured bound.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Raised when a lazily materialized structure does not reach far enough.
class InsufficientMaterialization : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ordfrag
