#pragma once

#include <stdexcept>
#include <string>

namespace seedpure {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Tensor/matrix dimension mismatches; messages name the offending dimension.
struct ShapeError : Error {
    using Error::Error;
};

// Malformed binary or text containers (bad magic, truncation, bad version).
struct FormatError : Error {
    using Error::Error;
};

// Filesystem-level failures.
struct IoError : Error {
    using Error::Error;
};

// Violated argument preconditions (bad k, empty node, geometry too small...).
struct ValueError : Error {
    using Error::Error;
};

// Config-file problems; messages name the key.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace seedpure
