#pragma once

#include <stdexcept>
#include <string>

namespace avvi {

/// Shape/size mismatch between operands.
struct DimensionError : std::invalid_argument {
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Input is outside the class of problems the exact machinery handles
/// (m != 2 structural analysis, too many constraints, non-rational data
/// where exactness is required, ...).
struct UnsupportedError : std::runtime_error {
    explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed instance files or rational literals.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// An internal invariant was violated; aborting is preferred over a guess.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

} // namespace avvi
