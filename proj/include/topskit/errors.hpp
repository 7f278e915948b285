#pragma once

#include <stdexcept>
#include <string>

namespace topskit {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shape mismatches: non-square determinant input, entry-count violations.
struct DimensionError : Error {
    using Error::Error;
};

// Singular matrix where a nonsingular one is required.
struct SingularError : Error {
    using Error::Error;
};

// Input outside an operation's domain (origin not interior, non-reflexive base, ...).
struct DomainError : Error {
    using Error::Error;
};

// Bad argument values (empty point set, index out of range, ...).
struct ArgumentError : Error {
    using Error::Error;
};

// Structurally invalid triangulation or ridge data.
struct StructureError : Error {
    using Error::Error;
};

// A parameter assignment violating a family condition; names the first violated record.
struct ConstraintError : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t line_in) : Error(msg), line(line_in) {}
    std::size_t line;
};

} // namespace topskit
