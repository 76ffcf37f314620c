#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace katz {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Mismatched n_vars / trunc_order / rank, or an index out of range.
class DimensionError : public Error {
public:
    using Error::Error;
};

// An operation needs more trusted degrees than its input carries.
class PrecisionError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t offset, const std::string& reason)
        : Error("parse error at offset " + std::to_string(offset) + ": " + reason), offset_(offset), reason_(reason)
    {
    }

    std::size_t offset() const noexcept { return offset_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::size_t offset_;
    std::string reason_;
};

// Structurally malformed input (missing fields, wrong shapes) in a
// problem file or command line.
class InputError : public Error {
public:
    using Error::Error;
};

// A check that must hold for validated input did not. Reaching this means a
// bug, or non-integrable data that slipped past validation.
class InconsistencyError : public Error {
public:
    using Error::Error;
};

} // namespace katz
