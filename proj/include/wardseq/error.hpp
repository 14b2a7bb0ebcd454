#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wardseq {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset()` is the byte offset of the problem.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Evaluation produced NaN/inf, or was requested outside a sequence's domain.
class EvalError : public Error {
public:
    EvalError(const std::string& what, std::int64_t index)
        : Error(what + " (index " + std::to_string(index) + ")"), index_(index) {}

    std::int64_t index() const noexcept { return index_; }

private:
    std::int64_t index_;
};

/// Invalid construction parameters (non-monotone schemes, bad windows, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A counterexample block selection ran out of materialized scheme.
class SelectionError : public Error {
public:
    using Error::Error;
};

}  // namespace wardseq
