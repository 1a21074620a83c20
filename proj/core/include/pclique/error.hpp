#pragma once

#include <stdexcept>
#include <string>

namespace pclique {

enum class ErrorKind {
    InvalidArgument,
    InvalidLatent,
    InvalidLabels,
    InvalidDataset,
    Io,
    NumericFailure,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base exception for everything thrown by the library. The kind decides the
/// CLI exit code (invalid input -> 1, runtime/numeric -> 2).
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what) : Error(ErrorKind::InvalidArgument, what) {}
};

class InvalidLatent : public Error {
public:
    explicit InvalidLatent(const std::string& what) : Error(ErrorKind::InvalidLatent, what) {}
};

class InvalidLabels : public Error {
public:
    explicit InvalidLabels(const std::string& what) : Error(ErrorKind::InvalidLabels, what) {}
};

class InvalidDataset : public Error {
public:
    explicit InvalidDataset(const std::string& what) : Error(ErrorKind::InvalidDataset, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what, long line = 0)
        : Error(ErrorKind::Io, line > 0 ? what + " (line " + std::to_string(line) + ")" : what),
          line_(line) {}

    /// 1-based line number of the offending input, 0 when not line-oriented.
    long line() const noexcept { return line_; }

private:
    long line_;
};

class NumericFailure : public Error {
public:
    explicit NumericFailure(const std::string& what) : Error(ErrorKind::NumericFailure, what) {}
};

}  // namespace pclique
