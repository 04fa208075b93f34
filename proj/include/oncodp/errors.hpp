#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace oncodp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A scenario failed one of its structural or probabilistic checks.
///
/// `path()` is a JSON-pointer style location of the offending field in the
/// scenario document layout, e.g. "/scenario/actions/0/phi_row/2".
class ValidationError : public Error {
public:
    ValidationError(const std::string& what, std::string path)
        : Error(what), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// A probability row does not sum to one.
class RowSumError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// A probability is negative (or not finite).
class SignError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Wrong action-type layout, bad exponents, bad bounds.
class StructureError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// An argument lies outside the state or action space.
class DomainError : public Error {
public:
    using Error::Error;
};

class EmptyError : public Error {
public:
    using Error::Error;
};

/// The recursive oracle was asked to go deeper than its budget allows.
class DepthError : public Error {
public:
    using Error::Error;
};

/// Two solutions do not share a state space / horizon / action count.
class ShapeError : public Error {
public:
    using Error::Error;
};

class UnknownPreset : public Error {
public:
    explicit UnknownPreset(const std::string& name)
        : Error("unknown preset '" + name + "'"), name_(name) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

/// A document could not be parsed into the expected schema.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::string path, int line = 0)
        : Error(what), path_(std::move(path)), line_(line) {}

    const std::string& path() const noexcept { return path_; }
    /// 1-based line of a syntax error, 0 when not applicable.
    int line() const noexcept { return line_; }

private:
    std::string path_;
    int line_;
};

} // namespace oncodp
