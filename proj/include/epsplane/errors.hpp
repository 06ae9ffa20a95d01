#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace epsplane {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input value outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// CSV row that cannot be parsed (bad field count, unparseable number, empty name).
class MalformedRowError : public Error {
public:
    MalformedRowError(std::size_t row, const std::string& what)
        : Error("row " + std::to_string(row) + ": " + what), row_(row) {}
    [[nodiscard]] std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

/// Two records share a name after normalization.
class DuplicateNameError : public Error {
public:
    DuplicateNameError(std::size_t row, const std::string& what)
        : Error("row " + std::to_string(row) + ": " + what), row_(row) {}
    [[nodiscard]] std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

/// Permittivity value no passive bulk material can have.
class NonPhysicalValueError : public Error {
public:
    NonPhysicalValueError(std::size_t row, const std::string& what)
        : Error("row " + std::to_string(row) + ": " + what), row_(row) {}
    [[nodiscard]] std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

/// Database file with a header but no data rows, or no content at all.
class EmptyFileError : public Error {
public:
    using Error::Error;
};

/// Loss grid that is not finite, nonnegative and strictly increasing.
class InvalidGridError : public Error {
public:
    using Error::Error;
};

/// Target reflectivity admits no solution anywhere on the requested grid.
class NoSolutionError : public Error {
public:
    using Error::Error;
};

/// A curve operation was handed a curve with no points.
class EmptyCurveError : public Error {
public:
    using Error::Error;
};

/// Observation lacks the field its dispatch path requires.
class MissingInputError : public Error {
public:
    using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// Region-set configuration that does not satisfy the schema.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace epsplane
