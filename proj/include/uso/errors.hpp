#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace uso {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

class DimensionTooLarge : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class InvalidPermutation : public Error {
public:
    using Error::Error;
};

class SingularMatrix : public Error {
public:
    using Error::Error;
};

class ZeroPivot : public Error {
public:
    using Error::Error;
};

class NotPMatrix : public Error {
public:
    using Error::Error;
};

class NotSpd : public Error {
public:
    using Error::Error;
};

/// Thrown when an LCP right-hand side q is not generic: some free entry of
/// the vertex solution vanishes exactly, so no edge direction is defined.
class NotGeneric : public Error {
public:
    NotGeneric(std::uint32_t vertex, int index)
        : Error("q not generic: component " + std::to_string(index) +
                " vanishes at vertex " + std::to_string(vertex)),
          vertex_(vertex),
          index_(index) {}
    std::uint32_t vertex() const { return vertex_; }
    int index() const { return index_; }

private:
    std::uint32_t vertex_;
    int index_;
};

class NotAUso : public Error {
public:
    using Error::Error;
};

class PreconditionFailed : public Error {
public:
    using Error::Error;
};

class InvalidMatching : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace uso
