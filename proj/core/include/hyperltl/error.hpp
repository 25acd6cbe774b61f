#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hyperltl {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed concrete syntax (formula text, Kripke text). Positions are 1-based.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// A trace variable occurs outside the scope of any quantifier binding it.
class UnboundVariableError : public Error {
public:
    explicit UnboundVariableError(std::string variable)
        : Error("unbound trace variable '" + variable + "'"), variable_(std::move(variable)) {}

    const std::string& variable() const noexcept { return variable_; }

private:
    std::string variable_;
};

/// Structural problem in an otherwise well-formed input (totality, membership, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Formula outside the supported fragment (non-prenex, two or more alternations, ...).
class UnsupportedFragment : public Error {
public:
    using Error::Error;
};

/// Arity or alphabet mismatch between automata, words and formulas.
class ArityMismatch : public Error {
public:
    using Error::Error;
};

/// A configured resource cap was hit; the check is inconclusive, not failed.
class ResourceLimitExceeded : public Error {
public:
    using Error::Error;
};

} // namespace hyperltl
