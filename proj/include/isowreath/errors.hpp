#pragma once

#include <set>
#include <stdexcept>
#include <string>

namespace isowreath {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t offset, std::set<std::string> expected)
        : Error(msg), offset_(offset), expected_(std::move(expected)) {}
    std::size_t offset() const { return offset_; }
    const std::set<std::string>& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::set<std::string> expected_;
};

// Evaluation outside the domain of a function (log, sqrt, division, pow, tan).
class EvalDomainError : public Error {
public:
    using Error::Error;
};

// Derivative requested where the expression is not differentiable (abs at 0).
class NondifferentiableError : public Error {
public:
    using Error::Error;
};

class UnboundParameterError : public Error {
public:
    using Error::Error;
};

// Query point outside the region where a field can deliver a 2-jet.
class FieldDomainError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

// A geometric construction hit a degenerate configuration. value() carries the
// offending quantity (a determinant, an angle, ...).
class DegeneracyError : public Error {
public:
    DegeneracyError(const std::string& msg, double value) : Error(msg), value_(value) {}
    double value() const { return value_; }

private:
    double value_;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace isowreath
