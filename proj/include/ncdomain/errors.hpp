#pragma once

#include <stdexcept>
#include <string>

namespace ncdomain {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class SingularMatrix : public Error {
public:
    SingularMatrix() : Error("matrix is singular") {}
};

class InconsistentSystem : public Error {
public:
    InconsistentSystem() : Error("linear system has no solution") {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class VariableOutOfRange : public Error {
public:
    using Error::Error;
};

class NotRegularAtZero : public Error {
public:
    using Error::Error;
};

class NotRegularAtPoint : public Error {
public:
    using Error::Error;
};

class ZeroConstantTerm : public Error {
public:
    ZeroConstantTerm() : Error("realization has zero constant term; inverse is not regular at the base point") {}
};

class BasePointMismatch : public Error {
public:
    BasePointMismatch() : Error("realizations are centered at different base points") {}
};

class DegenerateAtSize : public Error {
public:
    using Error::Error;
};

// Raised when a symbolic computation would exceed the configured variable or degree bounds.
class SymbolicSizeLimit : public Error {
public:
    using Error::Error;
};

class NotInDomain : public Error {
public:
    using Error::Error;
};

class NoLeadingMonomial : public Error {
public:
    using Error::Error;
};

}  // namespace ncdomain
