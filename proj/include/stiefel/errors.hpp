#pragma once

#include <stdexcept>
#include <string>

namespace stiefel {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Inputs outside the mathematical domain of an operation. Maps to CLI exit code 1.
class DomainError : public Error {
public:
    using Error::Error;
};

class InvalidElementError : public DomainError {
public:
    using DomainError::DomainError;
};

/// so(k) with k < 3 is abelian, so its Killing form vanishes.
class UndefinedRatioError : public DomainError {
public:
    using DomainError::DomainError;
};

class NotImplementedError : public DomainError {
public:
    using DomainError::DomainError;
};

class DivisibilityError : public DomainError {
public:
    using DomainError::DomainError;
};

class DegenerateSystemError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Gröbner computation exceeded its pair-reduction cap. Maps to CLI exit code 2.
class EliminationOverflow : public Error {
public:
    explicit EliminationOverflow(const std::string& what)
        : Error(what + " (retry with the resultant strategy)") {}
};

}  // namespace stiefel
