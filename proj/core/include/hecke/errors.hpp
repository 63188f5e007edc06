#pragma once

#include <stdexcept>
#include <string>

namespace hecke {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Evaluation too close to a pole of a meromorphic quantity.
class PoleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Degenerate numerics (division by zero in a continued fraction, singular solve).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A disc or sample point escapes the region where a function is defined.
class ContainmentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A numerical verification step did not pass.
class VerificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The requested eigenvalue is not (numerically) in the spectrum.
class NotAnEigenvalueError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace hecke
