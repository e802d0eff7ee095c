#pragma once

#include <stdexcept>
#include <string>

namespace rieszwave {

/// Input that violates a documented precondition (bad order, length mismatch,
/// malformed configuration). The CLI maps this to exit status 2.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical operation could not complete (singular pivot, failed
/// eigen-solve, line-solve failure). The CLI maps this to exit status 3.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SingularMatrix : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

}  // namespace rieszwave
