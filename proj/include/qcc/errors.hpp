#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qcc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A register, transcript or input space is larger than the simulator accepts.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// A caller-supplied object broke its declared contract (non-unitary step,
/// a gate touching a channel qubit outside its message window, ...).
class ContractViolation : public Error {
public:
    using Error::Error;
};

class ArgumentError : public Error {
public:
    using Error::Error;
};

class NumericalFailure : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Raised when a matrix does not have the zero pattern of its target function.
class PatternMismatch : public Error {
public:
    PatternMismatch(std::string what, std::vector<std::pair<std::uint64_t, std::uint64_t>> cex)
        : Error(std::move(what)), counterexamples(std::move(cex)) {}

    std::vector<std::pair<std::uint64_t, std::uint64_t>> counterexamples;
};

/// A randomized construction failed on every attempt of its retry budget.
class ProbabilisticFailure : public Error {
public:
    using Error::Error;
};

}  // namespace qcc
