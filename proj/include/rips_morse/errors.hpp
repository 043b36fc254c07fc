#ifndef RIPS_MORSE_ERRORS_HPP
#define RIPS_MORSE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rips_morse {

/// Malformed or out-of-contract input (dimension mismatch, bad file, axiom violation).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A requested quantity does not fit the integer range we compute in.
class BoundExceededError : public InputError {
public:
    using InputError::InputError;
};

/// An instance exceeds a configured enumeration cap.
class SizeGuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A lattice window does not contain the region an operation must scan.
class WindowTooSmallError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A formula is used outside the range where its bound is established.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An internal invariant failed; indicates a bug or a counterexample.
class InconsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace rips_morse

#endif // RIPS_MORSE_ERRORS_HPP
