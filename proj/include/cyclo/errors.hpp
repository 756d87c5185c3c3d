#pragma once

#include <stdexcept>
#include <string>

namespace cyclo {

// Bad user input: malformed conductor, degrees, symbol text, ...
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// n <= 2 or n = 2 mod 4; Q(zeta_n) = Q(zeta_{n/2}) in the latter case.
class ConductorError : public InputError {
public:
    using InputError::InputError;
};

class SpecMismatchError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// A symbol that is not a unit was handed to an operation requiring one.
class NonUnitError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Floating-point result fell in an ambiguous tolerance band.
class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invariant violation inside the library; always a defect.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace cyclo
