#pragma once

#include <stdexcept>
#include <string>

namespace superlattice {

/// Bad arguments or configuration supplied by the caller. Maps to CLI exit 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Structured-file syntax or schema problem, with the offending location.
class ParseError : public InputError {
public:
    ParseError(const std::string& where, const std::string& what)
        : InputError(where + ": " + what), where_(where) {}
    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

/// Input parsed fine but violates a physical invariant (e.g. B_hfs != 0 for J = 1/2).
class ValidationError : public InputError {
public:
    using InputError::InputError;
};

/// A beam layout that contradicts what a preset requires (detuning, polarization).
class ConfigurationError : public InputError {
public:
    using InputError::InputError;
};

/// Numerical failure: non-convergence, resonance, missing bracket. Maps to CLI exit 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NearResonanceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class BracketError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace superlattice
