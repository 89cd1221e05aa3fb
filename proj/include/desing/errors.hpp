#pragma once

#include <stdexcept>
#include <string>

namespace desing {

/// Malformed or out-of-contract input (bad polynomial text, dimension mismatch, non-snc boundary).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An algebraic operation was asked for something that does not exist (non-divisibility, order of zero).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Degree or term-count guardrail exceeded.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The engine cannot handle the construction (no shear-type maximal contact, unsupported cleaning mark).
struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MaxContactNotFound : UnsupportedError {
    using UnsupportedError::UnsupportedError;
};

/// Internal consistency failure; indicates an engine bug.
struct EngineError : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace desing
