#pragma once

#include <stdexcept>
#include <string>

namespace catdiscord {

/// Invalid model or scan parameters.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain of a formula (negative or non-finite time, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Eigenvalue more negative than the clamping floor.
class PositivityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Fock-space cutoff too small for the requested coherent amplitude.
class TruncationError : public std::runtime_error {
public:
    TruncationError(const std::string& what, int required)
        : std::runtime_error(what), required_truncation(required) {}

    int required_truncation;
};

/// Evolved state left the two-dimensional cat manifold of a mode.
class SupportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Scan too coarse to segment.
class ResolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed CSV input.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace catdiscord
