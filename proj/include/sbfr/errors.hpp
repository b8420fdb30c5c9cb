#pragma once

#include <stdexcept>
#include <string>

namespace sbfr {

// Bad dimension, zero vector, sign violation and similar caller errors.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A simulated region cannot be built or placed inside the domain.
class InfeasibleRegion : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The first-failure finder spent its budget without a Fail verdict.
class NoFailureFound : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An external oracle program could not be started.
class OracleUnavailable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed matrix/config file or CLI option combination.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace sbfr
