#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rjv {

// Bad numbers, unparsable input, domain errors. CLI exit code 2.
class InvalidInputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Incompatible options or an unsupported mode. Also exit code 2.
class ConfigurationError : public InvalidInputError {
public:
    using InvalidInputError::InvalidInputError;
};

// Market primitives fail their validity screen (drastic innovation, negative
// quantities). Sweeps turn this into an exclusion label instead of aborting.
class MarketValidityError : public InvalidInputError {
public:
    using InvalidInputError::InvalidInputError;
};

// A model assumption fails for otherwise well-formed input. CLI exit code 3
// unless explicitly overridden.
class AssumptionError : public std::runtime_error {
public:
    explicit AssumptionError(const std::string& msg, std::vector<std::string> codes = {})
        : std::runtime_error(msg), codes(std::move(codes)) {}
    std::vector<std::string> codes;
};

// A property the implementation itself guarantees failed to hold. Always a
// bug, never a data problem. CLI exit code 4.
class InvariantViolationError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace rjv
