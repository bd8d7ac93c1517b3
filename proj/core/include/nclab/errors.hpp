#pragma once

#include <stdexcept>
#include <string>

namespace nclab {

// Shape or trace-context mismatch between operands.
struct DimensionError : std::invalid_argument {
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// Input outside the mathematical domain of the operation
// (non-self-adjoint where self-adjoint is required, negative spectrum, ...).
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Request exceeds a hard resource cap (exhaustive enumerations, block counts).
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// A structured object failed one of its constructor-validated invariants.
struct ConstructionError : std::runtime_error {
    explicit ConstructionError(const std::string& what) : std::runtime_error(what) {}
};

// Configuration / scenario parse failure.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nclab
