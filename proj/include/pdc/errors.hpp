#pragma once

#include <stdexcept>
#include <string>

namespace pdc {

// Bad arguments from a caller: mismatched fields, malformed files, unknown flags.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A mathematically undefined operation, e.g. inverting zero.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// A documented precondition of an algorithm does not hold.
struct PreconditionError : std::logic_error {
    using std::logic_error::logic_error;
};

// A deterministic construction could not be completed within its caps.
struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Materialization would exceed the configured memory budget.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An internal invariant was found broken at run time.
struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace pdc
