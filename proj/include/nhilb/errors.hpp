#pragma once

#include <stdexcept>
#include <string>

namespace nhilb {

// Bad arguments from a caller (mismatched spaces, negative sizes, malformed input).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Input outside the mathematical domain of an operation (zero polynomial, cell not in diagram).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A guaranteed property failed; indicates a bug rather than bad input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Cross-route or post-summation consistency check failed.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace nhilb
