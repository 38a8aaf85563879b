#pragma once

#include <stdexcept>
#include <string>

namespace psd {

// Input outside the domain of an operation (violated invariant, coincident
// boundary points, unsupported tag ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Argument within the pole guard of a Gamma quotient.
class SingularityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Invalid or mismatched quadrature grids, or a grid too coarse for its self-test.
class GridError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A truncation window that does not cover the support of the integrand.
class InsufficientTruncation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace psd
