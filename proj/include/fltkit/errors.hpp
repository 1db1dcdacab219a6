#pragma once

#include <stdexcept>
#include <string>

namespace fltkit {

// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Input inside the domain but outside the supported computational envelope.
class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A computation contradicted a proven statement; indicates a bug.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace fltkit
