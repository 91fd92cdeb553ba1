#pragma once

#include <stdexcept>
#include <string>

namespace qfc {

// Bad input: malformed signature, order mismatch, precondition violation.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A desk-scale guard refused the request.
class SizeGuardError : public std::length_error {
public:
    SizeGuardError(const std::string& what, long bound)
        : std::length_error(what + " (bound " + std::to_string(bound) + ")"), bound_(bound) {}
    long bound() const noexcept { return bound_; }

private:
    long bound_;
};

// Something that must hold by construction did not.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw ValidationError(msg);
}

inline void ensure(bool cond, const std::string& msg) {
    if (!cond) throw InvariantError(msg);
}

} // namespace qfc
