#ifndef APOLAR_COMMON_HPP
#define APOLAR_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace apolar {

// Violation of a mathematical precondition (zero form, wrong field, ...).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed textual or JSON input.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace apolar

#endif
