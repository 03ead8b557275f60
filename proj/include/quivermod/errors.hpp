#pragma once

#include <stdexcept>
#include <string>

namespace quivermod {

// Thrown when an enumeration would exceed its configured budget.
class SizeGuardError : public std::runtime_error {
public:
    explicit SizeGuardError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a quantity the counting theorems guarantee to be an integer
// polynomial fails to be one. Always indicates a bug upstream, never bad
// user input.
class IntegralityError : public std::logic_error {
public:
    explicit IntegralityError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace quivermod
