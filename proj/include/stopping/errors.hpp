#pragma once

#include <stdexcept>
#include <string>

namespace stopping {

// Invalid input: bad construction arguments, mismatched sizes, malformed files.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Problem size exceeds an enumeration or DP budget.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stopping
