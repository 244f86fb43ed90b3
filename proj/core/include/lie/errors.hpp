#pragma once

#include <stdexcept>
#include <string>

namespace lie {

// misuse of an API contract (bad parameters, mismatched contexts, malformed input)
struct UsageError : std::invalid_argument {
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// argument outside the mathematical domain of the operation (e.g. log outside the chart)
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// a configured resource cap was hit and the operation could not complete
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// malformed serialized data
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// a stated precondition on input data does not hold (reported, not asserted)
struct InfeasibleError : std::runtime_error {
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lie
