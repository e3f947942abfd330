#pragma once

#include <stdexcept>
#include <string>

namespace clpb {

/// Raised when a caller violates a documented precondition.
class ContractError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Raised for values outside a mathematical domain (e.g. a chaotic map seed).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Signals that an evaluation budget has been spent. Optimizers treat it as
/// a termination request rather than a failure.
class BudgetExhausted : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace detail {
inline void require(bool condition, const std::string& message) {
    if (!condition) throw ContractError(message);
}
} // namespace detail

} // namespace clpb
