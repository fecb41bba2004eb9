#ifndef TEAMCHECK_ERRORS_HPP
#define TEAMCHECK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace teamcheck {

enum class EvalErrorKind {
  BudgetExceeded,
  TeamTooLarge,
  DomainTooLarge,
  SearchTooLarge,
  UnknownDependency,
  MissingVariable,
  MissingRelation,
  MissingConstant,
  RelativizationDomain,  // |P^M| < 2: the tool refuses to guess
  UnsupportedConnective,
  ArityMismatch,
};

// Explicit evaluation failure, always distinct from a `false` verdict.
struct EvalError : std::runtime_error {
  EvalError(EvalErrorKind k, const std::string& msg)
      : std::runtime_error(msg), kind(k) {}
  EvalErrorKind kind;
};

}  // namespace teamcheck

#endif  // TEAMCHECK_ERRORS_HPP
