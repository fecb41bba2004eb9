// Standard Tarskian (single-assignment) satisfaction for the first-order
// fragment. This is the classical reference semantics used for dependency
// membership, flatness cross-checks and normal-form evaluation; it never
// goes through the team machinery.

#ifndef TEAMCHECK_TARSKI_HPP
#define TEAMCHECK_TARSKI_HPP

#include "teamcheck/model.hpp"
#include "teamcheck/syntax.hpp"

namespace teamcheck {

// Bare-bones structure: an explicit element set with named relations and
// constants. Tuples of a relation that mention elements outside `domain`
// are never reached by quantified variables.
struct Interpretation {
  std::vector<Element> domain;
  std::map<std::string, Relation> relations;
  std::map<std::string, Element> constants;
};

// phi must be first-order (dependency-free, no ⊔/◇/∼); throws
// EvalError{UnsupportedConnective} otherwise.
bool tarski_eval(const Interpretation& ip, const Assignment& s, const Formula& phi);
bool tarski_eval(const Model& m, const Assignment& s, const Formula& phi);
inline bool tarski_eval(const Model& m, const Assignment& s, const FormulaPtr& phi) {
  return tarski_eval(m, s, *phi);
}

bool tarski_sentence(const Model& m, const Formula& phi);
inline bool tarski_sentence(const Model& m, const FormulaPtr& phi) {
  return tarski_sentence(m, *phi);
}

// Sentence over the empty signature evaluated on a bare domain.
bool tarski_empty_signature(const std::vector<Element>& domain, const Formula& phi);

}  // namespace teamcheck

#endif  // TEAMCHECK_TARSKI_HPP
