#include "teamcheck/tarski.hpp"

#include "teamcheck/errors.hpp"

namespace teamcheck {

namespace {

Element term_value(const Interpretation& ip, const Assignment& s, const Term& t) {
  if (t.kind == TermKind::Variable) {
    auto it = s.find(t.name);
    if (it == s.end())
      throw EvalError(EvalErrorKind::MissingVariable, "unbound variable: " + t.name);
    return it->second;
  }
  auto it = ip.constants.find(t.name);
  if (it == ip.constants.end())
    throw EvalError(EvalErrorKind::MissingConstant, "unknown constant: " + t.name);
  return it->second;
}

bool literal_holds(const Interpretation& ip, const Assignment& s, const Literal& l) {
  bool value = false;
  switch (l.kind) {
    case LiteralKind::Top: value = true; break;
    case LiteralKind::Bottom: value = false; break;
    case LiteralKind::Equality:
      value = term_value(ip, s, l.args[0]) == term_value(ip, s, l.args[1]);
      break;
    case LiteralKind::Relation: {
      auto it = ip.relations.find(l.relation);
      if (it == ip.relations.end())
        throw EvalError(EvalErrorKind::MissingRelation,
                        "model does not interpret relation " + l.relation);
      if (it->second.arity() != static_cast<int>(l.args.size()))
        throw EvalError(EvalErrorKind::ArityMismatch,
                        "relation arity mismatch: " + l.relation);
      Tuple t;
      t.reserve(l.args.size());
      for (const auto& a : l.args) t.push_back(term_value(ip, s, a));
      value = it->second.contains(t);
      break;
    }
  }
  return l.positive ? value : !value;
}

bool eval_rec(const Interpretation& ip, Assignment& s, const Formula& f) {
  switch (f.kind) {
    case FormulaKind::Literal:
      return literal_holds(ip, s, f.lit);
    case FormulaKind::And:
      return eval_rec(ip, s, *f.left) && eval_rec(ip, s, *f.right);
    case FormulaKind::TensorOr:
      // Classically, tensor disjunction is plain disjunction.
      return eval_rec(ip, s, *f.left) || eval_rec(ip, s, *f.right);
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      bool exists = f.kind == FormulaKind::Exists;
      auto tuples = all_tuples(ip.domain, static_cast<int>(f.bound.size()));
      std::vector<std::optional<Element>> saved;
      saved.reserve(f.bound.size());
      for (const auto& v : f.bound) {
        auto it = s.find(v);
        saved.push_back(it == s.end() ? std::nullopt : std::optional<Element>(it->second));
      }
      bool result = !exists;
      for (const auto& t : tuples) {
        for (std::size_t i = 0; i < f.bound.size(); ++i) s[f.bound[i]] = t[i];
        bool v = eval_rec(ip, s, *f.left);
        if (exists && v) { result = true; break; }
        if (!exists && !v) { result = false; break; }
      }
      for (std::size_t i = 0; i < f.bound.size(); ++i) {
        if (saved[i])
          s[f.bound[i]] = *saved[i];
        else
          s.erase(f.bound[i]);
      }
      return result;
    }
    default:
      throw EvalError(EvalErrorKind::UnsupportedConnective,
                      "Tarskian evaluation is defined for first-order formulas only");
  }
}

}  // namespace

bool tarski_eval(const Interpretation& ip, const Assignment& s, const Formula& phi) {
  Assignment scratch = s;
  return eval_rec(ip, scratch, phi);
}

bool tarski_eval(const Model& m, const Assignment& s, const Formula& phi) {
  Interpretation ip{m.domain(), m.relations(), m.constants()};
  return tarski_eval(ip, s, phi);
}

bool tarski_sentence(const Model& m, const Formula& phi) {
  if (!free_variables(phi).empty())
    throw std::invalid_argument("sentence expected, formula has free variables");
  return tarski_eval(m, Assignment{}, phi);
}

bool tarski_empty_signature(const std::vector<Element>& domain, const Formula& phi) {
  Interpretation ip;
  ip.domain = domain;
  return tarski_eval(ip, Assignment{}, phi);
}

}  // namespace teamcheck
