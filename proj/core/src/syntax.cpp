#include "teamcheck/syntax.hpp"

#include <algorithm>
#include <sstream>

namespace teamcheck {

std::vector<std::string> DepAtomNode::flat_args() const {
  std::vector<std::string> out;
  for (const auto& g : groups) out.insert(out.end(), g.begin(), g.end());
  return out;
}

int DepAtomNode::arity() const {
  int n = 0;
  for (const auto& g : groups) n += static_cast<int>(g.size());
  return n;
}

bool is_builtin_dep_name(const std::string& name) {
  return name == "dep" || name == "ind" || name == "inc" || name == "exc" ||
         name == "const" || name == "all" || name == "nonconst";
}

namespace {

std::shared_ptr<Formula> make(FormulaKind k) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  return f;
}

void check_bound_vars(const std::vector<std::string>& vars) {
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j])
        throw std::invalid_argument("quantifier tuple repeats variable: " + vars[i]);
}

}  // namespace

FormulaPtr Formula::literal(Literal l) {
  if (l.kind == LiteralKind::Equality && l.args.size() != 2)
    throw std::invalid_argument("equality literal needs exactly two terms");
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Literal;
  f->lit = std::move(l);
  return f;
}

FormulaPtr Formula::top() {
  return literal({true, LiteralKind::Top, "", {}});
}

FormulaPtr Formula::bottom() {
  return literal({true, LiteralKind::Bottom, "", {}});
}

FormulaPtr Formula::rel(std::string name, std::vector<Term> args, bool positive) {
  return literal({positive, LiteralKind::Relation, std::move(name), std::move(args)});
}

FormulaPtr Formula::eq(Term a, Term b, bool positive) {
  return literal({positive, LiteralKind::Equality, "", {std::move(a), std::move(b)}});
}

FormulaPtr Formula::dep_atom(DepAtomNode d) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::DepAtom;
  f->dep = std::move(d);
  return f;
}

FormulaPtr Formula::conj(FormulaPtr a, FormulaPtr b) {
  auto f = make(FormulaKind::And);
  f->left = std::move(a);
  f->right = std::move(b);
  return f;
}

FormulaPtr Formula::tensor(FormulaPtr a, FormulaPtr b) {
  auto f = make(FormulaKind::TensorOr);
  f->left = std::move(a);
  f->right = std::move(b);
  return f;
}

FormulaPtr Formula::global_or(FormulaPtr a, FormulaPtr b) {
  auto f = make(FormulaKind::GlobalOr);
  f->left = std::move(a);
  f->right = std::move(b);
  return f;
}

FormulaPtr Formula::diamond(FormulaPtr a) {
  auto f = make(FormulaKind::Diamond);
  f->left = std::move(a);
  return f;
}

FormulaPtr Formula::contra(FormulaPtr a) {
  auto f = make(FormulaKind::ContraNeg);
  f->left = std::move(a);
  return f;
}

FormulaPtr Formula::exists(std::vector<std::string> vars, FormulaPtr a) {
  check_bound_vars(vars);
  if (vars.empty()) return a;
  auto f = make(FormulaKind::Exists);
  f->bound = std::move(vars);
  f->left = std::move(a);
  return f;
}

FormulaPtr Formula::forall(std::vector<std::string> vars, FormulaPtr a) {
  check_bound_vars(vars);
  if (vars.empty()) return a;
  auto f = make(FormulaKind::Forall);
  f->bound = std::move(vars);
  f->left = std::move(a);
  return f;
}

FormulaPtr Formula::conj_all(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return top();
  FormulaPtr acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
  return acc;
}

FormulaPtr Formula::tensor_all(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return top();
  FormulaPtr acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = tensor(acc, fs[i]);
  return acc;
}

FormulaPtr Formula::global_or_all(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return bottom();
  FormulaPtr acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = global_or(acc, fs[i]);
  return acc;
}

bool structurally_equal(const Formula& a, const Formula& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case FormulaKind::Literal:
      return a.lit == b.lit;
    case FormulaKind::DepAtom:
      return a.dep == b.dep;
    case FormulaKind::And:
    case FormulaKind::TensorOr:
    case FormulaKind::GlobalOr:
      return structurally_equal(*a.left, *b.left) &&
             structurally_equal(*a.right, *b.right);
    case FormulaKind::Diamond:
    case FormulaKind::ContraNeg:
      return structurally_equal(*a.left, *b.left);
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      return a.bound == b.bound && structurally_equal(*a.left, *b.left);
  }
  return false;
}

namespace {

// Binding strength for parenthesization; larger binds tighter.
int precedence(FormulaKind k) {
  switch (k) {
    case FormulaKind::GlobalOr: return 1;
    case FormulaKind::TensorOr: return 2;
    case FormulaKind::And: return 3;
    default: return 4;  // atoms and prefix operators
  }
}

std::string term_text(const Term& t) {
  return t.kind == TermKind::Constant ? "$" + t.name : t.name;
}

std::string literal_text(const Literal& l) {
  switch (l.kind) {
    case LiteralKind::Top:
      return l.positive ? "top" : "bot";
    case LiteralKind::Bottom:
      return l.positive ? "bot" : "top";
    case LiteralKind::Equality:
      return term_text(l.args[0]) + (l.positive ? " = " : " != ") + term_text(l.args[1]);
    case LiteralKind::Relation: {
      std::string out = l.positive ? "" : "!";
      out += l.relation + "(";
      for (std::size_t i = 0; i < l.args.size(); ++i) {
        if (i) out += ",";
        out += term_text(l.args[i]);
      }
      out += ")";
      return out;
    }
  }
  return "";
}

std::string dep_text(const DepAtomNode& d) {
  std::string out = d.complemented ? "!" : "";
  std::string open;
  if (d.name == "dep")
    open = "=(";
  else if (is_builtin_dep_name(d.name))
    open = d.name + "(";
  else
    open = "atom " + d.name + "(";
  out += open;
  for (std::size_t g = 0; g < d.groups.size(); ++g) {
    if (g) out += ";";
    for (std::size_t i = 0; i < d.groups[g].size(); ++i) {
      if (i) out += ",";
      out += d.groups[g][i];
    }
  }
  out += ")";
  if (d.relativized_to) out += "@" + *d.relativized_to;
  return out;
}

void print_rec(const Formula& f, int parent, std::string& out) {
  int self = precedence(f.kind);
  bool parens = self < parent;
  // Quantifier scope extends maximally to the right, so a quantified
  // formula must be bracketed whenever anything could follow it.
  if (f.kind == FormulaKind::Exists || f.kind == FormulaKind::Forall)
    parens = parent > 0;
  if (parens) out += "(";
  switch (f.kind) {
    case FormulaKind::Literal:
      out += literal_text(f.lit);
      break;
    case FormulaKind::DepAtom:
      out += dep_text(f.dep);
      break;
    case FormulaKind::And:
      print_rec(*f.left, self, out);
      out += " /\\ ";
      print_rec(*f.right, self + 1, out);
      break;
    case FormulaKind::TensorOr:
      print_rec(*f.left, self, out);
      out += " \\/ ";
      print_rec(*f.right, self + 1, out);
      break;
    case FormulaKind::GlobalOr:
      print_rec(*f.left, self, out);
      out += " lor ";
      print_rec(*f.right, self + 1, out);
      break;
    case FormulaKind::Diamond:
      out += "dia ";
      print_rec(*f.left, self, out);
      break;
    case FormulaKind::ContraNeg:
      out += "~ ";
      print_rec(*f.left, self, out);
      break;
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      out += f.kind == FormulaKind::Exists ? "exists" : "forall";
      for (const auto& v : f.bound) out += " " + v;
      out += " . ";
      print_rec(*f.left, 0, out);  // dot scope is maximal
      break;
    }
  }
  if (parens) out += ")";
}

}  // namespace

std::string print_formula(const Formula& f) {
  std::string out;
  print_rec(f, 0, out);
  return out;
}

FormulaPtr dual_negate(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::Literal: {
      Literal l = f->lit;
      if (l.kind == LiteralKind::Top || l.kind == LiteralKind::Bottom) {
        bool is_true = (l.kind == LiteralKind::Top) == l.positive;
        return is_true ? Formula::bottom() : Formula::top();
      }
      l.positive = !l.positive;
      return Formula::literal(std::move(l));
    }
    case FormulaKind::And:
      return Formula::tensor(dual_negate(f->left), dual_negate(f->right));
    case FormulaKind::TensorOr:
      return Formula::conj(dual_negate(f->left), dual_negate(f->right));
    case FormulaKind::Exists:
      return Formula::forall(f->bound, dual_negate(f->left));
    case FormulaKind::Forall:
      return Formula::exists(f->bound, dual_negate(f->left));
    default:
      throw std::invalid_argument(
          "dual negation is defined for first-order formulas only");
  }
}

FormulaPtr expand_vector_quantifiers(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::Literal:
    case FormulaKind::DepAtom:
      return f;
    case FormulaKind::And:
      return Formula::conj(expand_vector_quantifiers(f->left),
                           expand_vector_quantifiers(f->right));
    case FormulaKind::TensorOr:
      return Formula::tensor(expand_vector_quantifiers(f->left),
                             expand_vector_quantifiers(f->right));
    case FormulaKind::GlobalOr:
      return Formula::global_or(expand_vector_quantifiers(f->left),
                                expand_vector_quantifiers(f->right));
    case FormulaKind::Diamond:
      return Formula::diamond(expand_vector_quantifiers(f->left));
    case FormulaKind::ContraNeg:
      return Formula::contra(expand_vector_quantifiers(f->left));
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      FormulaPtr body = expand_vector_quantifiers(f->left);
      for (auto it = f->bound.rbegin(); it != f->bound.rend(); ++it) {
        body = f->kind == FormulaKind::Exists ? Formula::exists({*it}, body)
                                              : Formula::forall({*it}, body);
      }
      return body;
    }
  }
  return f;
}

namespace {

void free_vars_rec(const Formula& f, std::set<std::string>& bound,
                   std::set<std::string>& out) {
  switch (f.kind) {
    case FormulaKind::Literal:
      for (const auto& t : f.lit.args)
        if (t.kind == TermKind::Variable && !bound.count(t.name)) out.insert(t.name);
      break;
    case FormulaKind::DepAtom:
      for (const auto& v : f.dep.flat_args())
        if (!bound.count(v)) out.insert(v);
      break;
    case FormulaKind::And:
    case FormulaKind::TensorOr:
    case FormulaKind::GlobalOr:
      free_vars_rec(*f.left, bound, out);
      free_vars_rec(*f.right, bound, out);
      break;
    case FormulaKind::Diamond:
    case FormulaKind::ContraNeg:
      free_vars_rec(*f.left, bound, out);
      break;
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      std::vector<std::string> added;
      for (const auto& v : f.bound)
        if (bound.insert(v).second) added.push_back(v);
      free_vars_rec(*f.left, bound, out);
      for (const auto& v : added) bound.erase(v);
      break;
    }
  }
}

}  // namespace

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> bound, out;
  free_vars_rec(f, bound, out);
  return out;
}

bool is_first_order(const Formula& f) {
  switch (f.kind) {
    case FormulaKind::Literal:
      return true;
    case FormulaKind::DepAtom:
    case FormulaKind::GlobalOr:
    case FormulaKind::Diamond:
    case FormulaKind::ContraNeg:
      return false;
    case FormulaKind::And:
    case FormulaKind::TensorOr:
      return is_first_order(*f.left) && is_first_order(*f.right);
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      return is_first_order(*f.left);
  }
  return false;
}

bool is_tilde0(const Formula& f) {
  switch (f.kind) {
    case FormulaKind::Literal:
    case FormulaKind::DepAtom:
      return true;
    case FormulaKind::ContraNeg:
      return f.left->kind == FormulaKind::Literal ||
             f.left->kind == FormulaKind::DepAtom;
    case FormulaKind::And:
    case FormulaKind::TensorOr:
    case FormulaKind::GlobalOr:
      return is_tilde0(*f.left) && is_tilde0(*f.right);
    case FormulaKind::Diamond:
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      return is_tilde0(*f.left);
  }
  return false;
}

void validate_tilde0(const Formula& f) {
  if (!is_tilde0(f))
    throw std::invalid_argument(
        "~ may only appear in front of literals and dependency atoms");
}

void SignatureInfo::merge(const SignatureInfo& other) {
  for (const auto& [name, arity] : other.relations) {
    auto it = relations.find(name);
    if (it != relations.end() && it->second != arity)
      throw std::invalid_argument("relation used with two arities: " + name);
    relations.emplace(name, arity);
  }
  constants.insert(other.constants.begin(), other.constants.end());
  predicates.insert(other.predicates.begin(), other.predicates.end());
}

namespace {

void signature_rec(const Formula& f, SignatureInfo& out) {
  switch (f.kind) {
    case FormulaKind::Literal:
      if (f.lit.kind == LiteralKind::Relation) {
        SignatureInfo one;
        one.relations[f.lit.relation] = static_cast<int>(f.lit.args.size());
        out.merge(one);
      }
      for (const auto& t : f.lit.args)
        if (t.kind == TermKind::Constant) out.constants.insert(t.name);
      break;
    case FormulaKind::DepAtom:
      if (f.dep.relativized_to) out.predicates.insert(*f.dep.relativized_to);
      break;
    case FormulaKind::And:
    case FormulaKind::TensorOr:
    case FormulaKind::GlobalOr:
      signature_rec(*f.left, out);
      signature_rec(*f.right, out);
      break;
    default:
      if (f.left) signature_rec(*f.left, out);
      break;
  }
}

}  // namespace

SignatureInfo collect_signature(const Formula& f) {
  SignatureInfo out;
  signature_rec(f, out);
  return out;
}

FormulaPtr rename_variables(const FormulaPtr& f,
                            const std::map<std::string, std::string>& renaming) {
  auto rename = [&](const std::string& v) {
    auto it = renaming.find(v);
    return it == renaming.end() ? v : it->second;
  };
  switch (f->kind) {
    case FormulaKind::Literal: {
      Literal l = f->lit;
      for (auto& t : l.args)
        if (t.kind == TermKind::Variable) t.name = rename(t.name);
      return Formula::literal(std::move(l));
    }
    case FormulaKind::DepAtom: {
      DepAtomNode d = f->dep;
      for (auto& g : d.groups)
        for (auto& v : g) v = rename(v);
      return Formula::dep_atom(std::move(d));
    }
    case FormulaKind::And:
      return Formula::conj(rename_variables(f->left, renaming),
                           rename_variables(f->right, renaming));
    case FormulaKind::TensorOr:
      return Formula::tensor(rename_variables(f->left, renaming),
                             rename_variables(f->right, renaming));
    case FormulaKind::GlobalOr:
      return Formula::global_or(rename_variables(f->left, renaming),
                                rename_variables(f->right, renaming));
    case FormulaKind::Diamond:
      return Formula::diamond(rename_variables(f->left, renaming));
    case FormulaKind::ContraNeg:
      return Formula::contra(rename_variables(f->left, renaming));
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      // Bound occurrences shadow the renaming.
      std::map<std::string, std::string> inner = renaming;
      for (const auto& v : f->bound) inner.erase(v);
      auto body = rename_variables(f->left, inner);
      return f->kind == FormulaKind::Exists ? Formula::exists(f->bound, body)
                                            : Formula::forall(f->bound, body);
    }
  }
  return f;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
  if (!used.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!used.count(cand)) return cand;
  }
}

}  // namespace teamcheck
