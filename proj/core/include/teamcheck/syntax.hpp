// Abstract syntax for team-semantics formulas in negation normal form,
// together with the printer and the purely syntactic rewrites (dual
// negation, vector-quantifier expansion, free variables).
//
// Concrete grammar (also in the README):
//
//   formula   := lor
//   lor       := or ("lor" or)*                      global disjunction
//   or        := and ("\/" and)*                     tensor disjunction
//   and       := unary ("/\" unary)*
//   unary     := "dia" unary | "~" unary
//             | ("exists" | "forall") VAR+ "." formula
//             | "(" formula ")" | atom
//   atom      := "top" | "bot"
//             | term "=" term | term "!=" term
//             | ["!"] NAME "(" terms ")"             relation literal
//             | ["!"] depatom ["@" NAME]
//   depatom   := "=(" groups ")" | "ind(" groups ")" | "inc(" groups ")"
//             | "exc(" groups ")" | "const(" group ")" | "all(" group ")"
//             | "nonconst(" group ")" | "atom" NAME "(" group ")"
//   groups    := group (";" group)*
//   group     := [ VAR ("," VAR)* ]
//   term      := VAR | "$" NAME                       ($ marks a constant)
//
// All binary connectives associate to the left; "/\" binds tighter than
// "\/", which binds tighter than "lor"; quantifier bodies extend as far to
// the right as possible.

#ifndef TEAMCHECK_SYNTAX_HPP
#define TEAMCHECK_SYNTAX_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace teamcheck {

class DependencyRegistry;

enum class TermKind { Variable, Constant };

struct Term {
  TermKind kind = TermKind::Variable;
  std::string name;

  static Term var(std::string n) { return {TermKind::Variable, std::move(n)}; }
  static Term constant(std::string n) { return {TermKind::Constant, std::move(n)}; }
  auto operator<=>(const Term&) const = default;
};

enum class LiteralKind { Top, Bottom, Relation, Equality };

// First-order literal; negation lives only in the `positive` flag.
struct Literal {
  bool positive = true;
  LiteralKind kind = LiteralKind::Top;
  std::string relation;     // LiteralKind::Relation
  std::vector<Term> args;   // Relation: any arity; Equality: exactly two

  auto operator<=>(const Literal&) const = default;
};

// Dependency atom occurrence. Builtins carry their argument grouping (the
// ';'-separated split); registered atoms have a single group.
struct DepAtomNode {
  std::string name;  // "dep","ind","inc","exc","const","all","nonconst" or registered
  std::vector<std::vector<std::string>> groups;
  std::optional<std::string> relativized_to;  // @P
  bool complemented = false;                  // ¬̃D

  std::vector<std::string> flat_args() const;
  int arity() const;
  auto operator<=>(const DepAtomNode&) const = default;
};

bool is_builtin_dep_name(const std::string& name);

enum class FormulaKind {
  Literal,
  DepAtom,
  And,
  TensorOr,
  GlobalOr,
  Diamond,    // ◇
  ContraNeg,  // ∼
  Exists,
  Forall,
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

class Formula {
 public:
  FormulaKind kind;
  Literal lit;                     // Literal
  DepAtomNode dep;                 // DepAtom
  FormulaPtr left, right;          // children (right empty for unary nodes)
  std::vector<std::string> bound;  // Exists/Forall tuple, pairwise distinct

  static FormulaPtr literal(Literal l);
  static FormulaPtr top();
  static FormulaPtr bottom();
  static FormulaPtr rel(std::string name, std::vector<Term> args, bool positive = true);
  static FormulaPtr eq(Term a, Term b, bool positive = true);
  static FormulaPtr dep_atom(DepAtomNode d);
  static FormulaPtr conj(FormulaPtr a, FormulaPtr b);
  static FormulaPtr tensor(FormulaPtr a, FormulaPtr b);
  static FormulaPtr global_or(FormulaPtr a, FormulaPtr b);
  static FormulaPtr diamond(FormulaPtr a);
  static FormulaPtr contra(FormulaPtr a);
  static FormulaPtr exists(std::vector<std::string> vars, FormulaPtr a);
  static FormulaPtr forall(std::vector<std::string> vars, FormulaPtr a);

  // Left-assoc folds; empty input yields the stated unit.
  static FormulaPtr conj_all(const std::vector<FormulaPtr>& fs);      // unit ⊤
  static FormulaPtr tensor_all(const std::vector<FormulaPtr>& fs);    // unit ⊤
  static FormulaPtr global_or_all(const std::vector<FormulaPtr>& fs); // unit ⊥
};

bool structurally_equal(const Formula& a, const Formula& b);
inline bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b) {
  return structurally_equal(*a, *b);
}

// Emits the concrete grammar; parse(print(f)) is structurally equal to f.
std::string print_formula(const Formula& f);
inline std::string print_formula(const FormulaPtr& f) { return print_formula(*f); }

// NNF negation of a first-order formula: swaps literal polarity, ∧/∨ and
// ∃/∀. Rejects dependency atoms, ⊔, ◇ and ∼. Involutive.
FormulaPtr dual_negate(const FormulaPtr& f);

// Rewrites every quantifier over an n-tuple into n nested single-variable
// quantifiers; team-semantically equivalent to the input.
FormulaPtr expand_vector_quantifiers(const FormulaPtr& f);

std::set<std::string> free_variables(const Formula& f);
inline std::set<std::string> free_variables(const FormulaPtr& f) {
  return free_variables(*f);
}

// Dependency-free and ⊔/◇/∼-free, i.e. plain first-order (flat).
bool is_first_order(const Formula& f);
inline bool is_first_order(const FormulaPtr& f) { return is_first_order(*f); }

// ∼₀ discipline: every ∼ sits directly on a literal or a dependency atom.
bool is_tilde0(const Formula& f);
inline bool is_tilde0(const FormulaPtr& f) { return is_tilde0(*f); }
void validate_tilde0(const Formula& f);  // throws std::invalid_argument

// Relation symbols with arities, constants, and relativization predicates
// mentioned by a formula. Used to enumerate models.
struct SignatureInfo {
  std::map<std::string, int> relations;
  std::set<std::string> constants;
  std::set<std::string> predicates;  // from @P suffixes, always unary

  void merge(const SignatureInfo& other);
};
SignatureInfo collect_signature(const Formula& f);

// Substitution of variables by variables (capture is the caller's problem;
// transforms only substitute fresh names).
FormulaPtr rename_variables(const FormulaPtr& f,
                            const std::map<std::string, std::string>& renaming);

// A name not occurring in `used`, built from `base` by appending a counter.
std::string fresh_name(const std::string& base, const std::set<std::string>& used);

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t position)
      : std::runtime_error(msg + " (at position " + std::to_string(position) + ")"),
        pos(position) {}
  std::size_t pos;
};

// Parses the concrete grammar. Registered dependency names are resolved (and
// arity-checked) against the registry; builtin atoms only need a well-formed
// group split. With tilde0_mode, ∼ is only accepted on literals and
// dependency atoms.
FormulaPtr parse_formula(const std::string& text, const DependencyRegistry& registry,
                         bool tilde0_mode = false);

}  // namespace teamcheck

#endif  // TEAMCHECK_SYNTAX_HPP
