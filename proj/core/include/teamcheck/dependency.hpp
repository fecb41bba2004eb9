// Generalized dependencies as first-class values: a k-ary dependency is an
// isomorphism-closed class of pairs (domain, k-ary relation) carried here as
// a decidable membership test. Builtins, first-order-defined and table-driven
// dependencies are constructors; complement, downward closure and
// θ-restriction derive new dependencies from old ones.
//
// Membership is total in (domain, R) even when R has tuples outside the
// domain (reachable only through relativized atoms):
//   - builtins quantify over R-tuples literally (All compares R = dom^k as
//     sets, so stray tuples make it false);
//   - first-order-defined dependencies evaluate their sentence Tarskian-ly,
//     so stray tuples are invisible to quantifiers;
//   - tables reject relations that leave the domain.

#ifndef TEAMCHECK_DEPENDENCY_HPP
#define TEAMCHECK_DEPENDENCY_HPP

#include "teamcheck/model.hpp"
#include "teamcheck/syntax.hpp"

#include <functional>
#include <memory>

namespace teamcheck {

enum class DependencyKind { Builtin, FoSentence, Table, Derived };

class Dependency {
 public:
  using MemberFn = std::function<bool(const std::vector<Element>&, const Relation&)>;
  using AtomFormFn = std::function<DepAtomNode(const std::vector<std::string>&)>;

  Dependency(std::string name, int arity, DependencyKind kind, MemberFn member,
             AtomFormFn atom_form = nullptr);

  const std::string& name() const { return name_; }
  int arity() const { return arity_; }
  DependencyKind kind() const { return kind_; }

  bool member(const std::vector<Element>& domain, const Relation& r) const;

  // Atom occurrence applying this dependency to `args`. Builtins produce
  // their native grammar form; anything else needs its name registered for
  // the atom to evaluate.
  DepAtomNode atom_over(const std::vector<std::string>& args) const;

 private:
  std::string name_;
  int arity_;
  DependencyKind kind_;
  MemberFn member_;
  AtomFormFn atom_form_;
};

using DependencyPtr = std::shared_ptr<const Dependency>;

enum class BuiltinDep {
  FunctionalDependence,  // =(xs;ys)
  Independence,          // ind(xs;ys;zs)
  Inclusion,             // inc(xs;ys)
  Exclusion,             // exc(xs;ys)
  Constancy,             // const(xs)
  Totality,              // all(xs)
  NonConstancy,          // nonconst(xs): at least two values
};

// Instantiates a builtin family at a concrete argument split.
DependencyPtr make_builtin(BuiltinDep kind, const std::vector<int>& group_sizes);

// First-order-defined dependency: (M,R) ∈ D iff (M, R:=R) ⊨ sentence. The
// sentence must be first-order over {relation_symbol} plus equality.
DependencyPtr make_fo_dependency(std::string name, int arity, FormulaPtr sentence,
                                 const std::string& relation_symbol = "R");

// 0-ary dependency [ψ]: looks only at the domain.
DependencyPtr make_zeroary(std::string name, FormulaPtr sentence);

// Unary dependency over the signature {P}.
DependencyPtr make_unary(std::string name, FormulaPtr sentence,
                         const std::string& symbol = "P");

// Extensional table per domain size, closed under domain permutations at
// construction so the result is isomorphism-invariant. Sizes not listed are
// outside the class.
DependencyPtr make_table(std::string name, int arity,
                         const std::map<int, std::vector<Relation>>& table);

// Materializes a table from a predicate over the listed domain sizes.
DependencyPtr make_table_from_predicate(
    std::string name, int arity, const std::vector<int>& sizes,
    const std::function<bool(int, const Relation&)>& accept);

// ¬̃D: pointwise negated membership.
DependencyPtr complement_dep(const DependencyPtr& d);

// D↓: (M,R) ∈ D↓ iff some superset of R inside the domain is in D.
DependencyPtr downward_closure(const DependencyPtr& d, int max_cells = 20);

// D_θ: member iff in D and ∃ā ∀m̄∈R θ(m̄,ā), for θ over the empty signature
// with parameter tuples xs (the relation slots) and ys (the witnesses).
DependencyPtr restrict_theta(const DependencyPtr& d, const FormulaPtr& theta,
                             const std::vector<std::string>& xs,
                             const std::vector<std::string>& ys);

// TS-D^(P): membership of (P^M, X(x̄)). Throws EvalError on a missing
// predicate and EvalError{RelativizationDomain} when |P^M| < 2.
bool relativized_member(const Dependency& d, const Model& m,
                        const std::string& predicate, const Relation& r);

// All D-members over `domain` with no strict D-superset, sorted.
std::vector<Relation> maximal_relations(const Dependency& d,
                                        const std::vector<Element>& domain,
                                        int max_cells = 16);

struct ClassifyWitness {
  int domain_size = 0;
  Relation relation;
  std::optional<Relation> related;     // offending sub/superset
  std::optional<int> related_domain_size;
  std::string to_text() const;
};

struct PropertyResult {
  bool holds = true;
  std::optional<ClassifyWitness> witness;
};

// Exhaustive closure-property report over domain sizes 2..bound.
struct ClassifyReport {
  int bound = 0;
  PropertyResult downwards_closed;
  PropertyResult upwards_closed;
  PropertyResult empty_team;         // (M,∅) ∈ D for all tested sizes
  PropertyResult domain_independent; // membership agrees across sizes for small R
};

ClassifyReport classify(const Dependency& d, int bound, int max_cells = 16);

// Name -> dependency. Builtin families are resolved structurally by
// resolve_atom and their names are reserved.
class DependencyRegistry {
 public:
  DependencyRegistry() = default;

  void register_dependency(DependencyPtr d);
  DependencyPtr find(const std::string& name) const;
  std::vector<std::string> names() const;

  // Resolves an atom occurrence (builtin or registered), arity-checked.
  DependencyPtr resolve_atom(const DepAtomNode& atom) const;

  // Definition file, one dependency per `dependency` line:
  //   dependency NAME arity K := <first-order sentence over R and equality>
  //   dependency NAME arity K table(domain-size S): {(0),(1)}; {}
  // Table lines for the same name accumulate sizes.
  void load(const std::string& text);

 private:
  std::map<std::string, DependencyPtr> deps_;
  std::map<std::string, std::map<int, std::vector<Relation>>> table_sources_;
};

}  // namespace teamcheck

#endif  // TEAMCHECK_DEPENDENCY_HPP
