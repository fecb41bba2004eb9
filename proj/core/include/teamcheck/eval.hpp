// Lax team-semantics evaluation over finite models.
//
// The evaluator implements the team rules literally (subset covers for ∨,
// supplementing functions for ∃, duplication for ∀, nonempty subteams for ◇)
// and, by default, a set of exact structural shortcuts without which the
// rule-literal search is hopeless even at desk scale:
//
//   - flat fast path: a maximal first-order subformula is evaluated
//     pointwise (flatness);
//   - flat fusion: ∨ and ◇ over first-order operands reduce to pointwise /
//     per-row checks, with the operands still evaluated through team rules;
//   - factored ∃: ∃v̄(ψ₁ ∧ … ∧ ψₙ) where every ψᵢ is first-order or a
//     dependency atom over v̄-variables only is decided by a search over the
//     set of extension tuples actually used, which is what the atoms see;
//   - locality: teams are restricted to the free variables of the node;
//   - unit tensor: ⊤ ∨ ψ holds iff some (possibly empty) subteam satisfies
//     ψ; ⊥ ∨ ψ holds iff the whole team satisfies ψ.
//
// EvalOptions::pedantic() switches every shortcut off; the test suites check
// that both modes agree wherever the literal search is feasible.

#ifndef TEAMCHECK_EVAL_HPP
#define TEAMCHECK_EVAL_HPP

#include "teamcheck/dependency.hpp"
#include "teamcheck/errors.hpp"
#include "teamcheck/model.hpp"
#include "teamcheck/syntax.hpp"

#include <cstdint>
#include <unordered_map>

namespace teamcheck {

enum class TensorRule {
  Lax,               // TS-∨: X = Y ∪ Z, overlap allowed
  DisjointNonempty,  // deliberately wrong rule for mutant testing
};

struct EvalOptions {
  bool memo = true;
  bool flat_fastpath = true;
  bool flat_fusion = true;
  bool factored_exists = true;
  bool locality_restrict = true;
  bool tensor_unit_shortcut = true;
  TensorRule tensor_rule = TensorRule::Lax;

  static EvalOptions fast() { return {}; }
  static EvalOptions pedantic() {
    EvalOptions o;
    o.memo = false;
    o.flat_fastpath = false;
    o.flat_fusion = false;
    o.factored_exists = false;
    o.locality_restrict = false;
    o.tensor_unit_shortcut = false;
    return o;
  }
};

struct EvalLimits {
  int max_domain = 12;
  std::size_t max_team = 4096;
  std::uint64_t node_budget = 200'000'000;
};

class EvalContext {
 public:
  EvalContext(const Model& m, const DependencyRegistry& registry,
              EvalOptions opts = {}, EvalLimits limits = {});

  bool team_eval(const Team& x, const FormulaPtr& phi);
  bool sentence_truth(const FormulaPtr& phi);

  const Model& model() const { return model_; }
  std::uint64_t nodes_used() const { return nodes_; }

 private:
  struct NodeInfo {
    bool first_order = false;
    std::vector<std::string> free_vars;  // sorted
    DependencyPtr resolved;              // DepAtom nodes only
    bool info_ready = false;
  };

  const NodeInfo& info(const Formula* f);
  bool eval_rec(const Team& x, const Formula* f);
  bool eval_literal(const Team& x, const Formula& f);
  bool eval_dep_atom(const Team& x, const Formula& f);
  bool eval_tensor(const Team& x, const Formula& f);
  bool eval_diamond(const Team& x, const Formula& f);
  bool eval_exists(const Team& x, const Formula& f);
  std::optional<bool> try_factored_exists(const Team& x, const Formula& f);
  bool generic_exists(const Team& x, const Formula& f);
  void charge_node();

  const Model& model_;
  const DependencyRegistry& registry_;
  EvalOptions opts_;
  EvalLimits limits_;
  std::uint64_t nodes_ = 0;
  std::vector<FormulaPtr> roots_;  // caches key on node identity
  std::unordered_map<const Formula*, NodeInfo> node_info_;
  std::unordered_map<std::string, bool> memo_;
};

bool team_eval(const Model& m, const DependencyRegistry& registry, const Team& x,
               const FormulaPtr& phi, EvalOptions opts = {}, EvalLimits limits = {});

// Sentence truth: evaluation over the team {∅}.
bool sentence_truth(const Model& m, const DependencyRegistry& registry,
                    const FormulaPtr& phi, EvalOptions opts = {},
                    EvalLimits limits = {});

// Pointwise Tarskian evaluation of a first-order formula; by flatness this
// equals team_eval. Throws on non-first-order input.
bool flat_fastpath(const Model& m, const Team& x, const Formula& phi);

}  // namespace teamcheck

#endif  // TEAMCHECK_EVAL_HPP
