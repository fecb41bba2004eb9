// Source-to-source constructions: ∼-elimination on atoms, ⊔ pull-out,
// constancy elimination, the χ-formula for downward closures, the defining
// formula of relativized totality, and the disjunction-of-blocks normal form
// with its two team-formula translations.

#ifndef TEAMCHECK_TRANSFORMS_HPP
#define TEAMCHECK_TRANSFORMS_HPP

#include "teamcheck/dependency.hpp"
#include "teamcheck/syntax.hpp"

namespace teamcheck {

struct RewriteStep {
  std::string rule;
  FormulaPtr before;
  FormulaPtr after;
};
using RewriteTrace = std::vector<RewriteStep>;

// ∼α → ◇(¬α) for literals α; ∼Dv̄ → complemented atom. Input must be in ∼₀
// discipline; the output is ∼-free and team-equivalent. When a trace is
// given, one connected step per rewrite is recorded.
FormulaPtr eliminate_tilde_on_literals(const FormulaPtr& phi,
                                       RewriteTrace* trace = nullptr);

// Distributes ⊔ outward through ∧, ∨, ◇ and quantifiers: the input sentence
// is equivalent to the global disjunction of the returned ⊔-free sentences.
// Rejects ∼.
std::vector<FormulaPtr> pull_out_global_or(const FormulaPtr& phi);

// Replaces every constancy atom const(v̄) by equalities against fresh
// variables, existentially closed in front: ∃x(const(x) ∧ P(x)) becomes
// ∃w ∃x(x = w ∧ P(x)). Truth-preserving at the sentence level when the
// other atoms in the sentence are downwards closed (a team-level choice for
// w̄ can use several values at once, which only downwards-closed contexts
// cannot exploit). Rejects ∼ and complemented or relativized const atoms.
FormulaPtr eliminate_constancy(const FormulaPtr& phi, RewriteTrace* trace = nullptr);

// χ(x̄) = ∀p q ∃w̄((p ≠ q ∨ x̄ = w̄) ∧ Dw̄), guarded as ⊥ ⊔ χ(x̄), plus the
// side condition χ₀ = ∃x̄ Dx̄. On models where χ₀ holds, the guarded form
// evaluates exactly like the D↓ atom on every team including ∅; on models
// where χ₀ fails, the guarded form is still true on ∅ while the atom is
// false, which is why callers doing sentence-level elimination conjoin χ₀.
struct ChiForm {
  FormulaPtr guarded;
  FormulaPtr side_condition;
};
ChiForm chi_downclosure(const Dependency& d, const std::vector<std::string>& xs);

// (⋀ Px) ∧ ∃v̄((⋁ ¬Pv ∨ v̄ = x̄) ∧ all(v̄)): team-equivalent to all(x̄)@P.
FormulaPtr relativize_all_formula(const std::vector<std::string>& xs,
                                  const std::string& pred);

// Disjunction-of-blocks normal form: each block is a domain sentence ψ over
// the empty signature, positive bounds ∃ȳ∀x̄(Rx̄ → θ(x̄,ȳ)) and negative
// bounds ¬∃z̄∀x̄(Rx̄ → ξ(x̄,z̄)), all equality-only. The relation slots are
// named x1..xk; any other free variable of a θ/ξ is one of its parameters.
struct NormalFormBound {
  FormulaPtr formula;
  std::vector<std::string> params;  // ȳ (or z̄), sorted
};

struct NormalFormBlock {
  FormulaPtr psi;  // defaults to ⊤
  std::vector<NormalFormBound> thetas;
  std::vector<NormalFormBound> xis;
};

struct NormalForm {
  int arity = 0;
  std::vector<std::string> xs;  // x1..xk
  std::vector<NormalFormBlock> blocks;

  void validate() const;

  // Text format (';' may replace newlines):
  //   nf arity 2
  //   block:
  //   psi = exists p q . p != q
  //   theta = x1 = y1
  //   xi = x1 = x2
  static NormalForm parse(const std::string& text);
  std::string to_text() const;
};

// Tarskian truth of the normal form at (domain, R).
bool nf_eval(const std::vector<Element>& domain, const Relation& r,
             const NormalForm& nf);

// Team formula over FO(D₀, ⊔, const, all) equivalent to the normal-form
// dependency atom on v̄; the returned 0-ary dependencies (one per block)
// must be registered before evaluation.
struct NfTranslation {
  FormulaPtr formula;
  std::vector<DependencyPtr> zeroary;
};
NfTranslation nf_to_team_formula(const NormalForm& nf,
                                 const std::vector<std::string>& vs,
                                 const std::string& name_prefix = "nfpsi");

// The matching translation of the complemented atom.
NfTranslation nf_to_team_formula_complement(const NormalForm& nf,
                                            const std::vector<std::string>& vs,
                                            const std::string& name_prefix = "nfnpsi");

}  // namespace teamcheck

#endif  // TEAMCHECK_TRANSFORMS_HPP
