// Exhaustive-enumeration verification: team enumeration, brute-force formula
// equivalence with counterexamples, flatness audits, identity-type utilities
// and the bounded stair-configuration search.

#ifndef TEAMCHECK_ORACLE_HPP
#define TEAMCHECK_ORACLE_HPP

#include "teamcheck/dependency.hpp"
#include "teamcheck/eval.hpp"
#include "teamcheck/model.hpp"
#include "teamcheck/syntax.hpp"

namespace teamcheck {

struct Counterexample {
  Model model;
  Team team;
  bool left = false;
  bool right = false;
  std::string to_text() const;
};

// All teams over `vars` with at most max_team_size rows, the empty team
// included, in canonical order. The visitor returns false to stop early.
void enumerate_teams(const Model& m, const std::vector<std::string>& vars,
                     std::size_t max_team_size,
                     const std::function<bool(const Team&)>& visit);

std::vector<Team> all_teams(const Model& m, const std::vector<std::string>& vars,
                            std::size_t max_team_size = SIZE_MAX);

struct EquivOptions {
  std::vector<int> domain_sizes = {2, 3};
  std::size_t max_team_size = SIZE_MAX;
  std::size_t max_models = 1u << 20;
  EvalOptions eval = {};
  EvalLimits limits = {};
};

// Enumerates every model over `sig` for the listed domain sizes (every
// relation interpretation, relativization predicates restricted to
// extensions of size >= 2, every constant interpretation).
void enumerate_models(const SignatureInfo& sig, const std::vector<int>& sizes,
                      std::size_t max_models,
                      const std::function<bool(const Model&)>& visit);

// Exhaustive equivalence over the shared signature: first mismatching
// (model, team) in canonical order, or nullopt when none exists within the
// bounds.
std::optional<Counterexample> formulas_equivalent(
    const FormulaPtr& a, const FormulaPtr& b, const DependencyRegistry& registry,
    const std::vector<std::string>& vars, const EquivOptions& opts = {});

// team_eval versus pointwise Tarskian evaluation for a first-order formula.
// opts.eval selects the evaluation mode under audit (e.g. the mutant tensor
// rule).
std::optional<Counterexample> flatness_audit(const FormulaPtr& phi,
                                             const std::vector<std::string>& vars,
                                             const EquivOptions& opts = {});

// Bounded check that θ(x̄,ȳ) entails a fixed equality pattern on ȳ: for each
// pair y_i, y_j either θ → y_i = y_j or θ → y_i ≠ y_j is valid on all
// domains of size 2..bound (0 picks 2·|ȳ|+|x̄|, a documented approximation).
bool fixes_identity_type(const FormulaPtr& theta, const std::vector<std::string>& xs,
                         const std::vector<std::string>& ys, int size_bound = 0);

// The identity-type strengthening: ⋀_{a_i=a_j}(y_i=y_j) ∧ ⋀_{a_i≠a_j}(y_i≠y_j) ∧ θ.
FormulaPtr fix_identity(const FormulaPtr& theta, const std::vector<std::string>& ys,
                        const Tuple& a);

// Image of a relation under a domain bijection given as an element-indexed
// table.
Relation transport_relation(const std::vector<Element>& h, const Relation& r);

// The bijection a_i ↦ b_i extended order-preservingly on the complements,
// provided ā and b̄ have the same identity type and it maps the θ-defined
// set of ā onto that of b̄; nullopt otherwise.
std::optional<std::vector<Element>> find_bijection(
    int domain_size, const FormulaPtr& theta, const std::vector<std::string>& xs,
    const std::vector<std::string>& ys, const Tuple& a, const Tuple& b);

// Alternating inclusion chain P₀ ⊊ Q₀ ⊊ P₁ ⊊ … with P_i ∈ D and Q_i ∉ D;
// depth counts the Q links. Growing depth with |M| is finite evidence toward
// the forbidden configuration, not a decision procedure.
struct StairChain {
  std::vector<Relation> links;  // P₀, Q₀, P₁, …
  int depth = 0;
};

StairChain stair_search(const Dependency& d, const std::vector<Element>& domain,
                        int max_depth, int max_cells = 16);

}  // namespace teamcheck

#endif  // TEAMCHECK_ORACLE_HPP
