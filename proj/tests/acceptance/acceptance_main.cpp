// Acceptance suite: one pass/fail line per criterion. Every check is exact
// (brute-force enumeration at the stated sizes); the binary exits nonzero if
// any criterion fails.

#include "teamcheck/eval.hpp"
#include "teamcheck/oracle.hpp"
#include "teamcheck/tarski.hpp"
#include "teamcheck/transforms.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>

using namespace teamcheck;

namespace {

DependencyRegistry& reg() {
  static DependencyRegistry r;
  return r;
}

std::vector<Element> dom(int n) {
  std::vector<Element> d(n);
  std::iota(d.begin(), d.end(), 0);
  return d;
}

std::vector<std::string> var_list(const Formula& f) {
  auto fv = free_variables(f);
  return {fv.begin(), fv.end()};
}

// ---------------------------------------------------------------------------
// Criterion 1: flatness. team_eval (with the Tarskian fast path disabled)
// equals pointwise Tarskian evaluation for >= 50 FO formulas, depth <= 4,
// <= 2 free variables, every model of size 2..3, every team.
// ---------------------------------------------------------------------------
std::string criterion_flatness() {
  std::vector<std::string> catalog = {
      // equality-only
      "x = x", "x != y", "x = y /\\ y = x", "x = y \\/ x != y",
      "exists z . z = x", "exists z . z != x /\\ z != y",
      "forall z . z = x \\/ z != x", "forall z . exists u . z != u",
      "exists z u . z != u /\\ x = x", "top", "bot \\/ x = x",
      // unary P
      "P(x)", "!P(x)", "P(x) \\/ !P(x)", "P(x) /\\ P(y)",
      "P(x) \\/ P(y)", "exists z . P(z)", "forall z . P(z) \\/ z = x",
      "exists z . P(z) /\\ z != x", "forall z . exists u . P(u) \\/ u = z",
      "P(x) /\\ (P(y) \\/ x = y)", "exists z . forall u . P(z) \\/ u = u",
      "(P(x) \\/ P(y)) /\\ (P(y) \\/ P(x))",
      "exists z . (P(z) /\\ z = x) \\/ (P(z) /\\ z = y)",
      "forall z . !P(z) \\/ P(z)",
      "exists z . exists u . P(z) /\\ !P(u)",
      "forall z . forall u . z = u \\/ P(z) \\/ !P(u)",
      "exists z . P(z) /\\ (forall u . P(u) \\/ u != z)",
      "P(x) \\/ (exists z . P(z) /\\ z != x)",
      "(exists z . P(z)) /\\ (exists z . !P(z)) \\/ x = x",
      // binary R, mostly one free variable to keep the model sweep honest
      // but affordable (512 interpretations at size 3)
      "R(x,x)", "!R(x,x)", "R(x,y)", "R(x,y) /\\ (R(y,x) \\/ x = y)",
      "exists z . R(x,z)", "exists z . R(z,x) /\\ z != x",
      "forall z . R(z,z) \\/ z != x",
      "exists z . forall u . R(z,u) \\/ u = z",
      "forall z . exists u . R(z,u)",
      "exists z u . R(z,u) /\\ z != u",
      "forall z . R(x,z) \\/ R(z,x)",
      "exists z . R(z,z) /\\ (exists u . !R(u,z))",
      "forall z u . R(z,u) \\/ !R(z,u)",
      "exists z . R(x,z) /\\ (forall u . R(u,z) \\/ u = x)",
      "(R(x,x) \\/ R(x,x)) /\\ x != x \\/ x = x",
      // mixed signature
      "P(x) /\\ R(x,y)",
      "exists z . P(z) /\\ R(z,x)",
      "forall z . !P(z) \\/ R(z,z)",
      "exists z . forall u . P(u) \\/ R(z,u)",
      "forall z . exists u . P(z) \\/ R(u,z)",
      "forall z . (P(z) /\\ R(z,z)) \\/ z = x",
      "exists z u . (P(z) /\\ R(z,u)) \\/ (P(u) /\\ R(u,z))",
  };
  if (catalog.size() < 50) return "catalog too small";

  EquivOptions opts;
  opts.domain_sizes = {2, 3};
  opts.eval.flat_fastpath = false;  // the team route must use the team rules
  std::size_t checked = 0;
  for (const auto& text : catalog) {
    FormulaPtr phi = parse_formula(text, reg());
    auto ce = flatness_audit(phi, var_list(*phi), opts);
    if (ce) return "counterexample for `" + text + "`:\n" + ce->to_text();
    ++checked;
  }
  return checked == catalog.size() ? "" : "incomplete run";
}

// ---------------------------------------------------------------------------
// Criterion 2: vector quantifiers. expand_vector_quantifiers preserves
// team_eval on all teams, |M| = 2, tuples up to length 2.
// ---------------------------------------------------------------------------
std::string criterion_vector_quantifiers() {
  std::vector<std::string> catalog = {
      "exists u w . u != w",
      "exists u w . =(u;w)",
      "exists u w . R(u,w) /\\ const(w)",
      "exists u w . inc(u;w) /\\ u = x",
      "forall u w . u = w \\/ R(u,w)",
      "forall u w . =(u;w) \\/ u != w",
      "forall u w . exists z . R(u,z) /\\ =(w;z)",
      "exists u w . forall z . R(z,u) \\/ z = w",
      "exists u w . const(u) /\\ all(w)",
      "forall u w . inc(u;x) \\/ u != w",
      "exists u w . exc(u;w) /\\ P(u)",
      "forall u w . (exists z . =(z;u)) /\\ (u = w \\/ u != w)",
  };
  EquivOptions opts;
  opts.domain_sizes = {2};
  for (const auto& text : catalog) {
    FormulaPtr phi = parse_formula(text, reg());
    FormulaPtr expanded = expand_vector_quantifiers(phi);
    auto ce = formulas_equivalent(phi, expanded, reg(), var_list(*phi), opts);
    if (ce) return "counterexample for `" + text + "`:\n" + ce->to_text();
  }
  return "";
}

// ---------------------------------------------------------------------------
// Criterion 3: the two translation lemmas. For equality-only θ(x̄,ȳ) and
// ξ(x̄,z̄), the team formulas ∃ȳ(const(ȳ) ∧ θ) and ⊤ ∨ ∃z̄(all(z̄) ∧ ¬ξ)
// match the Tarskian bounds at R = X(v̄), on every team including ∅, |M|<=3.
// ---------------------------------------------------------------------------
struct BoundCase {
  std::string text;  // over x1[,x2] and parameter variables
  int arity;
};

std::string check_bound_lemma(const std::vector<BoundCase>& catalog, bool theta_side) {
  for (const auto& bc : catalog) {
    DependencyRegistry r;
    FormulaPtr comp = parse_formula(bc.text, r);
    NormalForm nf;
    nf.arity = bc.arity;
    for (int i = 1; i <= bc.arity; ++i) nf.xs.push_back("x" + std::to_string(i));
    NormalFormBlock block;
    block.psi = Formula::top();
    NormalFormBound bound;
    bound.formula = comp;
    std::set<std::string> xset(nf.xs.begin(), nf.xs.end());
    for (const auto& v : free_variables(*comp))
      if (!xset.count(v)) bound.params.push_back(v);
    std::sort(bound.params.begin(), bound.params.end());
    if (theta_side)
      block.thetas.push_back(bound);
    else
      block.xis.push_back(bound);
    nf.blocks.push_back(block);

    std::vector<std::string> vs;
    for (int i = 1; i <= bc.arity; ++i) vs.push_back("v" + std::to_string(i));
    std::map<std::string, std::string> to_v;
    for (int i = 0; i < bc.arity; ++i) to_v[nf.xs[i]] = vs[i];
    FormulaPtr renamed = rename_variables(comp, to_v);
    FormulaPtr team_formula;
    DepAtomNode atom;
    atom.groups = {bound.params};
    if (theta_side) {
      atom.name = "const";
      team_formula =
          Formula::exists(bound.params, Formula::conj(Formula::dep_atom(atom), renamed));
    } else {
      atom.name = "all";
      team_formula = Formula::tensor(
          Formula::top(),
          Formula::exists(bound.params,
                          Formula::conj(Formula::dep_atom(atom), dual_negate(renamed))));
    }

    for (int n = 2; n <= 3; ++n) {
      Model m = Model::with_size(n);
      EvalContext ctx(m, r);
      std::string where;
      enumerate_teams(m, vs, SIZE_MAX, [&](const Team& t) {
        bool team_side = ctx.team_eval(t, team_formula);
        bool tarski_side = nf_eval(m.domain(), project(t, vs), nf);
        if (team_side != tarski_side) {
          where = "size " + std::to_string(n) + ", team\n" + t.to_text();
          return false;
        }
        return true;
      });
      if (!where.empty())
        return std::string(theta_side ? "theta" : "xi") + " lemma fails for `" +
               bc.text + "` at " + where;
    }
  }
  return "";
}

std::string criterion_bound_lemmas() {
  std::vector<BoundCase> thetas = {
      {"x1 = y1", 1},
      {"x1 != y1", 1},
      {"x1 = y1 \\/ x1 = y2", 1},
      {"x1 != y1 /\\ x1 != y2", 1},
      {"top", 1},
      {"bot", 1},
      {"exists u . u = y1 /\\ u != x1", 1},
      {"x1 = x1", 1},
      {"x1 = y1 /\\ x2 = y2", 2},
      {"x1 = x2 \\/ x1 = y1", 2},
      {"x1 != x2", 2},
  };
  std::vector<BoundCase> xis = {
      {"x1 = z1", 1},
      {"x1 != z1", 1},
      {"x1 = z1 /\\ x1 = z2", 1},
      {"x1 = z1 \\/ x1 = z2", 1},
      {"top", 1},
      {"bot", 1},
      {"exists u . u != z1 /\\ u = x1", 1},
      {"x1 != x1", 1},
      {"x1 = z1 /\\ x2 != z1", 2},
      {"x1 = x2", 2},
      {"x1 = z1 \\/ x2 = z1", 2},
  };
  if (thetas.size() < 10 || xis.size() < 10) return "catalog too small";
  std::string err = check_bound_lemma(thetas, true);
  if (!err.empty()) return err;
  return check_bound_lemma(xis, false);
}

// ---------------------------------------------------------------------------
// Criterion 4: the normal-form translations. For >= 10 normal forms
// (singleton, zero-block, theta-only, xi-only, multi-block, arity 2),
// nf_to_team_formula matches nf_eval and the complement translation matches
// its negation on every (model, team), |M| <= 3.
// ---------------------------------------------------------------------------
std::string criterion_nf_translations() {
  std::vector<std::string> nfs = {
      // the singleton form
      "nf arity 1\nblock:\npsi = top\ntheta = x1 = y1\nxi = bot\n",
      // theta-only and xi-only
      "nf arity 1\nblock:\ntheta = x1 = y1\n",
      "nf arity 1\nblock:\nxi = x1 = z1\n",
      "nf arity 1\nblock:\ntheta = x1 != y1\n",
      "nf arity 1\nblock:\nxi = x1 != z1\n",
      // domain-sentence blocks
      "nf arity 1\nblock:\npsi = exists p q . (p != q /\\ (forall u . u = p \\/ u = q))\n",
      "nf arity 1\nblock:\npsi = forall u w z . u = w \\/ u = z \\/ w = z\n"
      "theta = x1 = y1\n",
      // multi-block
      "nf arity 1\nblock:\npsi = exists p q . p != q\ntheta = x1 = y1\n"
      "block:\ntheta = x1 = y1 \\/ x1 = y2\nxi = x1 = z1 /\\ x1 = z2\n",
      "nf arity 1\nblock:\ntheta = top\nxi = top\nblock:\nxi = x1 = z1\n",
      // arity 2
      "nf arity 2\nblock:\ntheta = x1 = y1 /\\ x2 = y2\n",
      "nf arity 2\nblock:\nxi = x1 = x2\nblock:\ntheta = x1 != x2\n",
      "nf arity 2\nblock:\npsi = top\ntheta = x1 = x2 \\/ x1 = y1\nxi = bot\n",
  };
  if (nfs.size() < 10) return "catalog too small";

  auto check = [&](const NormalForm& nf, const std::string& label) -> std::string {
    std::vector<std::string> vs;
    for (int i = 0; i < nf.arity; ++i) vs.push_back("v" + std::to_string(i + 1));
    DependencyRegistry r;
    auto direct = nf_to_team_formula(nf, vs);
    auto comp = nf_to_team_formula_complement(nf, vs);
    for (const auto& d : direct.zeroary) r.register_dependency(d);
    for (const auto& d : comp.zeroary) r.register_dependency(d);
    for (int n = 2; n <= 3; ++n) {
      Model m = Model::with_size(n);
      EvalContext ctx(m, r);
      std::string fail;
      enumerate_teams(m, vs, SIZE_MAX, [&](const Team& t) {
        bool want = nf_eval(m.domain(), project(t, vs), nf);
        if (ctx.team_eval(t, direct.formula) != want) {
          fail = label + ": direct translation differs at size " + std::to_string(n);
          return false;
        }
        if (ctx.team_eval(t, comp.formula) != !want) {
          fail = label + ": complement translation differs at size " + std::to_string(n);
          return false;
        }
        return true;
      });
      if (!fail.empty()) return fail;
    }
    return "";
  };

  // Zero-block case, built programmatically (the text format needs a block).
  NormalForm zero;
  zero.arity = 1;
  zero.xs = {"x1"};
  std::string err = check(zero, "zero-block");
  if (!err.empty()) return err;
  for (std::size_t i = 0; i < nfs.size(); ++i) {
    err = check(NormalForm::parse(nfs[i]), "nf#" + std::to_string(i));
    if (!err.empty()) return err;
  }
  return "";
}

// ---------------------------------------------------------------------------
// Criterion 5: χ-formula for downward closures, D ∈ {all, const,
// exactly-one, nonconst}, |M| = 2..3, all teams; the ⊥ ⊔ guard covers ∅ on
// models where the side condition holds.
// ---------------------------------------------------------------------------
std::string criterion_chi() {
  struct Case {
    DependencyPtr dep;
    std::string label;
  };
  std::vector<Case> cases = {
      {make_builtin(BuiltinDep::Totality, {1}), "all"},
      {make_builtin(BuiltinDep::Constancy, {1}), "const"},
      {make_table_from_predicate("exactly_one", 1, {2, 3},
                                 [](int, const Relation& r) { return r.size() == 1; }),
       "exactly-one"},
      {make_builtin(BuiltinDep::NonConstancy, {1}), "nonconst"},
  };
  for (const auto& c : cases) {
    DependencyRegistry r;
    if (c.dep->kind() == DependencyKind::Table) r.register_dependency(c.dep);
    auto down_member = downward_closure(c.dep);
    ChiForm chi = chi_downclosure(*c.dep, {"x"});
    for (int n = 2; n <= 3; ++n) {
      Model m = Model::with_size(n);
      EvalContext ctx(m, r);
      if (!ctx.sentence_truth(chi.side_condition))
        return c.label + ": side condition unexpectedly false at size " +
               std::to_string(n);
      std::string fail;
      enumerate_teams(m, {"x"}, SIZE_MAX, [&](const Team& t) {
        bool formula_side = ctx.team_eval(t, chi.guarded);
        bool atom_side = down_member->member(m.domain(), project(t, {"x"}));
        if (formula_side != atom_side) {
          fail = c.label + " at size " + std::to_string(n) + ", team\n" + t.to_text();
          return false;
        }
        return true;
      });
      if (!fail.empty()) return fail;
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// Criterion 6: the relativized-totality formula equals the all(x̄)@P atom on
// every team, models of size 3, every unary P with |P| >= 2.
// ---------------------------------------------------------------------------
std::string criterion_all_relativized() {
  for (int k = 1; k <= 2; ++k) {
    std::vector<std::string> xs;
    for (int i = 0; i < k; ++i) xs.push_back("x" + std::to_string(i + 1));
    FormulaPtr formula = relativize_all_formula(xs, "P");
    DepAtomNode atom;
    atom.name = "all";
    atom.groups = {xs};
    atom.relativized_to = "P";
    EquivOptions opts;
    opts.domain_sizes = {3};
    auto ce = formulas_equivalent(Formula::dep_atom(atom), formula, reg(), xs, opts);
    if (ce)
      return "arity " + std::to_string(k) + " counterexample:\n" + ce->to_text();
  }
  return "";
}

// ---------------------------------------------------------------------------
// Criterion 7: ∼₀ reduction preserves truth on a 30-formula catalog at
// |M| = 2, and φ⊔ψ ⟺ φ∨ψ over {∅} for first-order sentences.
// ---------------------------------------------------------------------------
std::string criterion_tilde0() {
  std::vector<std::string> catalog = {
      "~ x = y", "~ x != y", "~ P(x)", "~ !P(x)", "~ top", "~ bot",
      "~ R(x,y)", "~ const(x)", "~ !const(x)", "~ all(x)", "~ inc(x;y)",
      "~ exc(x;y)", "~ =(x;y)", "~ nonconst(x)",
      "~ P(x) /\\ ~ const(x)", "~ P(x) \\/ P(x)",
      "(~ x = y) lor x = y", "dia (~ x = y)",
      "exists z . (~ z = x) /\\ z = z",
      "forall z . (~ const(z)) lor const(z)",
      "~ P(x) /\\ (x = y \\/ ~ x = y)",
      "(~ const(x)) \\/ (~ const(y))",
      "exists z . ~ =(z;x)",
      "forall z . (~ P(z)) lor P(z)",
      "(~ inc(x;y)) /\\ top",
      "~ x = x", "~ R(x,x)", "dia (~ const(x))",
      "(~ exc(x;x)) lor exc(x;x)",
      "exists z . (~ all(z)) /\\ z = x",
  };
  if (catalog.size() < 30) return "catalog too small";
  EquivOptions opts;
  opts.domain_sizes = {2};
  for (const auto& text : catalog) {
    FormulaPtr phi = parse_formula(text, reg(), /*tilde0_mode=*/true);
    FormulaPtr out = eliminate_tilde_on_literals(phi);
    auto ce = formulas_equivalent(phi, out, reg(), var_list(*phi), opts);
    if (ce) return "counterexample for `" + text + "`:\n" + ce->to_text();
  }

  // Sentence level: global and tensor disjunction agree over {∅} for FO.
  std::vector<std::pair<std::string, std::string>> pairs = {
      {"exists x . P(x)", "forall x . P(x)"},
      {"exists x . P(x)", "exists x . !P(x)"},
      {"forall x . exists y . R(x,y)", "exists x . R(x,x)"},
      {"forall x . P(x)", "forall x . !P(x)"},
      {"exists x y . x != y /\\ R(x,y)", "forall x y . R(x,y)"},
      {"top", "bot"},
      {"bot", "bot"},
      {"exists x . R(x,x) /\\ P(x)", "forall x . !R(x,x)"},
      {"forall x . R(x,x) \\/ P(x)", "exists x . !P(x)"},
      {"exists x . forall y . R(y,x)", "exists x . forall y . !R(y,x)"},
  };
  for (const auto& [a, b] : pairs) {
    FormulaPtr fa = parse_formula(a, reg());
    FormulaPtr fb = parse_formula(b, reg());
    SignatureInfo sig = collect_signature(*fa);
    sig.merge(collect_signature(*fb));
    std::string fail;
    enumerate_models(sig, {2}, 1u << 20, [&](const Model& m) {
      EvalContext ctx(m, reg());
      bool lor = ctx.team_eval(Team::singleton_empty(), Formula::global_or(fa, fb));
      bool ten = ctx.team_eval(Team::singleton_empty(), Formula::tensor(fa, fb));
      if (lor != ten) {
        fail = "lor/tensor mismatch for `" + a + "` vs `" + b + "`";
        return false;
      }
      return true;
    });
    if (!fail.empty()) return fail;
  }
  return "";
}

// ---------------------------------------------------------------------------
// Criterion 8: constancy elimination preserves sentence truth for 20
// FO(D, const) sentences (D downwards closed: =(·;·), exc) over one binary
// relation, on every model of size <= 3.
// ---------------------------------------------------------------------------
std::string criterion_const_elim() {
  std::vector<std::string> catalog = {
      "exists x . const(x) /\\ R(x,x)",
      "exists x y . const(x,y) /\\ R(x,y)",
      "exists x y . const(x) /\\ const(y) /\\ exc(x;y)",
      "forall x . exists y . const(y) /\\ (R(x,y) \\/ x = y)",
      "exists x y . =(x;y) /\\ const(x)",
      "exists x . const(x) /\\ (forall y . R(x,y) \\/ x = y)",
      "forall x y . exists z . const(z) /\\ (R(x,z) \\/ R(z,y) \\/ x = y)",
      "exists x . const(x) /\\ !R(x,x)",
      "(exists x . const(x) /\\ R(x,x)) lor (forall x . !R(x,x))",
      "dia (exists x . const(x) /\\ R(x,x))",
      "exists x y . const(x) /\\ =(x;y) /\\ R(x,y)",
      "exists x y . const(x,y) /\\ exc(x;y)",
      "forall x . exists y z . const(y,z) /\\ R(y,z)",
      "exists x . exists y . const(y) /\\ R(x,y)",
      "exists x . const(x) /\\ (exists y . =(y;x) /\\ R(y,x))",
      "forall x . (exists y . const(y) /\\ R(x,y)) \\/ !R(x,x)",
      "exists x . const(x) /\\ top",
      "exists x . (const(x) /\\ bot) \\/ top",
      "exists x y . const(x) /\\ x = y /\\ R(y,x)",
      "forall x . exists y . const(y) /\\ exc(x;y)",
  };
  if (catalog.size() < 20) return "catalog too small";
  for (const auto& text : catalog) {
    FormulaPtr phi = parse_formula(text, reg());
    FormulaPtr out = eliminate_constancy(phi);
    SignatureInfo sig = collect_signature(*phi);
    sig.merge(collect_signature(*out));
    std::string fail;
    enumerate_models(sig, {2, 3}, 1u << 20, [&](const Model& m) {
      EvalContext ctx(m, reg());
      if (ctx.sentence_truth(phi) != ctx.sentence_truth(out)) {
        fail = "truth changed for `" + text + "` on\n" + m.to_text();
        return false;
      }
      return true;
    });
    if (!fail.empty()) return fail;
  }
  return "";
}

// ---------------------------------------------------------------------------
// Criterion 9: classification ground truths at bound 3, and complement
// swapping the closure flags.
// ---------------------------------------------------------------------------
std::string criterion_classification() {
  auto cst = make_builtin(BuiltinDep::Constancy, {1});
  auto ncst = make_builtin(BuiltinDep::NonConstancy, {1});
  auto all1 = make_builtin(BuiltinDep::Totality, {1});

  ClassifyReport c = classify(*cst, 3);
  if (!c.downwards_closed.holds || !c.empty_team.holds ||
      !c.domain_independent.holds || c.upwards_closed.holds)
    return "const flags wrong";
  ClassifyReport n = classify(*ncst, 3);
  if (!n.upwards_closed.holds || n.empty_team.holds || n.downwards_closed.holds)
    return "nonconst flags wrong";
  ClassifyReport a = classify(*all1, 3);
  if (!a.upwards_closed.holds || a.domain_independent.holds)
    return "all flags wrong";
  if (!a.domain_independent.witness) return "all needs a domain counterexample";
  const auto& w = *a.domain_independent.witness;
  if (!((w.domain_size == 2 && w.related_domain_size == 3) ||
        (w.domain_size == 3 && w.related_domain_size == 2)))
    return "all counterexample should contrast sizes 2 and 3";

  for (const auto& d : {cst, ncst, all1}) {
    ClassifyReport base = classify(*d, 3);
    ClassifyReport comp = classify(*complement_dep(d), 3);
    if (base.downwards_closed.holds != comp.upwards_closed.holds ||
        base.upwards_closed.holds != comp.downwards_closed.holds)
      return "complement does not swap flags for " + d->name();
  }
  return "";
}

// ---------------------------------------------------------------------------
// Criterion 10: maximality. (D↓)_max = D_max on domains of size <= 3, and
// every member extends to a maximal member.
// ---------------------------------------------------------------------------
std::string criterion_maximality() {
  std::vector<DependencyPtr> catalog = {
      make_builtin(BuiltinDep::Constancy, {1}),
      make_builtin(BuiltinDep::NonConstancy, {1}),
      make_builtin(BuiltinDep::Totality, {1}),
      make_builtin(BuiltinDep::FunctionalDependence, {1, 1}),
      make_builtin(BuiltinDep::Inclusion, {1, 1}),
      make_builtin(BuiltinDep::Exclusion, {1, 1}),
      make_table_from_predicate("exactly_one", 1, {2, 3},
                                [](int, const Relation& r) { return r.size() == 1; }),
      make_table_from_predicate("even_card", 1, {2, 3},
                                [](int, const Relation& r) { return r.size() % 2 == 0; }),
  };
  for (const auto& d : catalog) {
    for (int n = 2; n <= 3; ++n) {
      auto base_max = maximal_relations(*d, dom(n));
      auto down_max = maximal_relations(*downward_closure(d), dom(n));
      if (base_max != down_max)
        return d->name() + ": (D-down)_max differs from D_max at size " +
               std::to_string(n);
      auto cells = all_tuples(dom(n), d->arity());
      for (std::uint64_t mask = 0; mask < (1ull << cells.size()); ++mask) {
        Relation rel(d->arity());
        for (std::size_t b = 0; b < cells.size(); ++b)
          if (mask & (1ull << b)) rel.insert(cells[b]);
        if (!d->member(dom(n), rel)) continue;
        bool extends = false;
        for (const auto& mx : base_max) extends |= rel.subset_of(mx);
        if (!extends)
          return d->name() + ": member without maximal extension at size " +
                 std::to_string(n);
      }
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// Criterion 11: stair diagnostics. Even cardinality reaches depth |M|/2 at
// |M| = 2, 4, 6; const, all and nonconst plateau at depth <= 1.
// ---------------------------------------------------------------------------
std::string criterion_stairs() {
  auto even = make_table_from_predicate(
      "even_card", 1, {2, 4, 6},
      [](int, const Relation& r) { return r.size() % 2 == 0; });
  for (int n : {2, 4, 6}) {
    StairChain chain = stair_search(*even, dom(n), 16);
    if (chain.depth != n / 2)
      return "even cardinality at size " + std::to_string(n) + ": depth " +
             std::to_string(chain.depth) + ", want " + std::to_string(n / 2);
    for (std::size_t i = 0; i < chain.links.size(); ++i) {
      bool expect = (i % 2 == 0);
      if (even->member(dom(n), chain.links[i]) != expect)
        return "even cardinality chain has a wrong membership flag";
      if (i > 0 && !(chain.links[i - 1].subset_of(chain.links[i]) &&
                     chain.links[i - 1] != chain.links[i]))
        return "even cardinality chain is not strictly increasing";
    }
  }
  for (const auto& d : {make_builtin(BuiltinDep::Constancy, {1}),
                        make_builtin(BuiltinDep::Totality, {1}),
                        make_builtin(BuiltinDep::NonConstancy, {1})}) {
    for (int n = 2; n <= 4; ++n) {
      StairChain chain = stair_search(*d, dom(n), 16);
      if (chain.depth > 1)
        return d->name() + " exceeds depth 1 at size " + std::to_string(n);
    }
  }
  return "";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    std::function<std::string()> run;
  };
  std::vector<Criterion> criteria = {
      {1, "flatness suite", criterion_flatness},
      {2, "vector-quantifier suite", criterion_vector_quantifiers},
      {3, "exists-theta / notexists-xi lemmas", criterion_bound_lemmas},
      {4, "normal-form translations", criterion_nf_translations},
      {5, "downward-closure chi formula", criterion_chi},
      {6, "relativized totality formula", criterion_all_relativized},
      {7, "limited-contradiction reduction", criterion_tilde0},
      {8, "constancy elimination", criterion_const_elim},
      {9, "classification ground truths", criterion_classification},
      {10, "maximality", criterion_maximality},
      {11, "stair diagnostics", criterion_stairs},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string err;
    try {
      err = c.run();
    } catch (const std::exception& e) {
      err = std::string("exception: ") + e.what();
    }
    std::chrono::duration<double> secs = std::chrono::steady_clock::now() - start;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(1);
    line << (err.empty() ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": "
         << c.name << " (" << secs.count() << "s)";
    std::cout << line.str() << std::endl;
    if (!err.empty()) {
      std::cout << "       " << err << std::endl;
      ++failed;
    }
  }
  if (failed) {
    std::cout << failed << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all 11 criteria passed" << std::endl;
  return 0;
}
