#include "teamcheck/eval.hpp"

#include "teamcheck/tarski.hpp"

#include <algorithm>
#include <sstream>

namespace teamcheck {

EvalContext::EvalContext(const Model& m, const DependencyRegistry& registry,
                         EvalOptions opts, EvalLimits limits)
    : model_(m), registry_(registry), opts_(opts), limits_(limits) {
  if (m.size() > limits_.max_domain)
    throw EvalError(EvalErrorKind::DomainTooLarge,
                    "domain size " + std::to_string(m.size()) + " exceeds the cap");
}

const EvalContext::NodeInfo& EvalContext::info(const Formula* f) {
  NodeInfo& ni = node_info_[f];
  if (!ni.info_ready) {
    ni.first_order = is_first_order(*f);
    auto fv = free_variables(*f);
    ni.free_vars.assign(fv.begin(), fv.end());
    if (f->kind == FormulaKind::DepAtom) ni.resolved = registry_.resolve_atom(f->dep);
    ni.info_ready = true;
  }
  return ni;
}

void EvalContext::charge_node() {
  if (++nodes_ > limits_.node_budget)
    throw EvalError(EvalErrorKind::BudgetExceeded,
                    "node budget exceeded (" + std::to_string(limits_.node_budget) + ")");
}

bool EvalContext::team_eval(const Team& x, const FormulaPtr& phi) {
  roots_.push_back(phi);
  for (const auto& v : info(phi.get()).free_vars)
    if (!x.has_var(v))
      throw EvalError(EvalErrorKind::MissingVariable,
                      "team does not bind free variable " + v);
  return eval_rec(x, phi.get());
}

bool EvalContext::sentence_truth(const FormulaPtr& phi) {
  if (!free_variables(*phi).empty())
    throw EvalError(EvalErrorKind::MissingVariable,
                    "sentence expected, formula has free variables");
  roots_.push_back(phi);
  return eval_rec(Team::singleton_empty(), phi.get());
}

namespace {

std::string memo_key(const Formula* f, const Team& x) {
  std::string out;
  out.reserve(16 + x.vars().size() * 4 + x.size() * (x.vars().size() + 1));
  auto p = reinterpret_cast<std::uintptr_t>(f);
  out.append(reinterpret_cast<const char*>(&p), sizeof(p));
  for (const auto& v : x.vars()) {
    out += v;
    out += ',';
  }
  out += '|';
  for (const auto& row : x.rows()) {
    for (Element e : row) out += static_cast<char>(e + 1);
    out += '\x7f';
  }
  return out;
}

Team team_from_rows(const std::vector<std::string>& vars,
                    const std::vector<Tuple>& rows, std::uint64_t mask) {
  Team t{std::vector<std::string>(vars)};
  for (std::size_t b = 0; b < rows.size(); ++b)
    if (mask & (1ull << b)) t.insert_row(rows[b]);
  return t;
}

bool is_top_literal(const Formula& f) {
  return f.kind == FormulaKind::Literal &&
         ((f.lit.kind == LiteralKind::Top && f.lit.positive) ||
          (f.lit.kind == LiteralKind::Bottom && !f.lit.positive));
}

bool is_bottom_literal(const Formula& f) {
  return f.kind == FormulaKind::Literal &&
         ((f.lit.kind == LiteralKind::Bottom && f.lit.positive) ||
          (f.lit.kind == LiteralKind::Top && !f.lit.positive));
}

}  // namespace

bool EvalContext::eval_rec(const Team& x_in, const Formula* f) {
  charge_node();
  if (x_in.size() > limits_.max_team)
    throw EvalError(EvalErrorKind::TeamTooLarge,
                    "team size " + std::to_string(x_in.size()) + " exceeds the cap");

  const NodeInfo& ni = info(f);
  Team local;
  const Team* x = &x_in;
  if (opts_.locality_restrict && ni.free_vars != x_in.vars()) {
    local = restrict_team(x_in, ni.free_vars);
    x = &local;
  }

  std::string key;
  if (opts_.memo) {
    key = memo_key(f, *x);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }

  bool result;
  if (opts_.flat_fastpath && ni.first_order && f->kind != FormulaKind::Literal) {
    result = true;
    for (const auto& row : x->rows()) {
      charge_node();
      if (!tarski_eval(model_, x->row_to_assignment(row), *f)) {
        result = false;
        break;
      }
    }
  } else {
    switch (f->kind) {
      case FormulaKind::Literal:
        result = eval_literal(*x, *f);
        break;
      case FormulaKind::DepAtom:
        result = eval_dep_atom(*x, *f);
        break;
      case FormulaKind::And:
        result = eval_rec(*x, f->left.get()) && eval_rec(*x, f->right.get());
        break;
      case FormulaKind::GlobalOr:
        result = eval_rec(*x, f->left.get()) || eval_rec(*x, f->right.get());
        break;
      case FormulaKind::ContraNeg:
        result = !eval_rec(*x, f->left.get());
        break;
      case FormulaKind::TensorOr:
        result = eval_tensor(*x, *f);
        break;
      case FormulaKind::Diamond:
        result = eval_diamond(*x, *f);
        break;
      case FormulaKind::Exists:
        result = eval_exists(*x, *f);
        break;
      case FormulaKind::Forall: {
        Team dup = duplicate(*x, model_, f->bound);
        if (dup.size() > limits_.max_team)
          throw EvalError(EvalErrorKind::TeamTooLarge,
                          "universal duplication exceeds the team cap");
        result = eval_rec(dup, f->left.get());
        break;
      }
      default:
        throw EvalError(EvalErrorKind::UnsupportedConnective, "unhandled connective");
    }
  }

  if (opts_.memo) memo_[key] = result;
  return result;
}

bool EvalContext::eval_literal(const Team& x, const Formula& f) {
  // Quantifier-free literals are checked directly against the rows; the
  // general Tarskian evaluator only runs for constants it has to resolve.
  const Literal& lit = f.lit;
  if (lit.kind == LiteralKind::Top) return lit.positive || x.empty();
  if (lit.kind == LiteralKind::Bottom) return !lit.positive || x.empty();

  std::vector<int> idx(lit.args.size(), -1);
  std::vector<Element> fixed(lit.args.size(), -1);
  for (std::size_t i = 0; i < lit.args.size(); ++i) {
    if (lit.args[i].kind == TermKind::Variable) {
      idx[i] = x.var_index(lit.args[i].name);
      if (idx[i] < 0)
        throw EvalError(EvalErrorKind::MissingVariable,
                        "unbound variable: " + lit.args[i].name);
    } else {
      auto c = model_.constant(lit.args[i].name);
      if (!c)
        throw EvalError(EvalErrorKind::MissingConstant,
                        "unknown constant: " + lit.args[i].name);
      fixed[i] = *c;
    }
  }
  const Relation* rel = nullptr;
  if (lit.kind == LiteralKind::Relation) {
    rel = model_.relation(lit.relation);
    if (!rel)
      throw EvalError(EvalErrorKind::MissingRelation,
                      "model does not interpret relation " + lit.relation);
    if (rel->arity() != static_cast<int>(lit.args.size()))
      throw EvalError(EvalErrorKind::ArityMismatch,
                      "relation arity mismatch: " + lit.relation);
  }
  Tuple vals(lit.args.size());
  for (const auto& row : x.rows()) {
    charge_node();
    for (std::size_t i = 0; i < vals.size(); ++i)
      vals[i] = idx[i] >= 0 ? row[idx[i]] : fixed[i];
    bool value = lit.kind == LiteralKind::Equality ? vals[0] == vals[1]
                                                   : rel->contains(vals);
    if (value != lit.positive) return false;
  }
  return true;
}

bool EvalContext::eval_dep_atom(const Team& x, const Formula& f) {
  const NodeInfo& ni = info(&f);
  Relation r = project(x, f.dep.flat_args());
  bool value;
  if (f.dep.relativized_to)
    value = relativized_member(*ni.resolved, model_, *f.dep.relativized_to, r);
  else
    value = ni.resolved->member(model_.domain(), r);
  return f.dep.complemented ? !value : value;
}

bool EvalContext::eval_tensor(const Team& x, const Formula& f) {
  const std::vector<Tuple> rows(x.rows().begin(), x.rows().end());
  const std::size_t n = rows.size();

  if (opts_.tensor_rule == TensorRule::DisjointNonempty) {
    // Mutant rule for audit tests: X = Y ⊎ Z with both parts nonempty.
    if (n == 0) return false;
    for (std::uint64_t y = 1; y + 1 < (1ull << n); ++y) {
      Team yt = team_from_rows(x.vars(), rows, y);
      Team zt = team_from_rows(x.vars(), rows, ~y & ((1ull << n) - 1));
      if (eval_rec(yt, f.left.get()) && eval_rec(zt, f.right.get())) return true;
    }
    return false;
  }

  if (opts_.flat_fusion && info(f.left.get()).first_order &&
      info(f.right.get()).first_order) {
    // Both disjuncts flat: a cover exists iff every row lands on one side.
    for (const auto& row : rows) {
      Team one(x.vars());
      one.insert_row(row);
      if (!eval_rec(one, f.left.get()) && !eval_rec(one, f.right.get())) return false;
    }
    return true;
  }

  if (opts_.tensor_unit_shortcut) {
    auto some_subteam = [&](const Formula* side) {
      if (n > 25)
        throw EvalError(EvalErrorKind::SearchTooLarge,
                        "subteam enumeration over " + std::to_string(n) + " rows");
      for (std::uint64_t mask = 0; mask < (1ull << n); ++mask)
        if (eval_rec(team_from_rows(x.vars(), rows, mask), side)) return true;
      return false;
    };
    if (is_top_literal(*f.left)) return some_subteam(f.right.get());
    if (is_top_literal(*f.right)) return some_subteam(f.left.get());
    if (is_bottom_literal(*f.left)) return eval_rec(x, f.right.get());
    if (is_bottom_literal(*f.right)) return eval_rec(x, f.left.get());
  }

  if (n > 25)
    throw EvalError(EvalErrorKind::SearchTooLarge,
                    "tensor cover enumeration over " + std::to_string(n) + " rows");
  // X = Y ∪ Z with overlap allowed: 3^|X| labelings, organized as Y ⊆ X and
  // Z = (X \ Y) ∪ S with S ⊆ Y.
  for (std::uint64_t y = 0; y < (1ull << n); ++y) {
    if (!eval_rec(team_from_rows(x.vars(), rows, y), f.left.get())) continue;
    std::uint64_t rest = ~y & ((1ull << n) - 1);
    std::uint64_t s = y;
    while (true) {
      if (eval_rec(team_from_rows(x.vars(), rows, rest | s), f.right.get()))
        return true;
      if (s == 0) break;
      s = (s - 1) & y;
    }
  }
  return false;
}

bool EvalContext::eval_diamond(const Team& x, const Formula& f) {
  if (opts_.flat_fusion && info(f.left.get()).first_order) {
    // Flat ◇: some nonempty subteam works iff some singleton works.
    for (const auto& row : x.rows()) {
      Team one(x.vars());
      one.insert_row(row);
      if (eval_rec(one, f.left.get())) return true;
    }
    return false;
  }
  const std::vector<Tuple> rows(x.rows().begin(), x.rows().end());
  const std::size_t n = rows.size();
  if (n > 25)
    throw EvalError(EvalErrorKind::SearchTooLarge,
                    "diamond subteam enumeration over " + std::to_string(n) + " rows");
  for (std::uint64_t mask = 1; mask < (1ull << n); ++mask)
    if (eval_rec(team_from_rows(x.vars(), rows, mask), f.left.get())) return true;
  return false;
}

bool EvalContext::eval_exists(const Team& x, const Formula& f) {
  if (opts_.factored_exists) {
    auto res = try_factored_exists(x, f);
    if (res) return *res;
  }
  return generic_exists(x, f);
}

// ∃v̄(ψ₁ ∧ … ∧ ψₙ) where each ψᵢ is flat or a dependency atom over v̄ only.
// A supplementing choice is then characterized by the set C of extension
// tuples it uses: C is feasible iff it meets every row's allowed set, and
// the atoms see exactly the projections of C.
std::optional<bool> EvalContext::try_factored_exists(const Team& x, const Formula& f) {
  struct ProjAtom {
    const Formula* node;   // the DepAtom
    bool extra_negation;   // wrapped in ∼
  };
  std::vector<const Formula*> flats;
  std::vector<ProjAtom> atoms;
  std::set<std::string> quantified(f.bound.begin(), f.bound.end());

  std::vector<const Formula*> stack = {f.left.get()};
  while (!stack.empty()) {
    const Formula* g = stack.back();
    stack.pop_back();
    if (g->kind == FormulaKind::And) {
      stack.push_back(g->left.get());
      stack.push_back(g->right.get());
      continue;
    }
    if (info(g).first_order) {
      flats.push_back(g);
      continue;
    }
    const Formula* atom = g;
    bool extra_neg = false;
    if (g->kind == FormulaKind::ContraNeg && g->left->kind == FormulaKind::DepAtom) {
      atom = g->left.get();
      extra_neg = true;
    }
    if (atom->kind != FormulaKind::DepAtom) return std::nullopt;
    for (const auto& v : atom->dep.flat_args())
      if (!quantified.count(v)) return std::nullopt;
    atoms.push_back({atom, extra_neg});
  }

  const auto ext = all_tuples(model_.domain(), static_cast<int>(f.bound.size()));
  if (ext.size() > 16) return std::nullopt;

  // Variable layout of the extended rows.
  std::vector<std::string> kept;
  for (const auto& v : x.vars())
    if (!quantified.count(v)) kept.push_back(v);
  std::vector<std::string> evars = kept;
  evars.insert(evars.end(), f.bound.begin(), f.bound.end());
  std::sort(evars.begin(), evars.end());
  std::vector<int> slot_from_bound(f.bound.size());
  std::vector<int> slot_from_kept(kept.size());
  for (std::size_t i = 0; i < evars.size(); ++i) {
    for (std::size_t k = 0; k < f.bound.size(); ++k)
      if (f.bound[k] == evars[i]) slot_from_bound[k] = static_cast<int>(i);
    for (std::size_t k = 0; k < kept.size(); ++k)
      if (kept[k] == evars[i]) slot_from_kept[k] = static_cast<int>(i);
  }
  std::vector<int> kept_idx;
  for (const auto& v : kept) kept_idx.push_back(x.var_index(v));

  // Allowed extension sets per orbit (rows collapsed over v̄).
  std::set<Tuple> seen;
  std::vector<std::uint32_t> allowed;
  for (const auto& row : x.rows()) {
    Tuple key;
    for (int i : kept_idx) key.push_back(row[i]);
    if (!seen.insert(key).second) continue;
    std::uint32_t a = 0;
    for (std::size_t t = 0; t < ext.size(); ++t) {
      charge_node();
      Team one(evars);
      Tuple erow(evars.size());
      for (std::size_t k = 0; k < kept.size(); ++k) erow[slot_from_kept[k]] = key[k];
      for (std::size_t k = 0; k < f.bound.size(); ++k)
        erow[slot_from_bound[k]] = ext[t][k];
      one.insert_row(std::move(erow));
      bool ok = true;
      for (const Formula* fl : flats)
        if (!eval_rec(one, fl)) { ok = false; break; }
      if (ok) a |= (1u << t);
    }
    if (a == 0) return false;
    allowed.push_back(a);
  }

  if (atoms.empty()) return true;  // every orbit has a legal extension

  std::uint32_t reachable = 0;
  for (std::uint32_t a : allowed) reachable |= a;

  // Projection maps: extension index -> atom argument tuple.
  struct ProjMap {
    const ProjAtom* atom;
    std::vector<Tuple> image;
    DependencyPtr dep;
  };
  std::vector<ProjMap> projections;
  for (const auto& pa : atoms) {
    ProjMap pm;
    pm.atom = &pa;
    pm.dep = info(pa.node).resolved;
    std::vector<int> pos;
    for (const auto& v : pa.node->dep.flat_args()) {
      auto it = std::find(f.bound.begin(), f.bound.end(), v);
      pos.push_back(static_cast<int>(it - f.bound.begin()));
    }
    for (const auto& t : ext) {
      Tuple img;
      img.reserve(pos.size());
      for (int p : pos) img.push_back(t[p]);
      pm.image.push_back(std::move(img));
    }
    projections.push_back(std::move(pm));
  }

  // Candidate used-extension sets C ⊆ reachable, including C = ∅ for the
  // empty team.
  std::uint32_t c = reachable;
  while (true) {
    bool feasible = true;
    for (std::uint32_t a : allowed)
      if ((c & a) == 0) { feasible = false; break; }
    if (feasible) {
      bool ok = true;
      for (const auto& pm : projections) {
        charge_node();
        Relation r(pm.dep->arity());
        for (std::size_t t = 0; t < ext.size(); ++t)
          if (c & (1u << t)) r.insert(pm.image[t]);
        const auto& dnode = pm.atom->node->dep;
        bool value;
        if (dnode.relativized_to)
          value = relativized_member(*pm.dep, model_, *dnode.relativized_to, r);
        else
          value = pm.dep->member(model_.domain(), r);
        if (dnode.complemented) value = !value;
        if (pm.atom->extra_negation) value = !value;
        if (!value) { ok = false; break; }
      }
      if (ok) return true;
    }
    if (c == 0) break;
    c = (c - 1) & reachable;
  }
  return false;
}

bool EvalContext::generic_exists(const Team& x, const Formula& f) {
  bool found = false;
  supplement_subteams(x, model_, f.bound, [&](const Team& y) {
    if (y.size() > limits_.max_team)
      throw EvalError(EvalErrorKind::TeamTooLarge,
                      "supplemented team exceeds the team cap");
    if (eval_rec(y, f.left.get())) {
      found = true;
      return false;  // stop the stream
    }
    return true;
  });
  return found;
}

bool team_eval(const Model& m, const DependencyRegistry& registry, const Team& x,
               const FormulaPtr& phi, EvalOptions opts, EvalLimits limits) {
  EvalContext ctx(m, registry, opts, limits);
  return ctx.team_eval(x, phi);
}

bool sentence_truth(const Model& m, const DependencyRegistry& registry,
                    const FormulaPtr& phi, EvalOptions opts, EvalLimits limits) {
  EvalContext ctx(m, registry, opts, limits);
  return ctx.sentence_truth(phi);
}

bool flat_fastpath(const Model& m, const Team& x, const Formula& phi) {
  if (!is_first_order(phi))
    throw EvalError(EvalErrorKind::UnsupportedConnective,
                    "flat fast path applies to first-order formulas only");
  for (const auto& row : x.rows())
    if (!tarski_eval(m, x.row_to_assignment(row), phi)) return false;
  return true;
}

}  // namespace teamcheck
