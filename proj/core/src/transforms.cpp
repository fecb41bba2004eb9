#include "teamcheck/transforms.hpp"

#include "teamcheck/tarski.hpp"

#include <algorithm>
#include <sstream>

namespace teamcheck {

namespace {

void all_names_rec(const Formula& f, std::set<std::string>& out) {
  switch (f.kind) {
    case FormulaKind::Literal:
      for (const auto& t : f.lit.args)
        if (t.kind == TermKind::Variable) out.insert(t.name);
      break;
    case FormulaKind::DepAtom:
      for (const auto& v : f.dep.flat_args()) out.insert(v);
      break;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      for (const auto& v : f.bound) out.insert(v);
      all_names_rec(*f.left, out);
      break;
    default:
      if (f.left) all_names_rec(*f.left, out);
      if (f.right) all_names_rec(*f.right, out);
      break;
  }
}

std::set<std::string> all_variable_names(const Formula& f) {
  std::set<std::string> out;
  all_names_rec(f, out);
  return out;
}

FormulaPtr equalities(const std::vector<std::string>& as,
                      const std::vector<std::string>& bs) {
  std::vector<FormulaPtr> eqs;
  for (std::size_t i = 0; i < as.size(); ++i)
    eqs.push_back(Formula::eq(Term::var(as[i]), Term::var(bs[i])));
  return Formula::conj_all(eqs);
}

}  // namespace

namespace {

// One leftmost ∼-on-atom rewrite; nullopt when the formula is ∼-free.
std::optional<FormulaPtr> rewrite_one_tilde(const FormulaPtr& f, std::string* rule) {
  switch (f->kind) {
    case FormulaKind::Literal:
    case FormulaKind::DepAtom:
      return std::nullopt;
    case FormulaKind::ContraNeg: {
      if (f->left->kind == FormulaKind::Literal) {
        *rule = "contra-literal-to-diamond";
        return Formula::diamond(dual_negate(f->left));
      }
      if (f->left->kind == FormulaKind::DepAtom) {
        *rule = "contra-atom-to-complement";
        DepAtomNode d = f->left->dep;
        d.complemented = !d.complemented;
        return Formula::dep_atom(std::move(d));
      }
      throw std::invalid_argument("~ over a non-atomic subformula");
    }
    case FormulaKind::And:
    case FormulaKind::TensorOr:
    case FormulaKind::GlobalOr: {
      if (auto l = rewrite_one_tilde(f->left, rule)) {
        switch (f->kind) {
          case FormulaKind::And: return Formula::conj(*l, f->right);
          case FormulaKind::TensorOr: return Formula::tensor(*l, f->right);
          default: return Formula::global_or(*l, f->right);
        }
      }
      if (auto r = rewrite_one_tilde(f->right, rule)) {
        switch (f->kind) {
          case FormulaKind::And: return Formula::conj(f->left, *r);
          case FormulaKind::TensorOr: return Formula::tensor(f->left, *r);
          default: return Formula::global_or(f->left, *r);
        }
      }
      return std::nullopt;
    }
    case FormulaKind::Diamond:
      if (auto l = rewrite_one_tilde(f->left, rule)) return Formula::diamond(*l);
      return std::nullopt;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      if (auto l = rewrite_one_tilde(f->left, rule))
        return f->kind == FormulaKind::Exists ? Formula::exists(f->bound, *l)
                                              : Formula::forall(f->bound, *l);
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

FormulaPtr eliminate_tilde_on_literals(const FormulaPtr& phi, RewriteTrace* trace) {
  validate_tilde0(*phi);
  FormulaPtr cur = phi;
  while (true) {
    std::string rule;
    auto next = rewrite_one_tilde(cur, &rule);
    if (!next) break;
    if (trace) trace->push_back({rule, cur, *next});
    cur = *next;
  }
  return cur;
}

namespace {

void reject_contra(const Formula& f) {
  if (f.kind == FormulaKind::ContraNeg)
    throw std::invalid_argument("~ is not supported here; eliminate it first");
  if (f.left) reject_contra(*f.left);
  if (f.right) reject_contra(*f.right);
}

std::vector<FormulaPtr> pull_rec(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::Literal:
    case FormulaKind::DepAtom:
      return {f};
    case FormulaKind::GlobalOr: {
      auto l = pull_rec(f->left);
      auto r = pull_rec(f->right);
      l.insert(l.end(), r.begin(), r.end());
      return l;
    }
    case FormulaKind::And:
    case FormulaKind::TensorOr: {
      auto l = pull_rec(f->left);
      auto r = pull_rec(f->right);
      std::vector<FormulaPtr> out;
      out.reserve(l.size() * r.size());
      for (const auto& a : l)
        for (const auto& b : r)
          out.push_back(f->kind == FormulaKind::And ? Formula::conj(a, b)
                                                    : Formula::tensor(a, b));
      return out;
    }
    case FormulaKind::Diamond: {
      std::vector<FormulaPtr> out;
      for (const auto& a : pull_rec(f->left)) out.push_back(Formula::diamond(a));
      return out;
    }
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      std::vector<FormulaPtr> out;
      for (const auto& a : pull_rec(f->left))
        out.push_back(f->kind == FormulaKind::Exists ? Formula::exists(f->bound, a)
                                                     : Formula::forall(f->bound, a));
      return out;
    }
    case FormulaKind::ContraNeg:
      throw std::invalid_argument("~ does not commute with global disjunction");
  }
  return {f};
}

}  // namespace

std::vector<FormulaPtr> pull_out_global_or(const FormulaPtr& phi) {
  if (!free_variables(*phi).empty())
    throw std::invalid_argument("pull_out_global_or expects a sentence");
  reject_contra(*phi);
  return pull_rec(phi);
}

namespace {

void collect_const_vars(const Formula& f, std::vector<std::string>& order,
                        std::set<std::string>& seen) {
  if (f.kind == FormulaKind::DepAtom && f.dep.name == "const") {
    if (f.dep.complemented)
      throw std::invalid_argument(
          "constancy elimination does not apply to complemented const atoms");
    if (f.dep.relativized_to)
      throw std::invalid_argument(
          "constancy elimination does not apply to relativized const atoms");
    for (const auto& v : f.dep.flat_args())
      if (seen.insert(v).second) order.push_back(v);
  }
  if (f.left) collect_const_vars(*f.left, order, seen);
  if (f.right) collect_const_vars(*f.right, order, seen);
}

FormulaPtr replace_const_atoms(const FormulaPtr& f,
                               const std::map<std::string, std::string>& witness) {
  switch (f->kind) {
    case FormulaKind::Literal:
      return f;
    case FormulaKind::DepAtom: {
      if (f->dep.name != "const") return f;
      auto args = f->dep.flat_args();
      if (args.empty()) return Formula::top();
      std::vector<std::string> ws;
      for (const auto& v : args) ws.push_back(witness.at(v));
      return equalities(args, ws);
    }
    case FormulaKind::And:
      return Formula::conj(replace_const_atoms(f->left, witness),
                           replace_const_atoms(f->right, witness));
    case FormulaKind::TensorOr:
      return Formula::tensor(replace_const_atoms(f->left, witness),
                             replace_const_atoms(f->right, witness));
    case FormulaKind::GlobalOr:
      return Formula::global_or(replace_const_atoms(f->left, witness),
                                replace_const_atoms(f->right, witness));
    case FormulaKind::Diamond:
      return Formula::diamond(replace_const_atoms(f->left, witness));
    case FormulaKind::Exists:
      return Formula::exists(f->bound, replace_const_atoms(f->left, witness));
    case FormulaKind::Forall:
      return Formula::forall(f->bound, replace_const_atoms(f->left, witness));
    case FormulaKind::ContraNeg:
      throw std::invalid_argument("constancy elimination does not support ~");
  }
  return f;
}

}  // namespace

FormulaPtr eliminate_constancy(const FormulaPtr& phi, RewriteTrace* trace) {
  if (!free_variables(*phi).empty())
    throw std::invalid_argument("eliminate_constancy expects a sentence");
  reject_contra(*phi);
  std::vector<std::string> order;
  std::set<std::string> seen;
  collect_const_vars(*phi, order, seen);
  if (order.empty()) return phi;

  std::set<std::string> used = all_variable_names(*phi);
  std::map<std::string, std::string> witness;
  std::vector<std::string> ws;
  for (const auto& v : order) {
    std::string w = fresh_name("w_" + v, used);
    used.insert(w);
    witness[v] = w;
    ws.push_back(w);
  }
  FormulaPtr body = replace_const_atoms(phi, witness);
  FormulaPtr out = Formula::exists(ws, body);
  if (trace) trace->push_back({"constancy-to-witness-equalities", phi, out});
  return out;
}

ChiForm chi_downclosure(const Dependency& d, const std::vector<std::string>& xs) {
  if (static_cast<int>(xs.size()) != d.arity())
    throw std::invalid_argument("chi_downclosure: xs must match the dependency arity");
  std::set<std::string> used(xs.begin(), xs.end());
  std::string p = fresh_name("p", used);
  used.insert(p);
  std::string q = fresh_name("q", used);
  used.insert(q);
  std::vector<std::string> ws;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::string w = fresh_name("w" + std::to_string(i + 1), used);
    used.insert(w);
    ws.push_back(w);
  }

  FormulaPtr guard = Formula::tensor(
      Formula::eq(Term::var(p), Term::var(q), false), equalities(xs, ws));
  FormulaPtr atom = Formula::dep_atom(d.atom_over(ws));
  FormulaPtr chi = Formula::forall(
      {p, q}, Formula::exists(ws, Formula::conj(guard, atom)));

  ChiForm out;
  out.guarded = Formula::global_or(Formula::bottom(), chi);
  out.side_condition = Formula::exists(xs, Formula::dep_atom(d.atom_over(xs)));
  return out;
}

FormulaPtr relativize_all_formula(const std::vector<std::string>& xs,
                                  const std::string& pred) {
  if (xs.empty())
    throw std::invalid_argument("relativized totality needs at least one variable");
  std::set<std::string> used(xs.begin(), xs.end());
  std::vector<std::string> vs;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::string v = fresh_name("v" + std::to_string(i + 1), used);
    used.insert(v);
    vs.push_back(v);
  }

  std::vector<FormulaPtr> px;
  for (const auto& x : xs) px.push_back(Formula::rel(pred, {Term::var(x)}));

  std::vector<FormulaPtr> escape;
  for (const auto& v : vs) escape.push_back(Formula::rel(pred, {Term::var(v)}, false));
  escape.push_back(equalities(vs, xs));

  DepAtomNode all_atom;
  all_atom.name = "all";
  all_atom.groups = {vs};

  FormulaPtr inner = Formula::conj(Formula::tensor_all(escape),
                                   Formula::dep_atom(std::move(all_atom)));
  return Formula::conj(Formula::conj_all(px), Formula::exists(vs, inner));
}

void NormalForm::validate() const {
  if (arity < 0) throw std::invalid_argument("normal form arity must be >= 0");
  if (static_cast<int>(xs.size()) != arity)
    throw std::invalid_argument("normal form variable tuple does not match arity");
  std::set<std::string> xset(xs.begin(), xs.end());
  auto check_component = [&](const FormulaPtr& f, const std::vector<std::string>* params,
                             const char* what) {
    if (!is_first_order(*f))
      throw std::invalid_argument(std::string(what) + " must be first-order");
    SignatureInfo sig = collect_signature(*f);
    if (!sig.relations.empty() || !sig.constants.empty() || !sig.predicates.empty())
      throw std::invalid_argument(std::string(what) +
                                  " must be over the empty signature (equality only)");
    for (const auto& v : free_variables(*f)) {
      bool ok = xset.count(v) ||
                (params && std::find(params->begin(), params->end(), v) != params->end());
      if (!ok)
        throw std::invalid_argument(std::string(what) + " has stray free variable " + v);
    }
  };
  for (const auto& b : blocks) {
    check_component(b.psi, nullptr, "psi");
    if (!free_variables(*b.psi).empty())
      throw std::invalid_argument("psi must be a sentence");
    for (const auto& t : b.thetas) check_component(t.formula, &t.params, "theta");
    for (const auto& t : b.xis) check_component(t.formula, &t.params, "xi");
  }
}

namespace {

std::string strip_str(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

NormalFormBound make_bound(const FormulaPtr& f, const std::set<std::string>& xset) {
  NormalFormBound out;
  out.formula = f;
  for (const auto& v : free_variables(*f))
    if (!xset.count(v)) out.params.push_back(v);
  std::sort(out.params.begin(), out.params.end());
  return out;
}

}  // namespace

NormalForm NormalForm::parse(const std::string& text) {
  std::string canon = text;
  std::replace(canon.begin(), canon.end(), ';', '\n');
  std::istringstream in(canon);
  std::string line;
  NormalForm nf;
  bool has_header = false;
  DependencyRegistry empty;
  std::set<std::string> xset;
  while (std::getline(in, line)) {
    std::string t = strip_str(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.rfind("nf arity", 0) == 0) {
      if (has_header) throw std::invalid_argument("duplicate `nf arity` header");
      nf.arity = std::stoi(strip_str(t.substr(8)));
      for (int i = 1; i <= nf.arity; ++i) nf.xs.push_back("x" + std::to_string(i));
      xset.insert(nf.xs.begin(), nf.xs.end());
      has_header = true;
    } else if (t.rfind("block", 0) == 0) {
      if (!has_header) throw std::invalid_argument("`block:` before `nf arity`");
      NormalFormBlock b;
      b.psi = Formula::top();
      nf.blocks.push_back(std::move(b));
    } else {
      if (!has_header || nf.blocks.empty())
        throw std::invalid_argument("normal form entries must follow `block:`");
      std::size_t eq = t.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("expected `psi|theta|xi = formula`");
      std::string kw = strip_str(t.substr(0, eq));
      FormulaPtr f = parse_formula(strip_str(t.substr(eq + 1)), empty);
      if (kw == "psi")
        nf.blocks.back().psi = f;
      else if (kw == "theta")
        nf.blocks.back().thetas.push_back(make_bound(f, xset));
      else if (kw == "xi")
        nf.blocks.back().xis.push_back(make_bound(f, xset));
      else
        throw std::invalid_argument("unknown normal form entry: " + kw);
    }
  }
  if (!has_header) throw std::invalid_argument("missing `nf arity K` header");
  nf.validate();
  return nf;
}

std::string NormalForm::to_text() const {
  std::ostringstream out;
  out << "nf arity " << arity << "\n";
  for (const auto& b : blocks) {
    out << "block:\n";
    out << "psi = " << print_formula(b.psi) << "\n";
    for (const auto& t : b.thetas) out << "theta = " << print_formula(t.formula) << "\n";
    for (const auto& t : b.xis) out << "xi = " << print_formula(t.formula) << "\n";
  }
  return out.str();
}

namespace {

// ∃ params ∀m̄∈R θ(m̄, params), by direct search.
bool bound_holds(const std::vector<Element>& domain, const Relation& r,
                 const std::vector<std::string>& xs, const NormalFormBound& bound) {
  Interpretation ip;
  ip.domain = domain;
  for (const auto& a : all_tuples(domain, static_cast<int>(bound.params.size()))) {
    bool all_rows = true;
    for (const auto& m : r.tuples()) {
      Assignment s;
      for (std::size_t i = 0; i < xs.size(); ++i) s[xs[i]] = m[i];
      for (std::size_t i = 0; i < bound.params.size(); ++i) s[bound.params[i]] = a[i];
      if (!tarski_eval(ip, s, *bound.formula)) {
        all_rows = false;
        break;
      }
    }
    if (all_rows) return true;
  }
  return false;
}

}  // namespace

bool nf_eval(const std::vector<Element>& domain, const Relation& r,
             const NormalForm& nf) {
  if (r.arity() != nf.arity)
    throw std::invalid_argument("relation arity does not match the normal form");
  nf.validate();
  for (const auto& b : nf.blocks) {
    if (!tarski_empty_signature(domain, *b.psi)) continue;
    bool ok = true;
    for (const auto& t : b.thetas)
      if (!bound_holds(domain, r, nf.xs, t)) { ok = false; break; }
    for (const auto& t : b.xis) {
      if (!ok) break;
      if (bound_holds(domain, r, nf.xs, t)) ok = false;
    }
    if (ok) return true;
  }
  return false;
}

namespace {

struct RenamedBound {
  FormulaPtr formula;              // over vs and the fresh params
  std::vector<std::string> params;
};

RenamedBound rename_bound(const NormalFormBound& bound,
                          const std::vector<std::string>& xs,
                          const std::vector<std::string>& vs) {
  std::set<std::string> used = all_variable_names(*bound.formula);
  used.insert(vs.begin(), vs.end());
  std::map<std::string, std::string> renaming;
  for (std::size_t i = 0; i < xs.size(); ++i) renaming[xs[i]] = vs[i];
  RenamedBound out;
  for (const auto& y : bound.params) {
    if (std::find(vs.begin(), vs.end(), y) != vs.end()) {
      std::string y2 = fresh_name(y, used);
      used.insert(y2);
      renaming[y] = y2;
      out.params.push_back(y2);
    } else {
      out.params.push_back(y);
    }
  }
  out.formula = rename_variables(bound.formula, renaming);
  return out;
}

DepAtomNode group_atom(const std::string& builtin,
                       const std::vector<std::string>& vars) {
  DepAtomNode d;
  d.name = builtin;
  d.groups = {vars};
  return d;
}

void check_translation_args(const NormalForm& nf, const std::vector<std::string>& vs) {
  nf.validate();
  if (vs.size() != nf.xs.size())
    throw std::invalid_argument("variable tuple does not match the normal form arity");
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (vs[i] == vs[j])
        throw std::invalid_argument("translation variables must be pairwise distinct");
}

}  // namespace

NfTranslation nf_to_team_formula(const NormalForm& nf,
                                 const std::vector<std::string>& vs,
                                 const std::string& name_prefix) {
  check_translation_args(nf, vs);
  NfTranslation out;
  if (nf.blocks.empty()) {
    // The empty disjunction rejects every team, the empty team included;
    // the ⊥ literal does not (it accepts ∅), so emit an unsatisfiable
    // 0-ary dependency instead.
    auto never = make_zeroary(name_prefix + "_false",
                              Formula::exists({"u"}, Formula::eq(Term::var("u"),
                                                                 Term::var("u"), false)));
    out.zeroary.push_back(never);
    out.formula = Formula::dep_atom(never->atom_over({}));
    return out;
  }
  std::vector<FormulaPtr> disjuncts;
  for (std::size_t k = 0; k < nf.blocks.size(); ++k) {
    const auto& block = nf.blocks[k];
    auto psi_dep = make_zeroary(name_prefix + "_" + std::to_string(k), block.psi);
    out.zeroary.push_back(psi_dep);
    std::vector<FormulaPtr> parts;
    parts.push_back(Formula::dep_atom(psi_dep->atom_over({})));
    for (const auto& t : block.thetas) {
      RenamedBound rb = rename_bound(t, nf.xs, vs);
      // ∃ȳ(const(ȳ) ∧ θ(v̄, ȳ))
      parts.push_back(Formula::exists(
          rb.params, Formula::conj(Formula::dep_atom(group_atom("const", rb.params)),
                                   rb.formula)));
    }
    for (const auto& t : block.xis) {
      RenamedBound rb = rename_bound(t, nf.xs, vs);
      // ⊤ ∨ ∃z̄(all(z̄) ∧ ¬ξ(v̄, z̄))
      parts.push_back(Formula::tensor(
          Formula::top(),
          Formula::exists(rb.params,
                          Formula::conj(Formula::dep_atom(group_atom("all", rb.params)),
                                        dual_negate(rb.formula)))));
    }
    disjuncts.push_back(Formula::conj_all(parts));
  }
  out.formula = Formula::global_or_all(disjuncts);
  return out;
}

NfTranslation nf_to_team_formula_complement(const NormalForm& nf,
                                            const std::vector<std::string>& vs,
                                            const std::string& name_prefix) {
  check_translation_args(nf, vs);
  NfTranslation out;
  std::vector<FormulaPtr> conjuncts;
  for (std::size_t k = 0; k < nf.blocks.size(); ++k) {
    const auto& block = nf.blocks[k];
    auto npsi_dep =
        make_zeroary(name_prefix + "_" + std::to_string(k), dual_negate(block.psi));
    out.zeroary.push_back(npsi_dep);
    std::vector<FormulaPtr> parts;
    parts.push_back(Formula::dep_atom(npsi_dep->atom_over({})));
    for (const auto& t : block.thetas) {
      RenamedBound rb = rename_bound(t, nf.xs, vs);
      // ⊤ ∨ ∃ȳ(all(ȳ) ∧ ¬θ(v̄, ȳ))
      parts.push_back(Formula::tensor(
          Formula::top(),
          Formula::exists(rb.params,
                          Formula::conj(Formula::dep_atom(group_atom("all", rb.params)),
                                        dual_negate(rb.formula)))));
    }
    for (const auto& t : block.xis) {
      RenamedBound rb = rename_bound(t, nf.xs, vs);
      // ∃z̄(const(z̄) ∧ ξ(v̄, z̄))
      parts.push_back(Formula::exists(
          rb.params, Formula::conj(Formula::dep_atom(group_atom("const", rb.params)),
                                   rb.formula)));
    }
    conjuncts.push_back(Formula::global_or_all(parts));
  }
  out.formula = Formula::conj_all(conjuncts);
  return out;
}

}  // namespace teamcheck
