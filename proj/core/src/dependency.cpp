#include "teamcheck/dependency.hpp"

#include "teamcheck/errors.hpp"
#include "teamcheck/tarski.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <numeric>
#include <sstream>

namespace teamcheck {

namespace {

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::size_t power_checked(std::size_t base, int exp, std::size_t cap) {
  std::size_t out = 1;
  for (int i = 0; i < exp; ++i) {
    out *= base;
    if (out > cap) throw std::domain_error("relation space exceeds the configured cap");
  }
  return out;
}

std::vector<std::string> default_var_names(int k, const std::string& stem) {
  std::vector<std::string> out;
  for (int i = 1; i <= k; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

}  // namespace

Dependency::Dependency(std::string name, int arity, DependencyKind kind,
                       MemberFn member, AtomFormFn atom_form)
    : name_(std::move(name)),
      arity_(arity),
      kind_(kind),
      member_(std::move(member)),
      atom_form_(std::move(atom_form)) {
  if (arity_ < 0) throw std::invalid_argument("dependency arity must be >= 0");
}

bool Dependency::member(const std::vector<Element>& domain, const Relation& r) const {
  if (r.arity() != arity_)
    throw EvalError(EvalErrorKind::ArityMismatch,
                    "dependency " + name_ + " expects arity " + std::to_string(arity_));
  return member_(domain, r);
}

DepAtomNode Dependency::atom_over(const std::vector<std::string>& args) const {
  if (static_cast<int>(args.size()) != arity_)
    throw std::invalid_argument("atom argument count does not match dependency arity");
  if (atom_form_) return atom_form_(args);
  DepAtomNode d;
  d.name = name_;
  d.groups = {args};
  return d;
}

namespace {

bool tuple_prefix_eq(const Tuple& a, const Tuple& b, int from, int len) {
  for (int i = 0; i < len; ++i)
    if (a[from + i] != b[from + i]) return false;
  return true;
}

bool functional_dep_member(int k1, int k2, const Relation& r) {
  for (const auto& t : r.tuples())
    for (const auto& u : r.tuples()) {
      if (!tuple_prefix_eq(t, u, 0, k1)) continue;
      if (!tuple_prefix_eq(t, u, k1, k2)) return false;
    }
  return true;
}

bool independence_member(int k1, int k2, int k3, const Relation& r) {
  for (const auto& t : r.tuples())
    for (const auto& u : r.tuples()) {
      if (!tuple_prefix_eq(t, u, k1, k2)) continue;
      bool found = false;
      for (const auto& w : r.tuples()) {
        if (tuple_prefix_eq(w, t, 0, k1 + k2) &&
            tuple_prefix_eq(w, u, k1, k2 + k3)) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
  return true;
}

bool inclusion_member(int k, const Relation& r) {
  for (const auto& t : r.tuples()) {
    bool found = false;
    for (const auto& u : r.tuples()) {
      bool eq = true;
      for (int i = 0; i < k && eq; ++i) eq = (t[i] == u[k + i]);
      if (eq) { found = true; break; }
    }
    if (!found) return false;
  }
  return true;
}

bool exclusion_member(int k, const Relation& r) {
  for (const auto& t : r.tuples())
    for (const auto& u : r.tuples()) {
      bool eq = true;
      for (int i = 0; i < k && eq; ++i) eq = (t[i] == u[k + i]);
      if (eq) return false;
    }
  return true;
}

bool totality_member(const std::vector<Element>& domain, int k, const Relation& r) {
  std::size_t want = 1;
  for (int i = 0; i < k; ++i) {
    want *= domain.size();
    if (want > (1u << 30)) throw std::domain_error("totality check too large");
  }
  if (r.size() != want) return false;
  for (const auto& t : r.tuples())
    for (Element e : t)
      if (!std::binary_search(domain.begin(), domain.end(), e)) return false;
  return true;
}

}  // namespace

DependencyPtr make_builtin(BuiltinDep kind, const std::vector<int>& group_sizes) {
  for (int g : group_sizes)
    if (g < 0) throw std::invalid_argument("negative group size");
  int arity = std::accumulate(group_sizes.begin(), group_sizes.end(), 0);
  auto named = [&](const std::string& stem) {
    std::string n = stem + ":";
    for (std::size_t i = 0; i < group_sizes.size(); ++i)
      n += (i ? "," : "") + std::to_string(group_sizes[i]);
    return n;
  };
  auto split_args = [group_sizes](const std::string& grammar_name) {
    return [group_sizes, grammar_name](const std::vector<std::string>& args) {
      DepAtomNode d;
      d.name = grammar_name;
      std::size_t at = 0;
      for (int g : group_sizes) {
        d.groups.emplace_back(args.begin() + at, args.begin() + at + g);
        at += g;
      }
      return d;
    };
  };
  switch (kind) {
    case BuiltinDep::FunctionalDependence: {
      if (group_sizes.size() != 2)
        throw std::invalid_argument("=(xs;ys) takes two groups");
      int k1 = group_sizes[0], k2 = group_sizes[1];
      return std::make_shared<Dependency>(
          named("dep"), arity, DependencyKind::Builtin,
          [k1, k2](const std::vector<Element>&, const Relation& r) {
            return functional_dep_member(k1, k2, r);
          },
          split_args("dep"));
    }
    case BuiltinDep::Independence: {
      if (group_sizes.size() != 3)
        throw std::invalid_argument("ind(xs;ys;zs) takes three groups");
      int k1 = group_sizes[0], k2 = group_sizes[1], k3 = group_sizes[2];
      return std::make_shared<Dependency>(
          named("ind"), arity, DependencyKind::Builtin,
          [k1, k2, k3](const std::vector<Element>&, const Relation& r) {
            return independence_member(k1, k2, k3, r);
          },
          split_args("ind"));
    }
    case BuiltinDep::Inclusion:
    case BuiltinDep::Exclusion: {
      bool inc = kind == BuiltinDep::Inclusion;
      if (group_sizes.size() != 2 || group_sizes[0] != group_sizes[1])
        throw std::invalid_argument("inc/exc take two groups of equal length");
      int k = group_sizes[0];
      return std::make_shared<Dependency>(
          named(inc ? "inc" : "exc"), arity, DependencyKind::Builtin,
          [inc, k](const std::vector<Element>&, const Relation& r) {
            return inc ? inclusion_member(k, r) : exclusion_member(k, r);
          },
          split_args(inc ? "inc" : "exc"));
    }
    case BuiltinDep::Constancy:
      if (group_sizes.size() != 1)
        throw std::invalid_argument("const takes one group");
      return std::make_shared<Dependency>(
          named("const"), arity, DependencyKind::Builtin,
          [](const std::vector<Element>&, const Relation& r) { return r.size() <= 1; },
          split_args("const"));
    case BuiltinDep::NonConstancy:
      if (group_sizes.size() != 1)
        throw std::invalid_argument("nonconst takes one group");
      return std::make_shared<Dependency>(
          named("nonconst"), arity, DependencyKind::Builtin,
          [](const std::vector<Element>&, const Relation& r) { return r.size() >= 2; },
          split_args("nonconst"));
    case BuiltinDep::Totality: {
      if (group_sizes.size() != 1)
        throw std::invalid_argument("all takes one group");
      int k = arity;
      return std::make_shared<Dependency>(
          named("all"), arity, DependencyKind::Builtin,
          [k](const std::vector<Element>& dom, const Relation& r) {
            return totality_member(dom, k, r);
          },
          split_args("all"));
    }
  }
  throw std::invalid_argument("unknown builtin");
}

namespace {

void check_defining_sentence(const FormulaPtr& sentence, int arity,
                             const std::string& symbol) {
  if (!is_first_order(*sentence))
    throw std::invalid_argument("defining sentences must be first-order");
  if (!free_variables(*sentence).empty())
    throw std::invalid_argument("defining sentences may not have free variables");
  SignatureInfo sig = collect_signature(*sentence);
  if (!sig.constants.empty())
    throw std::invalid_argument("defining sentences may not use constants");
  for (const auto& [name, ar] : sig.relations) {
    if (name != symbol)
      throw std::invalid_argument("defining sentence uses foreign relation " + name);
    if (ar != arity)
      throw std::invalid_argument("defining sentence uses " + name +
                                  " with the wrong arity");
  }
}

}  // namespace

DependencyPtr make_fo_dependency(std::string name, int arity, FormulaPtr sentence,
                                 const std::string& relation_symbol) {
  check_defining_sentence(sentence, arity, relation_symbol);
  return std::make_shared<Dependency>(
      std::move(name), arity, DependencyKind::FoSentence,
      [sentence, relation_symbol](const std::vector<Element>& dom, const Relation& r) {
        Interpretation ip;
        ip.domain = dom;
        ip.relations[relation_symbol] = r;
        return tarski_eval(ip, Assignment{}, *sentence);
      });
}

DependencyPtr make_zeroary(std::string name, FormulaPtr sentence) {
  check_defining_sentence(sentence, 0, "");
  SignatureInfo sig = collect_signature(*sentence);
  if (!sig.relations.empty())
    throw std::invalid_argument("0-ary dependencies are defined over the empty signature");
  return std::make_shared<Dependency>(
      std::move(name), 0, DependencyKind::FoSentence,
      [sentence](const std::vector<Element>& dom, const Relation&) {
        return tarski_empty_signature(dom, *sentence);
      });
}

DependencyPtr make_unary(std::string name, FormulaPtr sentence,
                         const std::string& symbol) {
  return make_fo_dependency(std::move(name), 1, std::move(sentence), symbol);
}

namespace {

std::map<int, std::set<Relation>> close_table_under_permutations(
    int arity, const std::map<int, std::vector<Relation>>& table) {
  std::map<int, std::set<Relation>> closed;
  for (const auto& [size, rels] : table) {
    if (size < 2) throw std::invalid_argument("table domain sizes must be >= 2");
    if (size > 8) throw std::invalid_argument("table domain sizes are capped at 8");
    std::vector<Element> perm(size);
    std::iota(perm.begin(), perm.end(), 0);
    auto& bucket = closed[size];
    for (const auto& r : rels) {
      if (r.arity() != arity) throw std::invalid_argument("table relation arity mismatch");
      for (const auto& t : r.tuples())
        for (Element e : t)
          if (e < 0 || e >= size)
            throw std::invalid_argument("table relation leaves its domain");
    }
    do {
      for (const auto& r : rels) {
        Relation image(arity);
        for (const auto& t : r.tuples()) {
          Tuple u(t.size());
          for (std::size_t i = 0; i < t.size(); ++i) u[i] = perm[t[i]];
          image.insert(u);
        }
        bucket.insert(std::move(image));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return closed;
}

}  // namespace

DependencyPtr make_table(std::string name, int arity,
                         const std::map<int, std::vector<Relation>>& table) {
  auto closed = std::make_shared<const std::map<int, std::set<Relation>>>(
      close_table_under_permutations(arity, table));
  return std::make_shared<Dependency>(
      std::move(name), arity, DependencyKind::Table,
      [closed, arity](const std::vector<Element>& dom, const Relation& r) {
        auto it = closed->find(static_cast<int>(dom.size()));
        if (it == closed->end()) return false;
        std::vector<Element> sorted = dom;
        std::sort(sorted.begin(), sorted.end());
        Relation remapped(arity);
        for (const auto& t : r.tuples()) {
          Tuple u(t.size());
          for (std::size_t i = 0; i < t.size(); ++i) {
            auto pos = std::lower_bound(sorted.begin(), sorted.end(), t[i]);
            if (pos == sorted.end() || *pos != t[i]) return false;  // leaves the domain
            u[i] = static_cast<Element>(pos - sorted.begin());
          }
          remapped.insert(u);
        }
        return it->second.count(remapped) != 0;
      });
}

DependencyPtr make_table_from_predicate(
    std::string name, int arity, const std::vector<int>& sizes,
    const std::function<bool(int, const Relation&)>& accept) {
  std::map<int, std::vector<Relation>> table;
  for (int n : sizes) {
    std::vector<Element> dom(n);
    std::iota(dom.begin(), dom.end(), 0);
    auto cells = all_tuples(dom, arity);
    std::size_t count = power_checked(2, static_cast<int>(cells.size()), 1u << 20);
    for (std::size_t mask = 0; mask < count; ++mask) {
      Relation r(arity);
      for (std::size_t b = 0; b < cells.size(); ++b)
        if (mask & (1ull << b)) r.insert(cells[b]);
      if (accept(n, r)) table[n].push_back(std::move(r));
    }
    table.try_emplace(n);  // listed size, even if nothing accepted
  }
  return make_table(std::move(name), arity, table);
}

DependencyPtr complement_dep(const DependencyPtr& d) {
  DependencyPtr base = d;
  return std::make_shared<Dependency>(
      "not_" + base->name(), base->arity(), DependencyKind::Derived,
      [base](const std::vector<Element>& dom, const Relation& r) {
        return !base->member(dom, r);
      },
      [base](const std::vector<std::string>& args) {
        DepAtomNode a = base->atom_over(args);
        a.complemented = !a.complemented;
        return a;
      });
}

DependencyPtr downward_closure(const DependencyPtr& d, int max_cells) {
  DependencyPtr base = d;
  int arity = base->arity();
  return std::make_shared<Dependency>(
      base->name() + "_down", arity, DependencyKind::Derived,
      [base, arity, max_cells](const std::vector<Element>& dom, const Relation& r) {
        std::vector<Tuple> missing;
        for (const auto& t : all_tuples(dom, arity))
          if (!r.contains(t)) missing.push_back(t);
        if (static_cast<int>(missing.size()) > max_cells)
          throw std::domain_error("downward closure search space too large");
        std::size_t count = 1ull << missing.size();
        for (std::size_t mask = 0; mask < count; ++mask) {
          Relation s = r;
          for (std::size_t b = 0; b < missing.size(); ++b)
            if (mask & (1ull << b)) s.insert(missing[b]);
          if (base->member(dom, s)) return true;
        }
        return false;
      });
}

DependencyPtr restrict_theta(const DependencyPtr& d, const FormulaPtr& theta,
                             const std::vector<std::string>& xs,
                             const std::vector<std::string>& ys) {
  if (static_cast<int>(xs.size()) != d->arity())
    throw std::invalid_argument("theta restriction: xs must match the dependency arity");
  if (!is_first_order(*theta))
    throw std::invalid_argument("theta must be first-order");
  SignatureInfo sig = collect_signature(*theta);
  if (!sig.relations.empty() || !sig.constants.empty())
    throw std::invalid_argument("theta must be over the empty signature");
  DependencyPtr base = d;
  FormulaPtr th = theta;
  std::vector<std::string> xv = xs, yv = ys;
  return std::make_shared<Dependency>(
      base->name() + "_restricted", base->arity(), DependencyKind::Derived,
      [base, th, xv, yv](const std::vector<Element>& dom, const Relation& r) {
        if (!base->member(dom, r)) return false;
        Interpretation ip;
        ip.domain = dom;
        for (const auto& a : all_tuples(dom, static_cast<int>(yv.size()))) {
          bool all_rows = true;
          for (const auto& m : r.tuples()) {
            Assignment s;
            for (std::size_t i = 0; i < xv.size(); ++i) s[xv[i]] = m[i];
            for (std::size_t i = 0; i < yv.size(); ++i) s[yv[i]] = a[i];
            if (!tarski_eval(ip, s, *th)) {
              all_rows = false;
              break;
            }
          }
          if (all_rows) return true;
        }
        return false;
      });
}

bool relativized_member(const Dependency& d, const Model& m,
                        const std::string& predicate, const Relation& r) {
  const Relation* p = m.relation(predicate);
  if (!p || p->arity() != 1)
    throw EvalError(EvalErrorKind::MissingRelation,
                    "relativization predicate " + predicate + " is not a unary relation");
  std::vector<Element> ext = m.predicate_extension(predicate);
  if (ext.size() < 2)
    throw EvalError(EvalErrorKind::RelativizationDomain,
                    "relativization domain " + predicate +
                        " has fewer than two elements; membership is not defined here");
  return d.member(ext, r);
}

namespace {

struct Cells {
  std::vector<Tuple> tuples;
  std::map<Tuple, int> index;
};

Cells make_cells(const std::vector<Element>& domain, int arity, int max_cells) {
  Cells c;
  c.tuples = all_tuples(domain, arity);
  if (static_cast<int>(c.tuples.size()) > max_cells)
    throw std::domain_error("relation space |M|^k exceeds the cap (" +
                            std::to_string(max_cells) + " cells)");
  for (std::size_t i = 0; i < c.tuples.size(); ++i) c.index[c.tuples[i]] = static_cast<int>(i);
  return c;
}

Relation mask_to_relation(const Cells& c, std::uint64_t mask, int arity) {
  Relation r(arity);
  for (std::size_t b = 0; b < c.tuples.size(); ++b)
    if (mask & (1ull << b)) r.insert(c.tuples[b]);
  return r;
}

}  // namespace

std::vector<Relation> maximal_relations(const Dependency& d,
                                        const std::vector<Element>& domain,
                                        int max_cells) {
  Cells cells = make_cells(domain, d.arity(), max_cells);
  const std::size_t n = cells.tuples.size();
  std::vector<std::uint64_t> members;
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask)
    if (d.member(domain, mask_to_relation(cells, mask, d.arity())))
      members.push_back(mask);
  // Scan big-to-small: a member is maximal iff no already-found maximal
  // strictly contains it (every member extends to a maximal one by
  // finiteness).
  std::sort(members.begin(), members.end(),
            [](std::uint64_t a, std::uint64_t b) {
              int pa = std::popcount(a), pb = std::popcount(b);
              return pa != pb ? pa > pb : a < b;
            });
  std::vector<std::uint64_t> maximal;
  for (std::uint64_t m : members) {
    bool dominated = false;
    for (std::uint64_t mx : maximal)
      if ((m & mx) == m && m != mx) { dominated = true; break; }
    if (!dominated) maximal.push_back(m);
  }
  std::vector<Relation> out;
  out.reserve(maximal.size());
  for (std::uint64_t m : maximal) out.push_back(mask_to_relation(cells, m, d.arity()));
  std::sort(out.begin(), out.end());
  return out;
}

std::string ClassifyWitness::to_text() const {
  std::ostringstream out;
  out << "size=" << domain_size << " R=" << relation.to_text();
  if (related) out << " related=" << related->to_text();
  if (related_domain_size) out << " related-size=" << *related_domain_size;
  return out.str();
}

ClassifyReport classify(const Dependency& d, int bound, int max_cells) {
  if (bound < 2) throw std::invalid_argument("classification bound must be >= 2");
  ClassifyReport report;
  report.bound = bound;
  const int k = d.arity();

  for (int n = 2; n <= bound; ++n) {
    std::vector<Element> dom(n);
    std::iota(dom.begin(), dom.end(), 0);
    Cells cells = make_cells(dom, k, max_cells);
    const std::size_t nc = cells.tuples.size();
    std::vector<bool> member(1ull << nc);
    for (std::uint64_t mask = 0; mask < (1ull << nc); ++mask)
      member[mask] = d.member(dom, mask_to_relation(cells, mask, k));

    if (report.empty_team.holds && !member[0]) {
      report.empty_team.holds = false;
      report.empty_team.witness = ClassifyWitness{n, Relation(k), std::nullopt, std::nullopt};
    }
    for (std::uint64_t mask = 0; mask < (1ull << nc); ++mask) {
      if (!member[mask]) continue;
      // Single-step closure suffices: subsets/supersets reached by induction.
      for (std::size_t b = 0; b < nc; ++b) {
        if (report.downwards_closed.holds && (mask & (1ull << b)) &&
            !member[mask & ~(1ull << b)]) {
          report.downwards_closed.holds = false;
          report.downwards_closed.witness =
              ClassifyWitness{n, mask_to_relation(cells, mask, k),
                              mask_to_relation(cells, mask & ~(1ull << b), k),
                              std::nullopt};
        }
        if (report.upwards_closed.holds && !(mask & (1ull << b)) &&
            !member[mask | (1ull << b)]) {
          report.upwards_closed.holds = false;
          report.upwards_closed.witness =
              ClassifyWitness{n, mask_to_relation(cells, mask, k),
                              mask_to_relation(cells, mask | (1ull << b), k),
                              std::nullopt};
        }
      }
    }
  }

  // Domain independence, both directions: membership of R may not change
  // between a domain and a superdomain as long as R fits in both.
  for (int small = 2; small <= bound && report.domain_independent.holds; ++small) {
    for (int big = small + 1; big <= bound && report.domain_independent.holds; ++big) {
      std::vector<Element> dom_small(small), dom_big(big);
      std::iota(dom_small.begin(), dom_small.end(), 0);
      std::iota(dom_big.begin(), dom_big.end(), 0);
      Cells cells = make_cells(dom_small, k, max_cells);
      const std::size_t nc = cells.tuples.size();
      for (std::uint64_t mask = 0; mask < (1ull << nc); ++mask) {
        Relation r = mask_to_relation(cells, mask, k);
        bool in_small = d.member(dom_small, r);
        bool in_big = d.member(dom_big, r);
        if (in_small != in_big) {
          report.domain_independent.holds = false;
          report.domain_independent.witness =
              ClassifyWitness{in_big ? big : small, r, std::nullopt,
                              in_big ? small : big};
          break;
        }
      }
    }
  }
  return report;
}

void DependencyRegistry::register_dependency(DependencyPtr d) {
  const std::string& name = d->name();
  if (name.empty() || (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_'))
    throw std::invalid_argument("dependency names must be identifiers: " + name);
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
      throw std::invalid_argument("dependency names must be identifiers: " + name);
  if (is_builtin_dep_name(name) || name == "atom" || name == "top" || name == "bot" ||
      name == "exists" || name == "forall" || name == "dia" || name == "lor")
    throw std::invalid_argument("dependency name is reserved: " + name);
  auto [it, fresh] = deps_.emplace(name, std::move(d));
  if (!fresh) throw std::invalid_argument("dependency name already registered: " + name);
}

DependencyPtr DependencyRegistry::find(const std::string& name) const {
  auto it = deps_.find(name);
  return it == deps_.end() ? nullptr : it->second;
}

std::vector<std::string> DependencyRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : deps_) out.push_back(name);
  return out;
}

DependencyPtr DependencyRegistry::resolve_atom(const DepAtomNode& atom) const {
  if (is_builtin_dep_name(atom.name)) {
    std::vector<int> sizes;
    for (const auto& g : atom.groups) sizes.push_back(static_cast<int>(g.size()));
    BuiltinDep kind;
    if (atom.name == "dep") kind = BuiltinDep::FunctionalDependence;
    else if (atom.name == "ind") kind = BuiltinDep::Independence;
    else if (atom.name == "inc") kind = BuiltinDep::Inclusion;
    else if (atom.name == "exc") kind = BuiltinDep::Exclusion;
    else if (atom.name == "const") kind = BuiltinDep::Constancy;
    else if (atom.name == "all") kind = BuiltinDep::Totality;
    else kind = BuiltinDep::NonConstancy;
    return make_builtin(kind, sizes);
  }
  DependencyPtr d = find(atom.name);
  if (!d)
    throw EvalError(EvalErrorKind::UnknownDependency,
                    "unknown dependency: " + atom.name);
  if (d->arity() != atom.arity())
    throw EvalError(EvalErrorKind::ArityMismatch,
                    "dependency " + atom.name + " applied with the wrong arity");
  return d;
}

namespace {

Relation parse_relation_literal(const std::string& text, int arity, int lineno) {
  auto fail = [&](const std::string& msg) -> void {
    throw std::invalid_argument("dependency line " + std::to_string(lineno) + ": " + msg);
  };
  std::string t = strip(text);
  if (t.empty() || t.front() != '{' || t.back() != '}') fail("expected {..} relation literal");
  Relation r(arity);
  std::string inner = t.substr(1, t.size() - 2);
  std::size_t pos = 0;
  while (true) {
    std::size_t open = inner.find('(', pos);
    if (open == std::string::npos) break;
    std::size_t close = inner.find(')', open);
    if (close == std::string::npos) fail("unterminated tuple");
    std::string body = inner.substr(open + 1, close - open - 1);
    for (char& c : body)
      if (c == ',') c = ' ';
    std::istringstream in(body);
    Tuple tup;
    int e;
    while (in >> e) tup.push_back(e);
    if (static_cast<int>(tup.size()) != arity) fail("tuple arity mismatch in table");
    r.insert(tup);
    pos = close + 1;
  }
  return r;
}

}  // namespace

void DependencyRegistry::load(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = strip(line);
    if (t.empty() || t[0] == '#') continue;
    auto fail = [&](const std::string& msg) -> void {
      throw std::invalid_argument("dependency line " + std::to_string(lineno) + ": " + msg);
    };
    if (t.rfind("dependency", 0) != 0) fail("expected a `dependency` line");
    std::istringstream head(t.substr(10));
    std::string name, kw;
    int arity = -1;
    if (!(head >> name >> kw >> arity) || kw != "arity" || arity < 0)
      fail("expected `dependency NAME arity K ...`");
    std::string rest;
    std::getline(head, rest);
    rest = strip(rest);
    if (rest.rfind(":=", 0) == 0) {
      std::string body = strip(rest.substr(2));
      DependencyRegistry empty;
      FormulaPtr sentence = parse_formula(body, empty);
      if (arity == 0)
        register_dependency(make_zeroary(name, sentence));
      else
        register_dependency(make_fo_dependency(name, arity, sentence));
    } else if (rest.rfind("table(domain-size", 0) == 0) {
      std::size_t close = rest.find(')');
      std::size_t colon = rest.find(':', close == std::string::npos ? 0 : close);
      if (close == std::string::npos || colon == std::string::npos)
        fail("expected `table(domain-size S): ...`");
      int size = 0;
      try {
        size = std::stoi(strip(rest.substr(17, close - 17)));
      } catch (...) {
        fail("bad domain size");
      }
      std::vector<Relation> rels;
      std::string body = rest.substr(colon + 1);
      std::size_t pos = 0;
      while (pos <= body.size()) {
        std::size_t semi = body.find(';', pos);
        std::string piece = semi == std::string::npos ? body.substr(pos)
                                                      : body.substr(pos, semi - pos);
        if (!strip(piece).empty())
          rels.push_back(parse_relation_literal(piece, arity, lineno));
        if (semi == std::string::npos) break;
        pos = semi + 1;
      }
      auto& bucket = table_sources_[name];
      auto& sized = bucket[size];
      sized.insert(sized.end(), rels.begin(), rels.end());
      // Re-register with the accumulated sizes.
      deps_.erase(name);
      register_dependency(make_table(name, arity, bucket));
    } else {
      fail("expected `:=` or `table(domain-size S):`");
    }
  }
}

}  // namespace teamcheck
