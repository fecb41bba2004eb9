#include "teamcheck/oracle.hpp"

#include "teamcheck/errors.hpp"
#include "teamcheck/tarski.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

namespace teamcheck {

std::string Counterexample::to_text() const {
  std::ostringstream out;
  out << model.to_text() << team.to_text(model);
  out << "left: " << (left ? "true" : "false") << "\n";
  out << "right: " << (right ? "true" : "false") << "\n";
  return out.str();
}

void enumerate_teams(const Model& m, const std::vector<std::string>& vars,
                     std::size_t max_team_size,
                     const std::function<bool(const Team&)>& visit) {
  Team empty{std::vector<std::string>(vars)};
  auto rows = all_tuples(m.domain(), static_cast<int>(empty.vars().size()));
  if (rows.size() > 20)
    throw EvalError(EvalErrorKind::SearchTooLarge,
                    "team enumeration over " + std::to_string(rows.size()) +
                        " assignments");
  const std::uint64_t total = 1ull << rows.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) > max_team_size) continue;
    Team t{std::vector<std::string>(empty.vars())};
    for (std::size_t b = 0; b < rows.size(); ++b)
      if (mask & (1ull << b)) t.insert_row(rows[b]);
    if (!visit(t)) return;
  }
}

std::vector<Team> all_teams(const Model& m, const std::vector<std::string>& vars,
                            std::size_t max_team_size) {
  std::vector<Team> out;
  enumerate_teams(m, vars, max_team_size, [&](const Team& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

namespace {

std::vector<std::uint64_t> relation_masks(int cells, bool predicate) {
  if (cells > 20)
    throw EvalError(EvalErrorKind::SearchTooLarge,
                    "relation interpretation space over " + std::to_string(cells) +
                        " cells");
  std::vector<std::uint64_t> out;
  for (std::uint64_t mask = 0; mask < (1ull << cells); ++mask) {
    if (predicate && std::popcount(mask) < 2) continue;
    out.push_back(mask);
  }
  return out;
}

}  // namespace

void enumerate_models(const SignatureInfo& sig, const std::vector<int>& sizes,
                      std::size_t max_models,
                      const std::function<bool(const Model&)>& visit) {
  std::map<std::string, int> rels = sig.relations;
  for (const auto& p : sig.predicates) {
    auto it = rels.find(p);
    if (it != rels.end() && it->second != 1)
      throw std::invalid_argument("relativization predicate must be unary: " + p);
    rels.emplace(p, 1);
  }

  for (int n : sizes) {
    Model base = Model::with_size(n);
    auto domain = base.domain();

    struct RelSlot {
      std::string name;
      int arity;
      std::vector<Tuple> cells;
      std::vector<std::uint64_t> masks;
      std::size_t at = 0;
    };
    std::vector<RelSlot> slots;
    std::size_t count = 1;
    for (const auto& [name, arity] : rels) {
      RelSlot slot;
      slot.name = name;
      slot.arity = arity;
      slot.cells = all_tuples(domain, arity);
      slot.masks = relation_masks(static_cast<int>(slot.cells.size()),
                                  sig.predicates.count(name) != 0);
      count *= slot.masks.size();
      if (count > max_models)
        throw EvalError(EvalErrorKind::SearchTooLarge,
                        "model enumeration exceeds the cap");
      slots.push_back(std::move(slot));
    }
    std::vector<std::string> consts(sig.constants.begin(), sig.constants.end());
    for (std::size_t i = 0; i < consts.size(); ++i) {
      count *= n;
      if (count > max_models)
        throw EvalError(EvalErrorKind::SearchTooLarge,
                        "model enumeration exceeds the cap");
    }
    std::vector<int> cvals(consts.size(), 0);

    // Odometer over relation masks and constant values.
    while (true) {
      Model m = base;
      for (const auto& slot : slots) {
        Relation r(slot.arity);
        for (std::size_t b = 0; b < slot.cells.size(); ++b)
          if (slot.masks[slot.at] & (1ull << b)) r.insert(slot.cells[b]);
        m.add_relation(slot.name, std::move(r));
      }
      for (std::size_t i = 0; i < consts.size(); ++i)
        m.set_constant(consts[i], cvals[i]);
      if (!visit(m)) return;

      // Advance.
      std::size_t i = 0;
      for (; i < consts.size(); ++i) {
        if (++cvals[i] < n) break;
        cvals[i] = 0;
      }
      if (i < consts.size()) continue;
      std::size_t s = 0;
      for (; s < slots.size(); ++s) {
        if (++slots[s].at < slots[s].masks.size()) break;
        slots[s].at = 0;
      }
      if (s == slots.size()) break;
    }
  }
}

std::optional<Counterexample> formulas_equivalent(
    const FormulaPtr& a, const FormulaPtr& b, const DependencyRegistry& registry,
    const std::vector<std::string>& vars, const EquivOptions& opts) {
  for (const auto& v : free_variables(*a))
    if (std::find(vars.begin(), vars.end(), v) == vars.end())
      throw std::invalid_argument("variable set does not cover the left formula: " + v);
  for (const auto& v : free_variables(*b))
    if (std::find(vars.begin(), vars.end(), v) == vars.end())
      throw std::invalid_argument("variable set does not cover the right formula: " + v);

  SignatureInfo sig = collect_signature(*a);
  sig.merge(collect_signature(*b));

  std::optional<Counterexample> found;
  enumerate_models(sig, opts.domain_sizes, opts.max_models, [&](const Model& m) {
    EvalContext ctx(m, registry, opts.eval, opts.limits);
    enumerate_teams(m, vars, opts.max_team_size, [&](const Team& t) {
      bool l = ctx.team_eval(t, a);
      bool r = ctx.team_eval(t, b);
      if (l != r) {
        found = Counterexample{m, t, l, r};
        return false;
      }
      return true;
    });
    return !found;
  });
  return found;
}

std::optional<Counterexample> flatness_audit(const FormulaPtr& phi,
                                             const std::vector<std::string>& vars,
                                             const EquivOptions& opts) {
  if (!is_first_order(*phi))
    throw std::invalid_argument("flatness audit expects a first-order formula");
  SignatureInfo sig = collect_signature(*phi);
  DependencyRegistry registry;

  std::optional<Counterexample> found;
  enumerate_models(sig, opts.domain_sizes, opts.max_models, [&](const Model& m) {
    EvalContext ctx(m, registry, opts.eval, opts.limits);
    // One Tarskian verdict per assignment; teams then check containment.
    Team probe{std::vector<std::string>(vars)};
    std::map<Tuple, bool> row_sat;
    for (const auto& row : all_tuples(m.domain(), static_cast<int>(probe.vars().size())))
      row_sat[row] = tarski_eval(m, probe.row_to_assignment(row), *phi);
    enumerate_teams(m, vars, opts.max_team_size, [&](const Team& t) {
      bool team_side = ctx.team_eval(t, phi);
      bool pointwise = true;
      for (const auto& row : t.rows())
        if (!row_sat.at(row)) {
          pointwise = false;
          break;
        }
      if (team_side != pointwise) {
        found = Counterexample{m, t, team_side, pointwise};
        return false;
      }
      return true;
    });
    return !found;
  });
  return found;
}

bool fixes_identity_type(const FormulaPtr& theta, const std::vector<std::string>& xs,
                         const std::vector<std::string>& ys, int size_bound) {
  if (ys.size() < 2) return true;
  if (size_bound <= 0)
    size_bound = 2 * static_cast<int>(ys.size()) + static_cast<int>(xs.size());
  size_bound = std::max(size_bound, 2);

  for (std::size_t i = 0; i < ys.size(); ++i) {
    for (std::size_t j = i + 1; j < ys.size(); ++j) {
      bool sat_eq = false, sat_neq = false;
      for (int n = 2; n <= size_bound && !(sat_eq && sat_neq); ++n) {
        std::vector<Element> dom(n);
        std::iota(dom.begin(), dom.end(), 0);
        Interpretation ip;
        ip.domain = dom;
        auto xts = all_tuples(dom, static_cast<int>(xs.size()));
        auto yts = all_tuples(dom, static_cast<int>(ys.size()));
        for (const auto& yt : yts) {
          for (const auto& xt : xts) {
            Assignment s;
            for (std::size_t k = 0; k < xs.size(); ++k) s[xs[k]] = xt[k];
            for (std::size_t k = 0; k < ys.size(); ++k) s[ys[k]] = yt[k];
            if (!tarski_eval(ip, s, *theta)) continue;
            (yt[i] == yt[j] ? sat_eq : sat_neq) = true;
            if (sat_eq && sat_neq) break;
          }
          if (sat_eq && sat_neq) break;
        }
      }
      if (sat_eq && sat_neq) return false;
    }
  }
  return true;
}

FormulaPtr fix_identity(const FormulaPtr& theta, const std::vector<std::string>& ys,
                        const Tuple& a) {
  if (a.size() != ys.size())
    throw std::invalid_argument("fix_identity: tuple length mismatch");
  std::vector<FormulaPtr> parts;
  for (std::size_t i = 0; i < ys.size(); ++i)
    for (std::size_t j = i + 1; j < ys.size(); ++j)
      parts.push_back(
          Formula::eq(Term::var(ys[i]), Term::var(ys[j]), a[i] == a[j]));
  parts.push_back(theta);
  return Formula::conj_all(parts);
}

Relation transport_relation(const std::vector<Element>& h, const Relation& r) {
  Relation out(r.arity());
  for (const auto& t : r.tuples()) {
    Tuple u(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] < 0 || t[i] >= static_cast<Element>(h.size()))
        throw std::invalid_argument("transport: element outside the bijection table");
      u[i] = h[t[i]];
    }
    out.insert(u);
  }
  return out;
}

namespace {

Relation defined_set(int domain_size, const FormulaPtr& theta,
                     const std::vector<std::string>& xs,
                     const std::vector<std::string>& ys, const Tuple& params) {
  std::vector<Element> dom(domain_size);
  std::iota(dom.begin(), dom.end(), 0);
  Interpretation ip;
  ip.domain = dom;
  Relation r(static_cast<int>(xs.size()));
  for (const auto& xt : all_tuples(dom, static_cast<int>(xs.size()))) {
    Assignment s;
    for (std::size_t k = 0; k < xs.size(); ++k) s[xs[k]] = xt[k];
    for (std::size_t k = 0; k < ys.size(); ++k) s[ys[k]] = params[k];
    if (tarski_eval(ip, s, *theta)) r.insert(xt);
  }
  return r;
}

}  // namespace

std::optional<std::vector<Element>> find_bijection(
    int domain_size, const FormulaPtr& theta, const std::vector<std::string>& xs,
    const std::vector<std::string>& ys, const Tuple& a, const Tuple& b) {
  if (a.size() != ys.size() || b.size() != ys.size())
    throw std::invalid_argument("parameter tuple length mismatch");
  for (Element e : a)
    if (e < 0 || e >= domain_size)
      throw std::invalid_argument("parameter outside the domain");
  for (Element e : b)
    if (e < 0 || e >= domain_size)
      throw std::invalid_argument("parameter outside the domain");

  // Identity types must agree.
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if ((a[i] == a[j]) != (b[i] == b[j])) return std::nullopt;

  Relation r = defined_set(domain_size, theta, xs, ys, a);
  Relation s = defined_set(domain_size, theta, xs, ys, b);
  if (r.empty() || s.empty())
    throw std::invalid_argument("defined sets must be nonempty");

  std::vector<Element> h(domain_size, -1);
  std::vector<bool> used(domain_size, false);
  for (std::size_t i = 0; i < a.size(); ++i) {
    h[a[i]] = b[i];
    used[b[i]] = true;
  }
  std::vector<Element> rest_b;
  for (Element e = 0; e < domain_size; ++e)
    if (!used[e]) rest_b.push_back(e);
  std::size_t at = 0;
  for (Element e = 0; e < domain_size; ++e)
    if (h[e] < 0) h[e] = rest_b[at++];

  if (!(transport_relation(h, r) == s)) return std::nullopt;
  return h;
}

StairChain stair_search(const Dependency& d, const std::vector<Element>& domain,
                        int max_depth, int max_cells) {
  auto cells = all_tuples(domain, d.arity());
  if (static_cast<int>(cells.size()) > max_cells)
    throw std::domain_error("stair search space |M|^k exceeds the cap");
  const std::size_t nc = cells.size();
  const std::uint64_t total = 1ull << nc;

  auto to_relation = [&](std::uint64_t mask) {
    Relation r(d.arity());
    for (std::size_t b = 0; b < nc; ++b)
      if (mask & (1ull << b)) r.insert(cells[b]);
    return r;
  };

  std::vector<bool> member(total);
  for (std::uint64_t mask = 0; mask < total; ++mask)
    member[mask] = d.member(domain, to_relation(mask));

  // depth_from_p[m]: number of Q links reachable from P = m; successors for
  // chain reconstruction. -1 marks "not yet computed".
  std::vector<int> depth_from_p(total, -1), depth_from_q(total, -1);
  std::vector<std::int64_t> next_q(total, -1), next_p(total, -1);

  // Process masks from largest popcount down: successors are strict supersets.
  std::vector<std::uint64_t> order(total);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [](std::uint64_t x, std::uint64_t y) {
    int px = std::popcount(x), py = std::popcount(y);
    return px != py ? px > py : x < y;
  });

  const std::uint64_t full = total - 1;
  for (std::uint64_t m : order) {
    // Strict supersets: m | s for nonempty s ⊆ complement.
    std::uint64_t comp = full & ~m;
    if (member[m]) {
      depth_from_p[m] = 0;
      for (std::uint64_t s = comp; s != 0; s = (s - 1) & comp) {
        std::uint64_t q = m | s;
        if (member[q]) continue;
        int cand = 1 + depth_from_q[q];
        if (cand > depth_from_p[m]) {
          depth_from_p[m] = cand;
          next_q[m] = static_cast<std::int64_t>(q);
        }
      }
    } else {
      depth_from_q[m] = 0;
      for (std::uint64_t s = comp; s != 0; s = (s - 1) & comp) {
        std::uint64_t p = m | s;
        if (!member[p]) continue;
        if (depth_from_p[p] > depth_from_q[m]) {
          depth_from_q[m] = depth_from_p[p];
          next_p[m] = static_cast<std::int64_t>(p);
        }
      }
    }
  }

  std::int64_t best = -1;
  int best_depth = -1;
  for (std::uint64_t m : order) {
    if (!member[m]) continue;
    if (depth_from_p[m] > best_depth ||
        (depth_from_p[m] == best_depth && best >= 0 &&
         m < static_cast<std::uint64_t>(best))) {
      best_depth = depth_from_p[m];
      best = static_cast<std::int64_t>(m);
    }
  }

  StairChain chain;
  if (best < 0) return chain;  // D empty on this domain: no P₀ at all
  std::uint64_t cur = static_cast<std::uint64_t>(best);
  chain.links.push_back(to_relation(cur));
  while (chain.depth < max_depth && next_q[cur] >= 0) {
    cur = static_cast<std::uint64_t>(next_q[cur]);
    chain.links.push_back(to_relation(cur));
    ++chain.depth;
    if (next_p[cur] >= 0) {
      cur = static_cast<std::uint64_t>(next_p[cur]);
      chain.links.push_back(to_relation(cur));
    } else {
      // Trailing member above the last Q, when one exists.
      std::uint64_t comp = full & ~cur;
      std::int64_t trail = -1;
      for (std::uint64_t s = comp; s != 0; s = (s - 1) & comp) {
        std::uint64_t p = cur | s;
        if (member[p] && (trail < 0 || p < static_cast<std::uint64_t>(trail)))
          trail = static_cast<std::int64_t>(p);
      }
      if (trail >= 0) chain.links.push_back(to_relation(static_cast<std::uint64_t>(trail)));
      break;
    }
  }
  return chain;
}

}  // namespace teamcheck
