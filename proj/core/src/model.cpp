#include "teamcheck/model.hpp"

#include <algorithm>
#include <sstream>

namespace teamcheck {

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

bool Relation::subset_of(const Relation& other) const {
  if (arity_ != other.arity_) return false;
  return std::includes(other.tuples_.begin(), other.tuples_.end(),
                       tuples_.begin(), tuples_.end());
}

std::string Relation::to_text(
    const std::function<std::string(Element)>& name) const {
  std::ostringstream out;
  out << "{";
  bool first_tuple = true;
  for (const auto& t : tuples_) {
    if (!first_tuple) out << ",";
    first_tuple = false;
    out << "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i) out << ",";
      out << (name ? name(t[i]) : std::to_string(t[i]));
    }
    out << ")";
  }
  out << "}";
  return out.str();
}

Model::Model(std::vector<std::string> element_names)
    : names_(std::move(element_names)) {
  if (names_.size() < 2)
    throw std::invalid_argument("model domains must have at least two elements");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!index_.emplace(names_[i], static_cast<Element>(i)).second)
      throw std::invalid_argument("duplicate element name: " + names_[i]);
  }
}

Model Model::with_size(int n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (int i = 0; i < n; ++i) names.push_back("e" + std::to_string(i));
  return Model(std::move(names));
}

std::vector<Element> Model::domain() const {
  std::vector<Element> d(names_.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = static_cast<Element>(i);
  return d;
}

const std::string& Model::element_name(Element e) const {
  if (e < 0 || e >= size()) throw std::out_of_range("element out of range");
  return names_[e];
}

std::optional<Element> Model::element_by_name(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void Model::add_relation(const std::string& name, Relation r) {
  for (const auto& t : r.tuples())
    for (Element e : t)
      if (e < 0 || e >= size())
        throw std::invalid_argument("relation tuple leaves the domain: " + name);
  relations_[name] = std::move(r);
}

const Relation* Model::relation(const std::string& name) const {
  auto it = relations_.find(name);
  return it == relations_.end() ? nullptr : &it->second;
}

void Model::set_constant(const std::string& name, Element e) {
  if (e < 0 || e >= size())
    throw std::invalid_argument("constant outside the domain: " + name);
  constants_[name] = e;
}

std::optional<Element> Model::constant(const std::string& name) const {
  auto it = constants_.find(name);
  if (it == constants_.end()) return std::nullopt;
  return it->second;
}

std::vector<Element> Model::predicate_extension(const std::string& name) const {
  const Relation* r = relation(name);
  if (!r) throw std::invalid_argument("unknown predicate: " + name);
  if (r->arity() != 1)
    throw std::invalid_argument("predicate must be unary: " + name);
  std::vector<Element> out;
  for (const auto& t : r->tuples()) out.push_back(t[0]);
  return out;
}

Model Model::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::optional<Model> model;
  auto need_model = [&]() -> Model& {
    if (!model) throw std::invalid_argument("model file must start with a domain line");
    return *model;
  };
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = strip(line);
    if (t.empty() || t[0] == '#') continue;
    auto fail = [&](const std::string& msg) -> void {
      throw std::invalid_argument("model line " + std::to_string(lineno) + ": " + msg);
    };
    if (t.rfind("domain:", 0) == 0) {
      if (model) fail("duplicate domain line");
      auto names = split_ws(t.substr(7));
      if (names.size() < 2) fail("domain needs at least two elements");
      model.emplace(names);
    } else if (t.rfind("relation", 0) == 0) {
      std::string rest = strip(t.substr(8));
      std::size_t slash = rest.find('/');
      std::size_t colon = rest.find(':');
      if (slash == std::string::npos || colon == std::string::npos || slash > colon)
        fail("expected `relation NAME/ARITY: (..) (..)`");
      std::string name = strip(rest.substr(0, slash));
      int arity = 0;
      try {
        arity = std::stoi(rest.substr(slash + 1, colon - slash - 1));
      } catch (...) {
        fail("bad arity");
      }
      Relation r(arity);
      std::string body = rest.substr(colon + 1);
      std::size_t pos = 0;
      while (true) {
        std::size_t open = body.find('(', pos);
        if (open == std::string::npos) break;
        std::size_t close = body.find(')', open);
        if (close == std::string::npos) fail("unterminated tuple");
        std::string inner = body.substr(open + 1, close - open - 1);
        for (char& c : inner)
          if (c == ',') c = ' ';
        Tuple tup;
        for (const auto& nm : split_ws(inner)) {
          auto e = need_model().element_by_name(nm);
          if (!e) fail("unknown element: " + nm);
          tup.push_back(*e);
        }
        if (static_cast<int>(tup.size()) != arity) fail("tuple arity mismatch");
        r.insert(tup);
        pos = close + 1;
      }
      need_model().add_relation(name, std::move(r));
    } else if (t.rfind("predicate", 0) == 0) {
      std::string rest = strip(t.substr(9));
      std::size_t colon = rest.find(':');
      if (colon == std::string::npos) fail("expected `predicate NAME: a b`");
      std::string name = strip(rest.substr(0, colon));
      Relation r(1);
      for (const auto& nm : split_ws(rest.substr(colon + 1))) {
        auto e = need_model().element_by_name(nm);
        if (!e) fail("unknown element: " + nm);
        r.insert({*e});
      }
      need_model().add_relation(name, std::move(r));
    } else if (t.rfind("constant", 0) == 0) {
      std::string rest = strip(t.substr(8));
      std::size_t eq = rest.find('=');
      if (eq == std::string::npos) fail("expected `constant NAME = element`");
      std::string name = strip(rest.substr(0, eq));
      std::string val = strip(rest.substr(eq + 1));
      auto e = need_model().element_by_name(val);
      if (!e) fail("unknown element: " + val);
      need_model().set_constant(name, *e);
    } else {
      fail("unrecognized line: " + t);
    }
  }
  if (!model) throw std::invalid_argument("empty model file");
  return *model;
}

std::string Model::to_text() const {
  std::ostringstream out;
  out << "domain:";
  for (const auto& n : names_) out << " " << n;
  out << "\n";
  for (const auto& [name, r] : relations_) {
    if (r.arity() == 1) {
      out << "predicate " << name << ":";
      for (const auto& t : r.tuples()) out << " " << names_[t[0]];
      out << "\n";
      continue;
    }
    out << "relation " << name << "/" << r.arity() << ":";
    for (const auto& t : r.tuples()) {
      out << " (";
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out << ",";
        out << names_[t[i]];
      }
      out << ")";
    }
    out << "\n";
  }
  for (const auto& [name, e] : constants_) {
    out << "constant " << name << " = " << names_[e] << "\n";
  }
  return out.str();
}

Team::Team(std::vector<std::string> vars) : vars_(std::move(vars)) {
  std::sort(vars_.begin(), vars_.end());
  auto dup = std::adjacent_find(vars_.begin(), vars_.end());
  if (dup != vars_.end())
    throw std::invalid_argument("duplicate team variable: " + *dup);
}

Team Team::singleton_empty() {
  Team t;
  t.rows_.insert(Tuple{});
  return t;
}

bool Team::has_var(const std::string& v) const {
  return std::binary_search(vars_.begin(), vars_.end(), v);
}

int Team::var_index(const std::string& v) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
  if (it == vars_.end() || *it != v) return -1;
  return static_cast<int>(it - vars_.begin());
}

void Team::insert_row(Tuple row) {
  if (row.size() != vars_.size())
    throw std::invalid_argument("row width does not match team variables");
  rows_.insert(std::move(row));
}

void Team::insert_assignment(const Assignment& s) {
  Tuple row;
  row.reserve(vars_.size());
  for (const auto& v : vars_) {
    auto it = s.find(v);
    if (it == s.end())
      throw std::invalid_argument("assignment missing variable: " + v);
    row.push_back(it->second);
  }
  rows_.insert(std::move(row));
}

Assignment Team::row_to_assignment(const Tuple& row) const {
  Assignment s;
  for (std::size_t i = 0; i < vars_.size(); ++i) s[vars_[i]] = row[i];
  return s;
}

Team Team::parse(const std::string& text, const Model& m) {
  std::istringstream in(text);
  std::string line;
  std::optional<Team> team;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = strip(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.rfind("vars:", 0) == 0) {
      if (team) throw std::invalid_argument("duplicate vars line");
      team.emplace(split_ws(t.substr(5)));
    } else if (t.rfind("row:", 0) == 0) {
      if (!team) throw std::invalid_argument("team file must start with vars:");
      Tuple row;
      for (const auto& nm : split_ws(t.substr(4))) {
        auto e = m.element_by_name(nm);
        if (!e)
          throw std::invalid_argument("team line " + std::to_string(lineno) +
                                      ": unknown element " + nm);
        row.push_back(*e);
      }
      team->insert_row(std::move(row));
    } else {
      throw std::invalid_argument("team line " + std::to_string(lineno) +
                                  ": unrecognized line");
    }
  }
  if (!team) throw std::invalid_argument("empty team file");
  return *team;
}

std::string Team::to_text(const Model& m) const {
  std::ostringstream out;
  out << "vars:";
  for (const auto& v : vars_) out << " " << v;
  out << "\n";
  for (const auto& row : rows_) {
    out << "row:";
    for (Element e : row) out << " " << m.element_name(e);
    out << "\n";
  }
  return out.str();
}

std::string Team::to_text() const {
  std::ostringstream out;
  out << "vars:";
  for (const auto& v : vars_) out << " " << v;
  out << "\n";
  for (const auto& row : rows_) {
    out << "row:";
    for (Element e : row) out << " " << e;
    out << "\n";
  }
  return out.str();
}

Relation project(const Team& x, const std::vector<std::string>& vars) {
  std::vector<int> idx;
  idx.reserve(vars.size());
  for (const auto& v : vars) {
    int i = x.var_index(v);
    if (i < 0) throw std::invalid_argument("projection variable not in team: " + v);
    idx.push_back(i);
  }
  Relation r(static_cast<int>(vars.size()));
  for (const auto& row : x.rows()) {
    Tuple t;
    t.reserve(idx.size());
    for (int i : idx) t.push_back(row[i]);
    r.insert(std::move(t));
  }
  return r;
}

Team restrict_team(const Team& x, const std::vector<std::string>& vars) {
  std::vector<std::string> kept;
  for (const auto& v : vars)
    if (x.has_var(v)) kept.push_back(v);
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  Team out(kept);
  std::vector<int> idx;
  for (const auto& v : out.vars()) idx.push_back(x.var_index(v));
  for (const auto& row : x.rows()) {
    Tuple t;
    t.reserve(idx.size());
    for (int i : idx) t.push_back(row[i]);
    out.insert_row(std::move(t));
  }
  return out;
}

namespace {

// Target variable layout for extending dom(X) with v̄ (which may overlap).
struct ExtensionLayout {
  std::vector<std::string> vars;  // sorted union
  std::vector<int> from_old;      // target index -> source index or -1
  std::vector<int> from_new;      // target index -> position in v̄ or -1
};

ExtensionLayout extension_layout(const Team& x, const std::vector<std::string>& vs) {
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (vs[i] == vs[j])
        throw std::invalid_argument("quantified variables must be pairwise distinct");
  ExtensionLayout lay;
  lay.vars = x.vars();
  for (const auto& v : vs)
    if (!x.has_var(v)) lay.vars.push_back(v);
  std::sort(lay.vars.begin(), lay.vars.end());
  lay.from_old.assign(lay.vars.size(), -1);
  lay.from_new.assign(lay.vars.size(), -1);
  for (std::size_t i = 0; i < lay.vars.size(); ++i) {
    int src = x.var_index(lay.vars[i]);
    lay.from_old[i] = src;
    for (std::size_t k = 0; k < vs.size(); ++k)
      if (vs[k] == lay.vars[i]) lay.from_new[i] = static_cast<int>(k);
  }
  return lay;
}

Tuple extend_row(const ExtensionLayout& lay, const Tuple& row, const Tuple& values) {
  Tuple out(lay.vars.size());
  for (std::size_t i = 0; i < lay.vars.size(); ++i) {
    if (lay.from_new[i] >= 0)
      out[i] = values[lay.from_new[i]];
    else
      out[i] = row[lay.from_old[i]];
  }
  return out;
}

}  // namespace

Team duplicate(const Team& x, const Model& m, const std::vector<std::string>& vars) {
  ExtensionLayout lay = extension_layout(x, vars);
  auto tuples = all_tuples(m.domain(), static_cast<int>(vars.size()));
  Team out(lay.vars);
  for (const auto& row : x.rows())
    for (const auto& t : tuples) out.insert_row(extend_row(lay, row, t));
  return out;
}

Team fix_tuple(const Team& x, const Tuple& values, const std::vector<std::string>& vars) {
  if (values.size() != vars.size())
    throw std::invalid_argument("fix_tuple: value/variable arity mismatch");
  ExtensionLayout lay = extension_layout(x, vars);
  Team out(lay.vars);
  for (const auto& row : x.rows()) out.insert_row(extend_row(lay, row, values));
  return out;
}

bool supplement_subteams(const Team& x, const Model& m,
                         const std::vector<std::string>& vars,
                         const std::function<bool(const Team&)>& visit) {
  ExtensionLayout lay = extension_layout(x, vars);
  auto tuples = all_tuples(m.domain(), static_cast<int>(vars.size()));

  // Orbits: rows of X collapsed over the overwritten variables. Every orbit
  // picks an independent nonempty subset of extension tuples.
  std::vector<std::string> kept;
  for (const auto& v : x.vars()) {
    bool overwritten = false;
    for (const auto& q : vars) overwritten |= (q == v);
    if (!overwritten) kept.push_back(v);
  }
  std::set<Tuple> orbit_set;
  std::vector<int> kept_idx;
  for (const auto& v : kept) kept_idx.push_back(x.var_index(v));
  for (const auto& row : x.rows()) {
    Tuple key;
    key.reserve(kept_idx.size());
    for (int i : kept_idx) key.push_back(row[i]);
    orbit_set.insert(std::move(key));
  }
  // One representative full row per orbit (extension ignores overwritten slots
  // only through `values`, so any representative works).
  std::vector<Tuple> reps;
  {
    std::set<Tuple> seen;
    for (const auto& row : x.rows()) {
      Tuple key;
      for (int i : kept_idx) key.push_back(row[i]);
      if (seen.insert(key).second) reps.push_back(row);
    }
  }

  const std::size_t n = tuples.size();
  if (n > 20)
    throw std::domain_error("supplement enumeration too large (extension space > 2^20)");
  const std::uint64_t subsets = (1ull << n) - 1;  // nonempty subsets per orbit

  std::vector<std::uint64_t> choice(reps.size(), 1);
  Team base(lay.vars);

  // DFS over per-orbit nonempty subsets.
  std::function<bool(std::size_t, Team&)> rec = [&](std::size_t k, Team& acc) -> bool {
    if (k == reps.size()) return visit(acc);
    for (std::uint64_t mask = 1; mask <= subsets; ++mask) {
      Team next = acc;
      for (std::size_t b = 0; b < n; ++b)
        if (mask & (1ull << b)) next.insert_row(extend_row(lay, reps[k], tuples[b]));
      if (!rec(k + 1, next)) return false;
    }
    return true;
  };
  Team acc(lay.vars);
  return rec(0, acc);
}

std::vector<Tuple> all_tuples(const std::vector<Element>& domain, int k) {
  std::vector<Tuple> out;
  if (k == 0) {
    out.push_back(Tuple{});
    return out;
  }
  if (domain.empty()) return out;
  Tuple cur(k, domain[0]);
  std::vector<int> pos(k, 0);
  while (true) {
    for (int i = 0; i < k; ++i) cur[i] = domain[pos[i]];
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && pos[i] + 1 == static_cast<int>(domain.size())) pos[i--] = 0;
    if (i < 0) break;
    ++pos[i];
  }
  return out;
}

}  // namespace teamcheck
