// Finite first-order models, assignments, teams, and the team operations
// consumed by the lax team-semantics rules.
//
// Elements are small integers internally; models carry the external names.
// Teams keep their variable list sorted and their rows in a std::set, so a
// team value is always in canonical form and can be used as a cache key.

#ifndef TEAMCHECK_MODEL_HPP
#define TEAMCHECK_MODEL_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace teamcheck {

using Element = int;
using Tuple = std::vector<Element>;

// k-ary relation: a set of k-tuples. Uniform arity is enforced on insert.
class Relation {
 public:
  Relation() : arity_(0) {}
  explicit Relation(int arity) : arity_(arity) {
    if (arity < 0) throw std::invalid_argument("relation arity must be >= 0");
  }
  Relation(int arity, std::initializer_list<Tuple> rows) : Relation(arity) {
    for (const auto& t : rows) insert(t);
  }

  int arity() const { return arity_; }
  const std::set<Tuple>& tuples() const { return tuples_; }
  std::size_t size() const { return tuples_.size(); }
  bool empty() const { return tuples_.empty(); }
  bool contains(const Tuple& t) const { return tuples_.count(t) != 0; }

  void insert(const Tuple& t) {
    if (static_cast<int>(t.size()) != arity_)
      throw std::invalid_argument("tuple arity mismatch");
    tuples_.insert(t);
  }
  void erase(const Tuple& t) { tuples_.erase(t); }

  bool subset_of(const Relation& other) const;

  // Canonical text, with elements rendered through `name` (defaults to the
  // numeric value): {(0,1),(1,0)}
  std::string to_text(
      const std::function<std::string(Element)>& name = nullptr) const;

  auto operator<=>(const Relation&) const = default;

 private:
  int arity_;
  std::set<Tuple> tuples_;
};

// Total map variable -> element. Ordered so that iteration is canonical.
using Assignment = std::map<std::string, Element>;

// Finite first-order structure. Domains are 0..size-1; names are cosmetic.
class Model {
 public:
  explicit Model(std::vector<std::string> element_names);
  static Model with_size(int n);  // elements named e0, e1, ...

  int size() const { return static_cast<int>(names_.size()); }
  std::vector<Element> domain() const;
  const std::string& element_name(Element e) const;
  std::optional<Element> element_by_name(const std::string& name) const;

  void add_relation(const std::string& name, Relation r);
  const Relation* relation(const std::string& name) const;
  const std::map<std::string, Relation>& relations() const { return relations_; }

  void set_constant(const std::string& name, Element e);
  std::optional<Element> constant(const std::string& name) const;
  const std::map<std::string, Element>& constants() const { return constants_; }

  // Elements of a unary relation, sorted. Used for relativized atoms.
  std::vector<Element> predicate_extension(const std::string& name) const;

  // Text format:
  //   domain: a b c
  //   relation R/2: (a,b) (b,c)
  //   constant c0 = a
  //   predicate P: a b
  static Model parse(const std::string& text);
  std::string to_text() const;

 private:
  std::vector<std::string> names_;
  std::map<std::string, Element> index_;
  std::map<std::string, Relation> relations_;
  std::map<std::string, Element> constants_;
};

// A team: a set of assignments sharing one variable domain. Variables are
// kept sorted; each row is a tuple aligned with vars().
class Team {
 public:
  Team() = default;
  explicit Team(std::vector<std::string> vars);

  // The team {∅} over no variables (sentence evaluation starts here).
  static Team singleton_empty();

  const std::vector<std::string>& vars() const { return vars_; }
  const std::set<Tuple>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  bool has_var(const std::string& v) const;
  int var_index(const std::string& v) const;  // -1 when absent

  void insert_row(Tuple row);
  void insert_assignment(const Assignment& s);
  Assignment row_to_assignment(const Tuple& row) const;

  // Text format:
  //   vars: x y
  //   row: a b
  static Team parse(const std::string& text, const Model& m);
  std::string to_text(const Model& m) const;
  std::string to_text() const;  // numeric elements

  auto operator<=>(const Team&) const = default;

 private:
  std::vector<std::string> vars_;  // sorted, unique
  std::set<Tuple> rows_;
};

// X(v̄): the |v̄|-ary relation {s(v̄) : s ∈ X}. Variables may repeat.
Relation project(const Team& x, const std::vector<std::string>& vars);

// Restriction of the team to a subset of its variables (rows deduplicate).
Team restrict_team(const Team& x, const std::vector<std::string>& vars);

// X[M^{|v̄|}/v̄]: every row extended by every tuple over the domain.
Team duplicate(const Team& x, const Model& m, const std::vector<std::string>& vars);

// {s[m̄/v̄] : s ∈ X} for one fixed tuple m̄.
Team fix_tuple(const Team& x, const Tuple& values, const std::vector<std::string>& vars);

// All teams X[H/v̄] for H: X -> P(M^{|v̄|}) \ {∅}, enumerated without
// duplicates as the subteams of X[M^{|v̄|}/v̄] that keep every original row
// covered. The visitor returns false to stop; the function returns false if
// it was stopped early.
bool supplement_subteams(const Team& x, const Model& m,
                         const std::vector<std::string>& vars,
                         const std::function<bool(const Team&)>& visit);

// All tuples over `domain` of length k, in lexicographic order.
std::vector<Tuple> all_tuples(const std::vector<Element>& domain, int k);

}  // namespace teamcheck

#endif  // TEAMCHECK_MODEL_HPP
