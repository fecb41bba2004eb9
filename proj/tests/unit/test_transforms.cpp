#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "teamcheck/eval.hpp"
#include "teamcheck/oracle.hpp"
#include "teamcheck/transforms.hpp"

#include "generators.hpp"

#include <numeric>

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

std::vector<Relation> all_relations(int n, int k) {
  auto cells = all_tuples(dom(n), k);
  std::vector<Relation> out;
  for (std::uint64_t mask = 0; mask < (1ull << cells.size()); ++mask) {
    Relation r(k);
    for (std::size_t b = 0; b < cells.size(); ++b)
      if (mask & (1ull << b)) r.insert(cells[b]);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

TEST_CASE("tilde elimination rewrites atoms and nothing else") {
  FormulaPtr a = parse_formula("~ x = y", reg(), true);
  CHECK(structurally_equal(eliminate_tilde_on_literals(a),
                           parse_formula("dia x != y", reg())));

  FormulaPtr b = parse_formula("~ const(x)", reg(), true);
  CHECK(structurally_equal(eliminate_tilde_on_literals(b),
                           parse_formula("!const(x)", reg())));

  FormulaPtr c = parse_formula("~ !const(x)", reg(), true);
  CHECK(structurally_equal(eliminate_tilde_on_literals(c),
                           parse_formula("const(x)", reg())));

  CHECK_THROWS_AS(eliminate_tilde_on_literals(
                      parse_formula("~ (x = y /\\ x = x)", reg())),
                  std::invalid_argument);
}

TEST_CASE("tilde elimination records a connected trace") {
  RewriteTrace trace;
  FormulaPtr f = parse_formula("~ P(x) /\\ ~ const(x)", reg(), true);
  FormulaPtr out = eliminate_tilde_on_literals(f, &trace);
  REQUIRE(trace.size() == 2);
  CHECK(structurally_equal(trace[0].before, f));
  CHECK(structurally_equal(trace[0].after, trace[1].before));
  CHECK(structurally_equal(trace[1].after, out));
}

TEST_CASE("tilde elimination preserves team satisfaction") {
  std::vector<std::string> catalog = {
      "~ x = y",
      "~ P(x)",
      "~ top",
      "~ bot",
      "~ const(x) /\\ x = x",
      "(~ P(x)) \\/ P(x)",
      "dia (~ x = y)",
      "exists z . (~ z = x) /\\ z = z",
      "forall z . (~ const(z)) lor const(z)",
      "~ inc(x;y)",
  };
  EquivOptions opts;
  opts.domain_sizes = {2};
  for (const auto& text : catalog) {
    FormulaPtr phi = parse_formula(text, reg(), true);
    FormulaPtr out = eliminate_tilde_on_literals(phi);
    CHECK(is_tilde0(*out));
    auto fv = free_variables(*phi);
    std::vector<std::string> vars(fv.begin(), fv.end());
    auto ce = formulas_equivalent(phi, out, reg(), vars, opts);
    CAPTURE(text);
    CHECK_FALSE(ce.has_value());
  }
}

TEST_CASE("global disjunction pulls out of every connective") {
  FormulaPtr f = parse_formula("(P($a) lor Q($a)) /\\ R($a,$a)", reg());
  auto parts = pull_out_global_or(f);
  REQUIRE(parts.size() == 2);
  CHECK(structurally_equal(parts[0], parse_formula("P($a) /\\ R($a,$a)", reg())));
  CHECK(structurally_equal(parts[1], parse_formula("Q($a) /\\ R($a,$a)", reg())));

  FormulaPtr g = parse_formula("exists v . P(v) lor Q(v)", reg());
  auto gparts = pull_out_global_or(g);
  REQUIRE(gparts.size() == 2);
  CHECK(structurally_equal(gparts[0], parse_formula("exists v . P(v)", reg())));
  CHECK(structurally_equal(gparts[1], parse_formula("exists v . Q(v)", reg())));

  FormulaPtr h = parse_formula("exists v . P(v) /\\ Q(v)", reg());
  auto hparts = pull_out_global_or(h);
  REQUIRE(hparts.size() == 1);
  CHECK(structurally_equal(hparts[0], h));
}

TEST_CASE("pulled-out sentences are lor-free and jointly equivalent") {
  std::vector<std::string> catalog = {
      "(exists x . P(x) lor Q(x)) /\\ (forall y . P(y) lor Q(y))",
      "forall x . (P(x) lor Q(x)) \\/ P(x)",
      "dia (exists x . P(x) lor const(x))",
      "exists x y . (=(x;y) lor inc(x;y)) /\\ P(x)",
  };
  EquivOptions opts;
  opts.domain_sizes = {2};
  for (const auto& text : catalog) {
    FormulaPtr phi = parse_formula(text, reg());
    auto parts = pull_out_global_or(phi);
    for (const auto& p : parts) {
      std::function<bool(const Formula&)> lor_free = [&](const Formula& f) {
        if (f.kind == FormulaKind::GlobalOr) return false;
        if (f.left && !lor_free(*f.left)) return false;
        if (f.right && !lor_free(*f.right)) return false;
        return true;
      };
      CHECK(lor_free(*p));
    }
    FormulaPtr joined = Formula::global_or_all(parts);
    CAPTURE(text);
    CHECK_FALSE(formulas_equivalent(phi, joined, reg(), {}, opts).has_value());
  }
}

TEST_CASE("constancy elimination produces the witness prefix") {
  FormulaPtr f = parse_formula("exists x . const(x) /\\ P(x)", reg());
  FormulaPtr out = eliminate_constancy(f);
  REQUIRE(out->kind == FormulaKind::Exists);
  CHECK(out->bound.size() == 1);
  CHECK(structurally_equal(
      out, parse_formula("exists w_x . exists x . x = w_x /\\ P(x)", reg())));

  FormulaPtr plain = parse_formula("exists x . P(x)", reg());
  CHECK(structurally_equal(eliminate_constancy(plain), plain));

  CHECK_THROWS_AS(eliminate_constancy(parse_formula("exists x . !const(x)", reg())),
                  std::invalid_argument);
  CHECK_THROWS_AS(eliminate_constancy(parse_formula("const(x)", reg())),
                  std::invalid_argument);
}

TEST_CASE("constancy elimination preserves sentence truth on downwards-closed atoms") {
  std::vector<std::string> catalog = {
      "exists x . const(x) /\\ P(x)",
      "exists x y . const(x,y) /\\ R(x,y)",
      "forall x . exists y . const(y) /\\ (R(x,y) \\/ x = y)",
      "exists x . exists y . const(x) /\\ const(y) /\\ exc(x;y)",
      "exists x y . =(x;y) /\\ const(x)",
      "(exists x . const(x) /\\ P(x)) lor (forall x . P(x))",
      "dia (exists x . const(x) /\\ !P(x))",
  };
  for (const auto& text : catalog) {
    FormulaPtr phi = parse_formula(text, reg());
    FormulaPtr out = eliminate_constancy(phi);
    SignatureInfo sig = collect_signature(*phi);
    bool disagreed = false;
    enumerate_models(sig, {2, 3}, 1u << 20, [&](const Model& m) {
      EvalContext ctx(m, reg());
      if (ctx.sentence_truth(phi) != ctx.sentence_truth(out)) disagreed = true;
      return !disagreed;
    });
    CAPTURE(text);
    CHECK_FALSE(disagreed);
  }
}

TEST_CASE("constancy elimination is documented to need downwards-closed contexts") {
  // With a totality atom in scope the multi-valued witness team can cheat:
  // the transform is not truth-preserving here, which is why the elimination
  // is advertised for downwards-closed atom sets only.
  Model m = Model::with_size(2);
  FormulaPtr phi = parse_formula("exists x . const(x) /\\ all(x)", reg());
  FormulaPtr out = eliminate_constancy(phi);
  CHECK_FALSE(sentence_truth(m, reg(), phi));
  CHECK(sentence_truth(m, reg(), out));
}

TEST_CASE("chi formula matches the downward-closure atom") {
  struct Case {
    DependencyPtr dep;
    std::string name;
  };
  std::vector<Case> cases = {
      {make_builtin(BuiltinDep::Totality, {1}), "all"},
      {make_builtin(BuiltinDep::Constancy, {1}), "const"},
      {make_table_from_predicate("exactly_one", 1, {2, 3},
                                 [](int, const Relation& r) { return r.size() == 1; }),
       "exactly_one"},
      {make_builtin(BuiltinDep::NonConstancy, {1}), "nonconst"},
  };
  for (const auto& c : cases) {
    DependencyRegistry r;
    if (c.dep->kind() == DependencyKind::Table) r.register_dependency(c.dep);
    auto down = std::make_shared<Dependency>(
        "target_down", c.dep->arity(), DependencyKind::Derived,
        [base = downward_closure(c.dep)](const std::vector<Element>& d,
                                         const Relation& rel) {
          return base->member(d, rel);
        });
    r.register_dependency(down);
    ChiForm chi = chi_downclosure(*c.dep, {"x"});
    FormulaPtr atom = Formula::dep_atom(down->atom_over({"x"}));

    for (int n = 2; n <= 3; ++n) {
      Model m = Model::with_size(n);
      EvalContext ctx(m, r);
      CHECK(ctx.sentence_truth(chi.side_condition));
      enumerate_teams(m, {"x"}, SIZE_MAX, [&](const Team& t) {
        CAPTURE(c.name);
        CAPTURE(n);
        CAPTURE(t.to_text());
        CHECK(ctx.team_eval(t, chi.guarded) == ctx.team_eval(t, atom));
        return true;
      });
    }
  }
}

TEST_CASE("chi guard is documented piecewise when the side condition fails") {
  // A dependency with no members at all: the guarded form still accepts the
  // empty team, while the closure atom rejects everything.
  auto none = make_table("nothing", 1, {{2, {}}, {3, {}}});
  DependencyRegistry r;
  r.register_dependency(none);
  auto down = std::make_shared<Dependency>(
      "nothing_down", 1, DependencyKind::Derived,
      [base = downward_closure(none)](const std::vector<Element>& d, const Relation& rel) {
        return base->member(d, rel);
      });
  r.register_dependency(down);
  ChiForm chi = chi_downclosure(*none, {"x"});
  Model m = Model::with_size(2);
  EvalContext ctx(m, r);
  CHECK_FALSE(ctx.sentence_truth(chi.side_condition));
  Team empty({"x"});
  CHECK(ctx.team_eval(empty, chi.guarded));
  CHECK_FALSE(ctx.team_eval(empty, Formula::dep_atom(down->atom_over({"x"}))));
}

TEST_CASE("chi picks fresh variables when x collides with p and q") {
  auto c = make_builtin(BuiltinDep::Constancy, {2});
  ChiForm chi = chi_downclosure(*c, {"p", "q"});
  auto fv = free_variables(*chi.guarded);
  CHECK(fv == std::set<std::string>{"p", "q"});
  DependencyRegistry r;
  CHECK_NOTHROW(parse_formula(print_formula(chi.guarded), r));
}

TEST_CASE("relativized totality formula agrees with the atom") {
  FormulaPtr formula = relativize_all_formula({"x"}, "P");
  FormulaPtr atom = parse_formula("all(x)@P", reg());
  EquivOptions opts;
  opts.domain_sizes = {3};
  auto ce = formulas_equivalent(atom, formula, reg(), {"x"}, opts);
  CHECK_FALSE(ce.has_value());
}

TEST_CASE("normal form evaluation on the running example") {
  NormalForm nf = NormalForm::parse(
      "nf arity 1\n"
      "block:\n"
      "psi = top\n"
      "theta = x1 = y1\n"
      "xi = bot\n");
  // Accepts exactly the singletons.
  for (const auto& rel : all_relations(2, 1))
    CHECK(nf_eval(dom(2), rel, nf) == (rel.size() == 1));
}

TEST_CASE("normal form with zero blocks rejects everything") {
  NormalForm nf;
  nf.arity = 1;
  nf.xs = {"x1"};
  for (const auto& rel : all_relations(2, 1)) CHECK_FALSE(nf_eval(dom(2), rel, nf));
}

TEST_CASE("zero-ary style block depends only on the domain size") {
  NormalForm nf = NormalForm::parse(
      "nf arity 1\n"
      "block:\n"
      "psi = exists p q . (p != q /\\ (forall u . u = p \\/ u = q))\n");
  for (const auto& rel : all_relations(2, 1)) CHECK(nf_eval(dom(2), rel, nf));
  for (const auto& rel : all_relations(3, 1)) CHECK_FALSE(nf_eval(dom(3), rel, nf));
}

TEST_CASE("normal form text round trip and validation") {
  NormalForm nf = NormalForm::parse(
      "nf arity 2; block:; psi = top; theta = x1 = y1 /\\ x2 = y1; xi = x1 = x2");
  CHECK(nf.blocks.size() == 1);
  CHECK(nf.blocks[0].thetas[0].params == std::vector<std::string>{"y1"});
  NormalForm again = NormalForm::parse(nf.to_text());
  CHECK(again.to_text() == nf.to_text());

  CHECK_THROWS_AS(NormalForm::parse("nf arity 1\nblock:\ntheta = P(x1)\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(NormalForm::parse("nf arity 1\nblock:\npsi = x1 = x1\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(NormalForm::parse("block:\n"), std::invalid_argument);
}

namespace {

void check_translation(const NormalForm& nf, const std::vector<std::string>& vs,
                       const std::vector<int>& sizes) {
  DependencyRegistry r;
  auto direct = nf_to_team_formula(nf, vs);
  auto comp = nf_to_team_formula_complement(nf, vs);
  for (const auto& d : direct.zeroary) r.register_dependency(d);
  for (const auto& d : comp.zeroary) r.register_dependency(d);
  for (int n : sizes) {
    Model m = Model::with_size(n);
    EvalContext ctx(m, r);
    enumerate_teams(m, vs, SIZE_MAX, [&](const Team& t) {
      bool want = nf_eval(m.domain(), project(t, vs), nf);
      CAPTURE(nf.to_text());
      CAPTURE(n);
      CAPTURE(t.to_text());
      CHECK(ctx.team_eval(t, direct.formula) == want);
      CHECK(ctx.team_eval(t, comp.formula) == !want);
      return true;
    });
  }
}

}  // namespace

TEST_CASE("team translation of the singleton normal form") {
  NormalForm nf = NormalForm::parse(
      "nf arity 1\nblock:\npsi = top\ntheta = x1 = y1\nxi = bot\n");
  DependencyRegistry r;
  auto tr = nf_to_team_formula(nf, {"v"});
  for (const auto& d : tr.zeroary) r.register_dependency(d);
  Model m = Model::with_size(2);
  EvalContext ctx(m, r);
  enumerate_teams(m, {"v"}, SIZE_MAX, [&](const Team& t) {
    CHECK(ctx.team_eval(t, tr.formula) == (project(t, {"v"}).size() == 1));
    return true;
  });
  check_translation(nf, {"v"}, {2, 3});
}

TEST_CASE("zero-block and vacuous-theta translations") {
  NormalForm none;
  none.arity = 1;
  none.xs = {"x1"};
  auto tr = nf_to_team_formula(none, {"v"});
  auto comp = nf_to_team_formula_complement(none, {"v"});
  Model m = Model::with_size(2);
  DependencyRegistry r;
  for (const auto& d : tr.zeroary) r.register_dependency(d);
  for (const auto& d : comp.zeroary) r.register_dependency(d);
  EvalContext ctx(m, r);
  enumerate_teams(m, {"v"}, SIZE_MAX, [&](const Team& t) {
    CHECK_FALSE(ctx.team_eval(t, tr.formula));
    CHECK(ctx.team_eval(t, comp.formula));
    return true;
  });

  NormalForm trivial = NormalForm::parse("nf arity 1\nblock:\ntheta = top\n");
  check_translation(trivial, {"v"}, {2});
}

TEST_CASE("complement translation equals the contradictory negation pointwise") {
  std::vector<std::string> nfs = {
      "nf arity 1\nblock:\npsi = top\ntheta = x1 = y1\nxi = bot\n",
      "nf arity 1\nblock:\ntheta = x1 != y1\n",
      "nf arity 1\nblock:\nxi = x1 = z1\n",
      "nf arity 1\nblock:\npsi = exists p q . p != q\n"
      "block:\ntheta = x1 = y1\n",
      "nf arity 2\nblock:\ntheta = x1 = y1 /\\ x2 = y1\n",
      "nf arity 2\nblock:\nxi = x1 = x2\n",
      "nf arity 1\nblock:\ntheta = x1 = y1 \\/ x1 = y2\n",
      "nf arity 1\nblock:\ntheta = top\nxi = top\n",
      "nf arity 1\nblock:\npsi = forall u w . u = w\n",
      "nf arity 1\nblock:\ntheta = exists u . u = y1 /\\ u != x1\n",
  };
  const std::vector<std::string> pool = {"v1", "v2"};
  for (const auto& text : nfs) {
    NormalForm nf = NormalForm::parse(text);
    std::vector<std::string> vs(pool.begin(), pool.begin() + nf.xs.size());
    check_translation(nf, vs, {2});
  }
}

TEST_CASE("translation renames parameters that collide with the atom tuple") {
  NormalForm nf = NormalForm::parse("nf arity 1\nblock:\ntheta = x1 = y1\n");
  check_translation(nf, {"y1"}, {2});
  auto tr = nf_to_team_formula(nf, {"y1"});
  auto fv = free_variables(*tr.formula);
  CHECK(fv == std::set<std::string>{"y1"});
}
