#include "teamcheck/eval.hpp"
#include "teamcheck/oracle.hpp"
#include "teamcheck/transforms.hpp"

#include <benchmark/benchmark.h>

using namespace teamcheck;

namespace {

DependencyRegistry& reg() {
  static DependencyRegistry r;
  return r;
}

void BM_TeamEvalDependence(benchmark::State& state) {
  Model m = Model::with_size(static_cast<int>(state.range(0)));
  FormulaPtr phi = parse_formula("forall x . exists y . =(x;y) /\\ x != y", reg());
  for (auto _ : state) {
    EvalContext ctx(m, reg());
    benchmark::DoNotOptimize(ctx.sentence_truth(phi));
  }
}
BENCHMARK(BM_TeamEvalDependence)->Arg(2)->Arg(3)->Arg(4);

void BM_TensorCover(benchmark::State& state) {
  Model m = Model::with_size(2);
  FormulaPtr phi = parse_formula("const(x) \\/ const(x) \\/ const(x)", reg());
  Team t({"x"});
  t.insert_row({0});
  t.insert_row({1});
  EvalOptions pedantic = EvalOptions::pedantic();
  for (auto _ : state) {
    benchmark::DoNotOptimize(team_eval(m, reg(), t, phi, pedantic));
  }
}
BENCHMARK(BM_TensorCover);

void BM_MaximalRelations(benchmark::State& state) {
  auto d = make_builtin(BuiltinDep::FunctionalDependence, {1, 1});
  std::vector<Element> dom;
  for (int i = 0; i < state.range(0); ++i) dom.push_back(i);
  for (auto _ : state) {
    benchmark::DoNotOptimize(maximal_relations(*d, dom));
  }
}
BENCHMARK(BM_MaximalRelations)->Arg(2)->Arg(3)->Arg(4);

void BM_StairSearchEven(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  auto even = make_table_from_predicate(
      "even_card", 1, {n}, [](int, const Relation& r) { return r.size() % 2 == 0; });
  std::vector<Element> dom;
  for (int i = 0; i < n; ++i) dom.push_back(i);
  for (auto _ : state) {
    benchmark::DoNotOptimize(stair_search(*even, dom, 16));
  }
}
BENCHMARK(BM_StairSearchEven)->Arg(4)->Arg(6)->Arg(8);

void BM_NfTranslationRoundTrip(benchmark::State& state) {
  NormalForm nf = NormalForm::parse(
      "nf arity 1\nblock:\npsi = top\ntheta = x1 = y1\nxi = bot\n");
  Model m = Model::with_size(3);
  for (auto _ : state) {
    DependencyRegistry r;
    auto tr = nf_to_team_formula(nf, {"v"});
    for (const auto& d : tr.zeroary) r.register_dependency(d);
    EvalContext ctx(m, r);
    bool all_match = true;
    enumerate_teams(m, {"v"}, SIZE_MAX, [&](const Team& t) {
      all_match &= ctx.team_eval(t, tr.formula) ==
                   nf_eval(m.domain(), project(t, {"v"}), nf);
      return true;
    });
    benchmark::DoNotOptimize(all_match);
  }
}
BENCHMARK(BM_NfTranslationRoundTrip);

}  // namespace

BENCHMARK_MAIN();
