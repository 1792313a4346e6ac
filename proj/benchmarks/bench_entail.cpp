#include <benchmark/benchmark.h>

#include <random>

#include "lp/entail.hpp"

namespace {

lp::EntailmentProblem make_problem(std::uint32_t atoms, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  lp::EntailmentProblem p;
  for (std::uint32_t i = 0; i < atoms; ++i) p.atoms.push_back("A" + std::to_string(i));

  auto literal = [&]() {
    lp::FormulaPtr a = lp::pred(p.atoms[rng() % atoms], {lp::object_var("x")});
    return rng() % 2 ? a : lp::lnot(a);
  };
  auto formula = [&]() {
    lp::FormulaPtr f = literal();
    for (int extra = 2; extra > 0; --extra)
      f = rng() % 2 ? lp::land(f, literal()) : lp::lor(f, literal());
    return f;
  };

  for (int i = 0; i < 4; ++i) {
    lp::Rational v(static_cast<long>(1 + rng() % 3), 4);
    p.base.emplace_back(formula(), i % 2 ? lp::Constraint::geq(v) : lp::Constraint::leq(v));
  }
  p.query = formula();
  return p;
}

void bench_bounds(benchmark::State& state) {
  lp::EntailmentProblem p = make_problem(static_cast<std::uint32_t>(state.range(0)), 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lp::bounds(p));
  }
  state.SetLabel(std::to_string(std::size_t{1} << state.range(0)) + " worlds");
}
BENCHMARK(bench_bounds)->DenseRange(2, 12, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
