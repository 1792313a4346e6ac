#include <benchmark/benchmark.h>

#include "lp/eval.hpp"
#include "lp/parser.hpp"

namespace {

lp::Model make_model(std::uint32_t domain_size) {
  lp::RandomModelParams params;
  params.domain_size = domain_size;
  params.pred_arities = {1, 1, 2};
  params.with_measuring = true;
  return lp::generate_random(42, params);
}

void bench_prob_term_unary(benchmark::State& state) {
  lp::Model m = make_model(static_cast<std::uint32_t>(state.range(0)));
  lp::Vocabulary v = m.vocab;
  lp::TermPtr t = lp::parse_term("[P0(x) & !P1(x)]{x}", v);
  lp::TermPtr core = lp::desugar(t);
  lp::Assignment sigma;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lp::eval_field_term(m.structure, v, sigma, *core));
  }
}
BENCHMARK(bench_prob_term_unary)->Arg(8)->Arg(32)->Arg(128)->Arg(512);

void bench_prob_term_pair(benchmark::State& state) {
  lp::Model m = make_model(static_cast<std::uint32_t>(state.range(0)));
  lp::Vocabulary v = m.vocab;
  lp::TermPtr t = lp::parse_term("[P2(x, y) & P0(x)]{x, y}", v);
  lp::TermPtr core = lp::desugar(t);
  lp::Assignment sigma;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lp::eval_field_term(m.structure, v, sigma, *core));
  }
}
BENCHMARK(bench_prob_term_pair)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void bench_field_quantifier(benchmark::State& state) {
  lp::Model m = make_model(static_cast<std::uint32_t>(state.range(0)));
  lp::Vocabulary v = m.vocab;
  lp::FormulaPtr f =
      lp::parse_formula("forall y:field. [P0(x) & m0(x) < y]{x} <= [P0(x)]{x}", v);
  lp::FormulaPtr core = lp::desugar(f);
  lp::Assignment sigma;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lp::eval_formula(m.structure, v, sigma, *core));
  }
}
BENCHMARK(bench_field_quantifier)->Arg(8)->Arg(32)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
