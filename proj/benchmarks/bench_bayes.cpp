#include <benchmark/benchmark.h>

#include <random>

#include "lp/bayes.hpp"

namespace {

lp::BayesNet chain_net(std::uint32_t n) {
  lp::BayesNet::Data d;
  std::mt19937_64 rng(5);
  for (std::uint32_t i = 0; i < n; ++i) {
    d.vars.push_back("X" + std::to_string(i + 1));
    d.parents.push_back(i == 0 ? std::vector<std::uint32_t>{}
                               : std::vector<std::uint32_t>{i - 1});
    std::vector<lp::Rational> cpt;
    for (std::size_t r = 0; r < (i == 0 ? 1u : 2u); ++r)
      cpt.push_back(lp::Rational(static_cast<long>(1 + rng() % 9), 10));
    d.cpt.push_back(std::move(cpt));
  }
  return lp::BayesNet(std::move(d));
}

void bench_build_joint(benchmark::State& state) {
  lp::BayesNet net = chain_net(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lp::build_joint(net));
  }
}
BENCHMARK(bench_build_joint)->Arg(6)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

void bench_query(benchmark::State& state) {
  lp::BayesNet net = chain_net(static_cast<std::uint32_t>(state.range(0)));
  std::vector<lp::BayesLiteral> evidence = {{net.vars().front(), true},
                                            {net.vars().back(), false}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(lp::query(net, {net.vars()[net.size() / 2], true}, evidence));
  }
}
BENCHMARK(bench_query)->Arg(8)->Arg(12)->Arg(16);

void bench_negation_uniform(benchmark::State& state) {
  lp::BayesNet net = chain_net(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lp::verify_negation_uniform(net));
  }
}
BENCHMARK(bench_negation_uniform)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
