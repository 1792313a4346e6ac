#include <random>

#include "lp/model.hpp"

namespace lp {

namespace {

// All draws go through the raw engine so the structure is a pure function
// of the seed regardless of standard-library distribution internals.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
  return rng() % bound;
}

void enumerate_tuples(std::uint32_t n, std::uint32_t arity,
                      const std::function<void(const Tuple&)>& fn) {
  Tuple t(arity, 0);
  for (;;) {
    fn(t);
    std::uint32_t i = 0;
    while (i < arity && ++t[i] == n) t[i++] = 0;
    if (i == arity) return;
  }
}

}  // namespace

Model generate_random(std::uint64_t seed, const RandomModelParams& params) {
  if (params.domain_size == 0)
    throw Error(ErrorKind::FormatError, "random model needs a nonempty domain");
  std::mt19937_64 rng(seed);
  Vocabulary vocab;
  LpStructure::Data data;

  const std::uint32_t n = params.domain_size;
  for (std::uint32_t i = 0; i < n; ++i) data.domain.push_back("e" + std::to_string(i));

  if (params.weight_style == WeightStyle::Uniform) {
    data.weights.assign(n, Rational(1, static_cast<long>(n)));
  } else {
    std::vector<long> nums(n);
    long total = 0;
    for (auto& x : nums) {
      x = static_cast<long>(draw(rng, 5));  // zero-weight individuals allowed
      total += x;
    }
    if (total == 0) {
      nums[0] = 1;
      total = 1;
    }
    for (auto x : nums) data.weights.push_back(Rational(x, total));
  }

  for (std::size_t p = 0; p < params.pred_arities.size(); ++p) {
    std::string name = "P" + std::to_string(p);
    std::uint32_t arity = params.pred_arities[p];
    vocab.declare_pred(name, arity);
    std::set<Tuple> tuples;
    enumerate_tuples(n, arity, [&](const Tuple& t) {
      if (draw(rng, 2) == 1) tuples.insert(t);
    });
    data.predicates.emplace(name, std::move(tuples));
  }

  if (params.with_object_function) {
    vocab.declare_object_func("f0", 1);
    std::map<Tuple, std::uint32_t> table;
    enumerate_tuples(n, 1, [&](const Tuple& t) {
      table.emplace(t, static_cast<std::uint32_t>(draw(rng, n)));
    });
    data.functions.emplace("f0", std::move(table));
  }

  if (params.with_measuring) {
    vocab.declare_measure("m0", 1);
    std::map<Tuple, Rational> table;
    enumerate_tuples(n, 1, [&](const Tuple& t) {
      long num = static_cast<long>(draw(rng, 9)) - 4;
      long den = 1 + static_cast<long>(draw(rng, 4));
      table.emplace(t, Rational(num, den));
    });
    data.measuring.emplace("m0", std::move(table));
  }

  return Model{vocab, LpStructure(std::move(data), vocab)};
}

}  // namespace lp
