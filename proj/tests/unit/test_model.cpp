#include <doctest.h>

#include <filesystem>
#include <random>

#include "lp/model.hpp"

using namespace lp;

namespace {

Model tiny_model() {
  return parse_model(
      "domain { a b c d }\n"
      "measure { a: 1/2 b: 1/4 c: 1/4 d: 0 }\n"
      "predicates { P/1 { a b } R/2 { (a, b) (d, d) } }\n"
      "functions { f/1 { a -> b  b -> c  c -> a  d -> d } }\n"
      "constants { object k = c\n field half = 1/2 }\n"
      "measuring { m/1 { (a) -> 3/2 (b) -> -1 (c) -> 0 (d) -> 7 } }\n");
}

std::set<Tuple> all_singletons(std::uint32_t n) {
  std::set<Tuple> s;
  for (std::uint32_t i = 0; i < n; ++i) s.insert(Tuple{i});
  return s;
}

}  // namespace

TEST_CASE("the measure of the whole domain is 1, of nothing 0") {
  Model m = tiny_model();
  CHECK(measure(m.structure, 1, all_singletons(4)) == Rational(1));
  CHECK(measure(m.structure, 1, {}) == Rational(0));
  CHECK(measure(m.structure, 1, {Tuple{0}}) == Rational(1, 2));
}

TEST_CASE("product law: mu_{n+m}(A x B) = mu_n(A) * mu_m(B)") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 50; ++round) {
    RandomModelParams params;
    params.domain_size = 1 + rng() % 6;
    Model m = generate_random(rng(), params);
    const std::uint32_t n = m.structure.domain_size();

    std::set<Tuple> a, b;
    for (std::uint32_t i = 0; i < n; ++i) {
      if (rng() % 2) a.insert(Tuple{i});
      if (rng() % 2) b.insert(Tuple{i});
    }
    std::set<Tuple> product;
    for (const auto& x : a)
      for (const auto& y : b) product.insert(Tuple{x[0], y[0]});
    CHECK(measure(m.structure, 2, product) ==
          measure(m.structure, 1, a) * measure(m.structure, 1, b));
  }
}

TEST_CASE("finite additivity on disjoint unions") {
  std::mt19937_64 rng(5);
  Model m = generate_random(11, {});
  const std::uint32_t n = m.structure.domain_size();
  for (int round = 0; round < 30; ++round) {
    std::set<Tuple> a, b;
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j) {
        switch (rng() % 3) {
          case 0: a.insert(Tuple{i, j}); break;
          case 1: b.insert(Tuple{i, j}); break;
          default: break;
        }
      }
    std::set<Tuple> u = a;
    u.insert(b.begin(), b.end());
    CHECK(measure(m.structure, 2, u) == measure(m.structure, 1 + 1, a) + measure(m.structure, 2, b));
  }
}

TEST_CASE("measure rejects tuples of the wrong length") {
  Model m = tiny_model();
  CHECK_THROWS_AS(measure(m.structure, 2, {Tuple{0}}), Error);
}

TEST_CASE("model save/load round-trips exactly") {
  Model m = tiny_model();
  std::string text = format_model(m.vocab, m.structure);
  Model again = parse_model(text);
  CHECK(again.structure == m.structure);
  CHECK(format_model(again.vocab, again.structure) == text);

  // Through a file as well.
  auto path = std::filesystem::temp_directory_path() / "lp_model_roundtrip.model";
  save_model(m.vocab, m.structure, path.string());
  Model loaded = load_model(path.string());
  CHECK(loaded.structure == m.structure);
  std::filesystem::remove(path);
}

TEST_CASE("random structures round-trip through the model format") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RandomModelParams params;
    params.domain_size = 1 + seed % 6;
    params.with_object_function = true;
    params.with_measuring = true;
    Model m = generate_random(seed, params);
    Model again = parse_model(format_model(m.vocab, m.structure));
    CHECK(again.structure == m.structure);
  }
}

TEST_CASE("weights that do not sum to 1 are rejected") {
  try {
    parse_model(
        "domain { a b }\n"
        "measure { a: 1/2 b: 49/100 }\n");
    FAIL("expected MeasureNotNormalized");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MeasureNotNormalized);
  }
  CHECK_THROWS_AS(parse_model("domain { a b }\nmeasure { a: 3/2 b: -1/2 }\n"), Error);
}

TEST_CASE("omitted measure defaults to uniform") {
  Model m = parse_model("domain { a b c d }\n");
  for (std::uint32_t i = 0; i < 4; ++i) CHECK(m.structure.weight(i) == Rational(1, 4));
}

TEST_CASE("partial function interpretations are rejected") {
  CHECK_THROWS_AS(parse_model("domain { a b }\nfunctions { f/1 { a -> b } }\n"), Error);
}

TEST_CASE("the shipped birds model satisfies the >90% flying-birds statistic") {
  Model m = load_model(std::string(LP_SOURCE_DIR) + "/paper-examples/models/birds.model");
  // Count by hand, independently of the evaluator.
  std::uint32_t birds = 0, flying_birds = 0;
  for (std::uint32_t i = 0; i < m.structure.domain_size(); ++i) {
    if (!m.structure.pred_holds("Bird", {i})) continue;
    ++birds;
    if (m.structure.pred_holds("Fly", {i})) ++flying_birds;
  }
  CHECK(birds >= 10);
  CHECK(Rational(flying_birds) / Rational(birds) > Rational(9, 10));
  CHECK(m.structure.pred_holds("Bird", {m.structure.object_const("Tweety")}));
}

TEST_CASE("generation is deterministic in the seed") {
  RandomModelParams params;
  params.with_measuring = true;
  params.with_object_function = true;
  Model a = generate_random(99, params);
  Model b = generate_random(99, params);
  CHECK(a.structure == b.structure);
  Model c = generate_random(100, params);
  CHECK(a.structure != c.structure);

  RandomModelParams uniform;
  uniform.domain_size = 4;
  uniform.weight_style = WeightStyle::Uniform;
  Model u = generate_random(1, uniform);
  for (std::uint32_t i = 0; i < 4; ++i) CHECK(u.structure.weight(i) == Rational(1, 4));
}
