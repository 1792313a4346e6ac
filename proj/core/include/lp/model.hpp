#ifndef LP_MODEL_HPP
#define LP_MODEL_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lp/rational.hpp"
#include "lp/vocabulary.hpp"

namespace lp {

// A tuple of domain individuals, by index into the domain.
using Tuple = std::vector<std::uint32_t>;

// Per-probability-term enumeration limit: |domain|^n may not exceed this.
constexpr std::uint64_t kMaxEnumeration = 10'000'000;

// Finite Lp-structure: named object domain, total interpretations, measuring
// functions, and the base measure mu_1 that induces the product family
// mu_n. Immutable after construction; construction validates everything.
class LpStructure {
 public:
  struct Data {
    std::vector<std::string> domain;
    std::vector<Rational> weights;  // mu_1, aligned with domain; sums to 1
    std::map<std::string, std::set<Tuple>> predicates;
    std::map<std::string, std::map<Tuple, std::uint32_t>> functions;
    std::map<std::string, std::uint32_t> object_consts;
    std::map<std::string, Rational> field_consts;
    std::map<std::string, std::map<Tuple, Rational>> measuring;
  };

  // Validates: nonempty domain, nonnegative weights summing to exactly 1,
  // totality of every function and measuring function, arities and symbols
  // consistent with the vocabulary, all tuple entries in range.
  LpStructure(Data data, const Vocabulary& vocab);

  std::uint32_t domain_size() const { return static_cast<std::uint32_t>(data_.domain.size()); }
  const std::vector<std::string>& domain() const { return data_.domain; }
  const std::string& individual_name(std::uint32_t i) const { return data_.domain.at(i); }
  std::uint32_t individual_index(const std::string& name) const;

  const Rational& weight(std::uint32_t individual) const { return data_.weights.at(individual); }
  const std::vector<Rational>& weights() const { return data_.weights; }

  bool pred_holds(const std::string& name, const Tuple& args) const;
  std::uint32_t apply_function(const std::string& name, const Tuple& args) const;
  std::uint32_t object_const(const std::string& name) const;
  const Rational& field_const(const std::string& name) const;
  const Rational& apply_measuring(const std::string& name, const Tuple& args) const;

  const Data& data() const { return data_; }

  friend bool operator==(const LpStructure& a, const LpStructure& b) {
    return a.data_.domain == b.data_.domain && a.data_.weights == b.data_.weights &&
           a.data_.predicates == b.data_.predicates && a.data_.functions == b.data_.functions &&
           a.data_.object_consts == b.data_.object_consts &&
           a.data_.field_consts == b.data_.field_consts &&
           a.data_.measuring == b.data_.measuring;
  }

  // Test fixture escape hatch: skips validation so deliberately broken
  // structures (non-normalized measures) can exercise failure reporting.
  static LpStructure unchecked(Data data);

 private:
  LpStructure() = default;
  Data data_;
  std::map<std::string, std::uint32_t> index_;
};

// mu_n of a set of n-tuples: the sum over tuples of the product of the
// member weights. Exact; order of summation cannot matter.
Rational measure(const LpStructure& structure, std::uint32_t n,
                 const std::set<Tuple>& tuples);

// ---------------------------------------------------------------------------
// Model files. Sections: domain, measure, predicates, functions, constants,
// measuring. Rationals as p/q or decimals; '#' comments. The measure
// section may be omitted for the uniform measure.

struct Model {
  Vocabulary vocab;
  LpStructure structure;
};

Model load_model(const std::string& path);
Model parse_model(std::string_view text);
std::string format_model(const Vocabulary& vocab, const LpStructure& structure);
void save_model(const Vocabulary& vocab, const LpStructure& structure,
                const std::string& path);

// ---------------------------------------------------------------------------
// Random structures (fuel for the axiom property suite).

enum class WeightStyle { Uniform, Random };

struct RandomModelParams {
  std::uint32_t domain_size = 4;
  std::vector<std::uint32_t> pred_arities = {1, 1, 1, 2};
  WeightStyle weight_style = WeightStyle::Random;
  bool with_object_function = false;
  bool with_measuring = false;
};

// Deterministic in (seed, params): same seed, same structure.
Model generate_random(std::uint64_t seed, const RandomModelParams& params);

}  // namespace lp

#endif  // LP_MODEL_HPP
