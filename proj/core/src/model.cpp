#include "lp/model.hpp"

#include <sstream>

namespace lp {

namespace {

std::uint64_t checked_pow(std::uint64_t base, std::uint32_t exp, std::uint64_t cap) {
  std::uint64_t result = 1;
  for (std::uint32_t i = 0; i < exp; ++i) {
    if (base != 0 && result > cap / base) return cap + 1;
    result *= base;
  }
  return result;
}

void check_tuple(const Tuple& t, std::uint32_t arity, std::uint32_t domain_size,
                 const std::string& owner) {
  if (t.size() != arity) {
    std::ostringstream os;
    os << "'" << owner << "' expects " << arity << "-tuples, got a " << t.size() << "-tuple";
    throw Error(ErrorKind::ArityMismatch, os.str());
  }
  for (auto i : t)
    if (i >= domain_size)
      throw Error(ErrorKind::FormatError,
                  "tuple entry out of domain range in '" + owner + "'");
}

}  // namespace

LpStructure::LpStructure(Data data, const Vocabulary& vocab) : data_(std::move(data)) {
  if (data_.domain.empty())
    throw Error(ErrorKind::FormatError, "object domain must be nonempty");
  const auto n = static_cast<std::uint32_t>(data_.domain.size());

  for (std::uint32_t i = 0; i < n; ++i) {
    auto [it, inserted] = index_.emplace(data_.domain[i], i);
    if (!inserted)
      throw Error(ErrorKind::FormatError, "duplicate individual '" + data_.domain[i] + "'");
  }

  if (data_.weights.size() != data_.domain.size())
    throw Error(ErrorKind::FormatError, "measure must weight every individual exactly once");
  Rational total(0);
  for (const auto& w : data_.weights) {
    if (w.sign() < 0)
      throw Error(ErrorKind::MeasureNotNormalized, "negative weight in base measure");
    total += w;
  }
  if (total != Rational(1))
    throw Error(ErrorKind::MeasureNotNormalized,
                "base measure sums to " + total.str() + ", expected 1");

  for (const auto& [name, tuples] : data_.predicates) {
    if (vocab.kind_of(name) != SymbolKind::Pred)
      throw Error(ErrorKind::UnknownSymbol, "interpretation for undeclared predicate '" + name + "'");
    for (const auto& t : tuples) check_tuple(t, vocab.pred_arity(name), n, name);
  }
  for (const auto& [name, arity] : vocab.preds())
    data_.predicates.try_emplace(name);  // empty interpretation when unlisted

  for (const auto& [name, arity] : vocab.object_funcs()) {
    auto it = data_.functions.find(name);
    std::uint64_t expected = checked_pow(n, arity, kMaxEnumeration);
    if (it == data_.functions.end() || it->second.size() != expected)
      throw Error(ErrorKind::FormatError,
                  "object function '" + name + "' must be total over the domain");
    for (const auto& [t, value] : it->second) {
      check_tuple(t, arity, n, name);
      if (value >= n)
        throw Error(ErrorKind::FormatError, "function value out of domain in '" + name + "'");
    }
  }
  for (const auto& [name, m] : data_.functions)
    if (vocab.kind_of(name) != SymbolKind::ObjectFunc)
      throw Error(ErrorKind::UnknownSymbol, "interpretation for undeclared function '" + name + "'");

  for (const auto& [name, arity] : vocab.measures()) {
    auto it = data_.measuring.find(name);
    std::uint64_t expected = checked_pow(n, arity, kMaxEnumeration);
    if (it == data_.measuring.end() || it->second.size() != expected)
      throw Error(ErrorKind::FormatError,
                  "measuring function '" + name + "' must be total over the domain");
    for (const auto& [t, value] : it->second) check_tuple(t, arity, n, name);
  }
  for (const auto& [name, m] : data_.measuring)
    if (vocab.kind_of(name) != SymbolKind::Measure)
      throw Error(ErrorKind::UnknownSymbol,
                  "interpretation for undeclared measuring function '" + name + "'");

  for (const auto& name : vocab.object_consts())
    if (!data_.object_consts.count(name))
      throw Error(ErrorKind::FormatError, "object constant '" + name + "' has no value");
  for (const auto& [name, value] : data_.object_consts) {
    if (vocab.kind_of(name) != SymbolKind::ObjectConst)
      throw Error(ErrorKind::UnknownSymbol, "value for undeclared object constant '" + name + "'");
    if (value >= n)
      throw Error(ErrorKind::FormatError, "object constant '" + name + "' out of domain range");
  }

  for (const auto& name : vocab.field_consts())
    if (!data_.field_consts.count(name))
      throw Error(ErrorKind::FormatError, "field constant '" + name + "' has no value");
  for (const auto& [name, value] : data_.field_consts)
    if (vocab.kind_of(name) != SymbolKind::FieldConst)
      throw Error(ErrorKind::UnknownSymbol, "value for undeclared field constant '" + name + "'");
}

LpStructure LpStructure::unchecked(Data data) {
  LpStructure s;
  s.data_ = std::move(data);
  for (std::uint32_t i = 0; i < s.data_.domain.size(); ++i)
    s.index_.emplace(s.data_.domain[i], i);
  return s;
}

std::uint32_t LpStructure::individual_index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end())
    throw Error(ErrorKind::UnknownSymbol, "unknown individual '" + name + "'");
  return it->second;
}

bool LpStructure::pred_holds(const std::string& name, const Tuple& args) const {
  auto it = data_.predicates.find(name);
  if (it == data_.predicates.end())
    throw Error(ErrorKind::UnknownSymbol, "predicate '" + name + "' has no interpretation");
  return it->second.count(args) > 0;
}

std::uint32_t LpStructure::apply_function(const std::string& name, const Tuple& args) const {
  auto it = data_.functions.find(name);
  if (it == data_.functions.end())
    throw Error(ErrorKind::UnknownSymbol, "function '" + name + "' has no interpretation");
  auto jt = it->second.find(args);
  if (jt == it->second.end())
    throw Error(ErrorKind::Internal, "function '" + name + "' not total");
  return jt->second;
}

std::uint32_t LpStructure::object_const(const std::string& name) const {
  auto it = data_.object_consts.find(name);
  if (it == data_.object_consts.end())
    throw Error(ErrorKind::UnknownSymbol, "object constant '" + name + "' has no value");
  return it->second;
}

const Rational& LpStructure::field_const(const std::string& name) const {
  auto it = data_.field_consts.find(name);
  if (it == data_.field_consts.end())
    throw Error(ErrorKind::UnknownSymbol, "field constant '" + name + "' has no value");
  return it->second;
}

const Rational& LpStructure::apply_measuring(const std::string& name, const Tuple& args) const {
  auto it = data_.measuring.find(name);
  if (it == data_.measuring.end())
    throw Error(ErrorKind::UnknownSymbol, "measuring function '" + name + "' has no interpretation");
  auto jt = it->second.find(args);
  if (jt == it->second.end())
    throw Error(ErrorKind::Internal, "measuring function '" + name + "' not total");
  return jt->second;
}

Rational measure(const LpStructure& structure, std::uint32_t n,
                 const std::set<Tuple>& tuples) {
  Rational total(0);
  for (const auto& t : tuples) {
    if (t.size() != n)
      throw Error(ErrorKind::ArityMismatch, "tuple length does not match the measure index");
    Rational product(1);
    for (auto i : t) product *= structure.weight(i);
    total += product;
  }
  return total;
}

}  // namespace lp
