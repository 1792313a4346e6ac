#include "lp/vocabulary.hpp"

namespace lp {

const char* symbol_kind_name(SymbolKind k) {
  switch (k) {
    case SymbolKind::ObjectConst: return "object constant";
    case SymbolKind::ObjectVar: return "object variable";
    case SymbolKind::FieldVar: return "field variable";
    case SymbolKind::FieldConst: return "field constant";
    case SymbolKind::ObjectFunc: return "object function";
    case SymbolKind::FieldFunc: return "field function";
    case SymbolKind::Measure: return "measuring function";
    case SymbolKind::Pred: return "predicate";
  }
  return "symbol";
}

void Vocabulary::claim(const std::string& name, SymbolKind kind) {
  if (name.empty())
    throw Error(ErrorKind::FormatError, "empty symbol name");
  auto [it, inserted] = kinds_.emplace(name, kind);
  if (!inserted) {
    if (it->second == kind &&
        (kind == SymbolKind::ObjectVar || kind == SymbolKind::FieldVar ||
         kind == SymbolKind::ObjectConst || kind == SymbolKind::FieldConst))
      return;  // redeclaring a variable/constant at the same kind is harmless
    throw Error(ErrorKind::DuplicateSymbol,
                "'" + name + "' is already declared as " + symbol_kind_name(it->second));
  }
}

void Vocabulary::declare_object_const(const std::string& name) {
  if (kinds_.count(name) && kinds_.at(name) == SymbolKind::ObjectConst) return;
  claim(name, SymbolKind::ObjectConst);
  object_consts_order_.push_back(name);
}

void Vocabulary::declare_object_var(const std::string& name) {
  if (kinds_.count(name) && kinds_.at(name) == SymbolKind::ObjectVar) return;
  claim(name, SymbolKind::ObjectVar);
  object_vars_order_.push_back(name);
}

void Vocabulary::declare_field_var(const std::string& name) {
  if (kinds_.count(name) && kinds_.at(name) == SymbolKind::FieldVar) return;
  claim(name, SymbolKind::FieldVar);
  field_vars_order_.push_back(name);
}

void Vocabulary::declare_field_const(const std::string& name) {
  if (kinds_.count(name) && kinds_.at(name) == SymbolKind::FieldConst) return;
  claim(name, SymbolKind::FieldConst);
  field_consts_order_.push_back(name);
}

void Vocabulary::declare_object_func(const std::string& name, std::uint32_t arity) {
  if (redeclare(name, SymbolKind::ObjectFunc, object_funcs_, arity)) return;
  claim(name, SymbolKind::ObjectFunc);
  object_funcs_[name] = arity;
}

void Vocabulary::declare_field_func(const std::string& name, std::uint32_t arity) {
  if (redeclare(name, SymbolKind::FieldFunc, field_funcs_, arity)) return;
  claim(name, SymbolKind::FieldFunc);
  field_funcs_[name] = arity;
}

void Vocabulary::register_field_func_hook(const std::string& name, FieldFuncHook hook) {
  if (!field_funcs_.count(name))
    throw Error(ErrorKind::UnknownSymbol, "field function '" + name + "' is not declared");
  field_func_hooks_[name] = std::move(hook);
}

void Vocabulary::declare_measure(const std::string& name, std::uint32_t arity) {
  if (arity == 0)
    throw Error(ErrorKind::FormatError, "measuring function '" + name + "' needs arity >= 1");
  if (redeclare(name, SymbolKind::Measure, measures_, arity)) return;
  claim(name, SymbolKind::Measure);
  measures_[name] = arity;
}

void Vocabulary::declare_pred(const std::string& name, std::uint32_t arity) {
  if (redeclare(name, SymbolKind::Pred, preds_, arity)) return;
  claim(name, SymbolKind::Pred);
  preds_[name] = arity;
}

// Redeclaration at the same kind and arity is a no-op (model files and
// sentence headers routinely declare the same symbols); a different arity
// is an error.
bool Vocabulary::redeclare(const std::string& name, SymbolKind kind,
                           const std::map<std::string, std::uint32_t>& table,
                           std::uint32_t arity) const {
  auto it = kinds_.find(name);
  if (it == kinds_.end() || it->second != kind) return false;
  if (table.at(name) != arity)
    throw Error(ErrorKind::DuplicateSymbol,
                "'" + name + "' redeclared with arity " + std::to_string(arity) +
                    ", previously " + std::to_string(table.at(name)));
  return true;
}

std::optional<SymbolKind> Vocabulary::kind_of(const std::string& name) const {
  auto it = kinds_.find(name);
  if (it == kinds_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t Vocabulary::object_func_arity(const std::string& name) const {
  return object_funcs_.at(name);
}
std::uint32_t Vocabulary::field_func_arity(const std::string& name) const {
  return field_funcs_.at(name);
}
std::uint32_t Vocabulary::measure_arity(const std::string& name) const {
  return measures_.at(name);
}
std::uint32_t Vocabulary::pred_arity(const std::string& name) const {
  return preds_.at(name);
}

const FieldFuncHook* Vocabulary::field_func_hook(const std::string& name) const {
  auto it = field_func_hooks_.find(name);
  return it == field_func_hooks_.end() ? nullptr : &it->second;
}

std::vector<std::string> Vocabulary::all_names() const {
  std::vector<std::string> names;
  names.reserve(kinds_.size());
  for (const auto& [name, kind] : kinds_) names.push_back(name);
  return names;
}

}  // namespace lp
