#ifndef LP_VOCABULARY_HPP
#define LP_VOCABULARY_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lp/ast.hpp"
#include "lp/error.hpp"
#include "lp/rational.hpp"

namespace lp {

enum class SymbolKind {
  ObjectConst,
  ObjectVar,
  FieldVar,
  FieldConst,
  ObjectFunc,
  FieldFunc,
  Measure,
  Pred,
};

const char* symbol_kind_name(SymbolKind k);

// Evaluation hook for a declared field function: total over its arity,
// exact rational output. May throw lp::Error.
using FieldFuncHook = std::function<Rational(std::span<const Rational>)>;

// Symbol table for one problem. Names are unique across all symbol classes.
// The distinguished symbols (0, 1, =, >=, +, -, *, /) are structural: they
// are handled directly by the AST and evaluator and cannot be redeclared.
class Vocabulary {
 public:
  void declare_object_const(const std::string& name);
  void declare_object_var(const std::string& name);
  void declare_field_var(const std::string& name);
  void declare_field_const(const std::string& name);
  void declare_object_func(const std::string& name, std::uint32_t arity);
  // Declares a field function symbol; evaluation requires a hook.
  void declare_field_func(const std::string& name, std::uint32_t arity);
  void register_field_func_hook(const std::string& name, FieldFuncHook hook);
  void declare_measure(const std::string& name, std::uint32_t arity);
  // All argument sorts are Object; field relations beyond =, >= are not
  // interpretable over a finite structure.
  void declare_pred(const std::string& name, std::uint32_t arity);

  std::optional<SymbolKind> kind_of(const std::string& name) const;
  bool is_declared(const std::string& name) const { return kind_of(name).has_value(); }

  std::uint32_t object_func_arity(const std::string& name) const;
  std::uint32_t field_func_arity(const std::string& name) const;
  std::uint32_t measure_arity(const std::string& name) const;
  std::uint32_t pred_arity(const std::string& name) const;
  const FieldFuncHook* field_func_hook(const std::string& name) const;

  const std::map<std::string, std::uint32_t>& object_funcs() const { return object_funcs_; }
  const std::map<std::string, std::uint32_t>& measures() const { return measures_; }
  const std::map<std::string, std::uint32_t>& preds() const { return preds_; }
  const std::vector<std::string>& object_consts() const { return object_consts_order_; }
  const std::vector<std::string>& field_consts() const { return field_consts_order_; }
  const std::vector<std::string>& object_vars() const { return object_vars_order_; }
  const std::vector<std::string>& field_vars() const { return field_vars_order_; }

  std::vector<std::string> all_names() const;

 private:
  void claim(const std::string& name, SymbolKind kind);
  bool redeclare(const std::string& name, SymbolKind kind,
                 const std::map<std::string, std::uint32_t>& table,
                 std::uint32_t arity) const;

  std::map<std::string, SymbolKind> kinds_;
  std::vector<std::string> object_consts_order_;
  std::vector<std::string> object_vars_order_;
  std::vector<std::string> field_vars_order_;
  std::vector<std::string> field_consts_order_;
  std::map<std::string, std::uint32_t> object_funcs_;
  std::map<std::string, std::uint32_t> field_funcs_;
  std::map<std::string, FieldFuncHook> field_func_hooks_;
  std::map<std::string, std::uint32_t> measures_;
  std::map<std::string, std::uint32_t> preds_;
};

// Sort-checks a term or formula against a vocabulary: every application
// matches its symbol's declared signature, probability-term binder vectors
// are nonempty and duplicate-free, and variable names are used at one sort
// only. Throws SortMismatch / UnknownSymbol / DuplicateBoundVariable /
// EmptyBinderVector with the offending node's span.
void well_formed(const Term& t, const Vocabulary& vocab);
void well_formed(const Formula& f, const Vocabulary& vocab);

inline bool is_well_formed(const Formula& f, const Vocabulary& vocab,
                           std::string* why = nullptr) {
  try {
    well_formed(f, vocab);
    return true;
  } catch (const Error& e) {
    if (why) *why = e.render();
    return false;
  }
}

inline bool is_well_formed(const Term& t, const Vocabulary& vocab,
                           std::string* why = nullptr) {
  try {
    well_formed(t, vocab);
    return true;
  } catch (const Error& e) {
    if (why) *why = e.render();
    return false;
  }
}

}  // namespace lp

#endif  // LP_VOCABULARY_HPP
