#ifndef LP_PRINTER_HPP
#define LP_PRINTER_HPP

#include <string>

#include "lp/ast.hpp"

namespace lp {

// Canonical concrete syntax with minimal parenthesization. Conditional
// probability sugar is kept as `[a | b]{x}`, and disjunction prints as
// `or` inside probability brackets. parse(print(x)) reproduces x up to
// source spans, and printing is idempotent byte for byte.
std::string print(const Term& t);
std::string print(const Formula& f);

inline std::string print(const TermPtr& t) { return print(*t); }
inline std::string print(const FormulaPtr& f) { return print(*f); }

}  // namespace lp

#endif  // LP_PRINTER_HPP
