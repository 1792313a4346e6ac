#ifndef LP_PARSER_HPP
#define LP_PARSER_HPP

#include <string_view>
#include <variant>
#include <vector>

#include "lp/ast.hpp"
#include "lp/vocabulary.hpp"

namespace lp {

// One `;`-terminated line of an .lp file: a sentence or a bare f-term.
struct Statement {
  std::variant<FormulaPtr, TermPtr> node;
  SourceSpan span;

  bool is_formula() const { return node.index() == 0; }
  const FormulaPtr& formula() const { return std::get<FormulaPtr>(node); }
  const TermPtr& term() const { return std::get<TermPtr>(node); }
};

struct ParsedFile {
  Vocabulary vocab;
  std::vector<Statement> statements;
};

// Concrete syntax (see README for the full grammar):
//
//   declarations   object pred Bird/1;   object func mate/1;
//                  object const Tweety;  object var x;
//                  field var y;          field const threshold;
//                  field func normal/4;  measure weight/1;
//
//   formulas       connectives ! & | -> (or `or`), quantifiers
//                  `forall x.` / `exists y:field.`, comparisons
//                  = >= <= < > and `t in [a, b]`
//
//   probability    [ formula ]{x, y}   and   [ formula | formula ]{x}
//                  `|` inside the brackets is conditioning; write
//                  disjunction there as `or`.
//
//   numerals       exact: 3, 3/4 (no spaces), 0.75
//
// Object variables are introduced implicitly by use; field variables must
// be declared. Every returned AST is well-formed against the returned
// vocabulary. All errors carry a span inside the input.
ParsedFile parse_file(std::string_view text, const Vocabulary& base = {});

// Single-construct conveniences; `vocab` picks up implicitly introduced
// object variables. The whole input must be consumed.
FormulaPtr parse_formula(std::string_view text, Vocabulary& vocab);
TermPtr parse_term(std::string_view text, Vocabulary& vocab);
Statement parse_statement(std::string_view text, Vocabulary& vocab);

}  // namespace lp

#endif  // LP_PARSER_HPP
