#ifndef LP_ERROR_HPP
#define LP_ERROR_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace lp {

// Byte range plus line/column info for diagnostics. Attached to every AST
// node produced by the parser; programmatically built nodes carry an
// invalid (all-zero) span.
struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::uint32_t line = 0;        // 1-based; 0 means "no position"
  std::uint32_t column = 0;      // 1-based
  std::uint32_t end_line = 0;
  std::uint32_t end_column = 0;

  bool valid() const { return line != 0; }
};

enum class ErrorKind {
  LexError,
  SyntaxError,
  SortMismatch,
  UnknownSymbol,
  DuplicateSymbol,
  DuplicateBoundVariable,
  EmptyBinderVector,
  DivisionByZero,
  UnboundVariable,
  FieldQuantifierUnsupported,
  EnumerationCapExceeded,
  ArityMismatch,
  IoError,
  FormatError,
  MeasureNotNormalized,
  TooManyAtoms,
  TooManyVariables,
  OutsideFragment,
  ZeroProbabilityEvidence,
  NoGroundFacts,
  MissingHook,
  Internal,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message,
        std::optional<SourceSpan> span = std::nullopt)
      : std::runtime_error(std::move(message)), kind_(kind), span_(span) {}

  ErrorKind kind() const { return kind_; }
  const std::optional<SourceSpan>& span() const { return span_; }

  // "line:col: kind: message" when a position is known.
  std::string render() const;

 private:
  ErrorKind kind_;
  std::optional<SourceSpan> span_;
};

}  // namespace lp

#endif  // LP_ERROR_HPP
