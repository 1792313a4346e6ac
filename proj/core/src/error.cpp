#include "lp/error.hpp"

#include <sstream>

namespace lp {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::LexError: return "LexError";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::SortMismatch: return "SortMismatch";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::DuplicateSymbol: return "DuplicateSymbol";
    case ErrorKind::DuplicateBoundVariable: return "DuplicateBoundVariable";
    case ErrorKind::EmptyBinderVector: return "EmptyBinderVector";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::FieldQuantifierUnsupported: return "FieldQuantifierUnsupported";
    case ErrorKind::EnumerationCapExceeded: return "EnumerationCapExceeded";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::FormatError: return "FormatError";
    case ErrorKind::MeasureNotNormalized: return "MeasureNotNormalized";
    case ErrorKind::TooManyAtoms: return "TooManyAtoms";
    case ErrorKind::TooManyVariables: return "TooManyVariables";
    case ErrorKind::OutsideFragment: return "OutsideFragment";
    case ErrorKind::ZeroProbabilityEvidence: return "ZeroProbabilityEvidence";
    case ErrorKind::NoGroundFacts: return "NoGroundFacts";
    case ErrorKind::MissingHook: return "MissingHook";
    case ErrorKind::Internal: return "Internal";
  }
  return "Error";
}

std::string Error::render() const {
  std::ostringstream os;
  if (span_ && span_->valid()) {
    os << span_->line << ":" << span_->column << ": ";
  }
  os << error_kind_name(kind_) << ": " << what();
  return os.str();
}

}  // namespace lp
