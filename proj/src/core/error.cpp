#include "prodlab/error.hpp"

namespace prodlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OrderCapExceeded: return "OrderCapExceeded";
    case ErrorKind::InvalidParameters: return "InvalidParameters";
    case ErrorKind::CayleyFileMalformed: return "CayleyFileMalformed";
    case ErrorKind::GroupMismatch: return "GroupMismatch";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::EigenSplitFailure: return "EigenSplitFailure";
    case ErrorKind::ToleranceViolation: return "ToleranceViolation";
    case ErrorKind::EmptySubset: return "EmptySubset";
    case ErrorKind::TableMismatch: return "TableMismatch";
    case ErrorKind::ImaginaryResidue: return "ImaginaryResidue";
    case ErrorKind::ConstructionFailed: return "ConstructionFailed";
    case ErrorKind::InvalidRange: return "InvalidRange";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::SingularInput: return "SingularInput";
    case ErrorKind::SolveFailed: return "SolveFailed";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::UsageError: return "UsageError";
    case ErrorKind::SchemaMismatch: return "SchemaMismatch";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace prodlab
