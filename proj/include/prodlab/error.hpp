#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace prodlab {

enum class ErrorKind {
  OrderCapExceeded,
  InvalidParameters,
  CayleyFileMalformed,
  GroupMismatch,
  BudgetExceeded,
  EigenSplitFailure,
  ToleranceViolation,
  EmptySubset,
  TableMismatch,
  ImaginaryResidue,
  ConstructionFailed,
  InvalidRange,
  PreconditionViolated,
  SingularInput,
  SolveFailed,
  SizeMismatch,
  UsageError,
  SchemaMismatch,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (CLI, bindings) can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace prodlab
