#include "pdepth/errors.hpp"

namespace pdepth {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::Parse: return "parse-error";
    case ErrorKind::Validation: return "validation-error";
    case ErrorKind::Divergent: return "divergent";
    case ErrorKind::Stuck: return "stuck";
    case ErrorKind::IllegalMove: return "illegal-move";
    case ErrorKind::BudgetExceeded: return "budget-exceeded";
    case ErrorKind::LambdaBudgetExceeded: return "lambda-budget-exceeded";
    case ErrorKind::NoPreimage: return "no-preimage";
    case ErrorKind::Ambiguous: return "ambiguous";
    case ErrorKind::Mismatch: return "mismatch";
  }
  return "unknown";
}

}  // namespace pdepth
