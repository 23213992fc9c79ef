#include "hylab/common/errors.hpp"

namespace hylab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::SolverFailure: return "solver-failure";
    case ErrorKind::AccuracyFailure: return "accuracy-failure";
    case ErrorKind::ResourceLimit: return "resource-limit";
    case ErrorKind::RangeError: return "range-error";
    case ErrorKind::IoError: return "io-error";
  }
  return "unknown";
}

}  // namespace hylab
