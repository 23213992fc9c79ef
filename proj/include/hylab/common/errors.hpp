#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hylab {

enum class ErrorKind {
  InvalidInput,
  SolverFailure,
  AccuracyFailure,
  ResourceLimit,
  RangeError,
  IoError,
};

std::string_view to_string(ErrorKind kind);

/// Library-wide exception; `kind` tells callers (and the CLI exit-code map)
/// which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) fail(kind, what);
}

}  // namespace hylab
