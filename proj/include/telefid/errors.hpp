#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace telefid {

enum class ErrorKind {
  NonHermitian,
  TraceNotOne,
  NotPositive,
  OutOfRange,
  MismatchedProperty,
  PreconditionFailed,
  NotEntangled,
  DesignTooWeak,
  InvalidArgument,
  Parse,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for every domain failure. `kind()` identifies the
/// failure; `value()` carries the offending number where one exists (the
/// worst eigenvalue for NotPositive, the rejected parameter for OutOfRange).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, double value = 0.0)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        value_(value) {}

  ErrorKind kind() const noexcept { return kind_; }
  double value() const noexcept { return value_; }

 private:
  ErrorKind kind_;
  double value_;
};

}  // namespace telefid
