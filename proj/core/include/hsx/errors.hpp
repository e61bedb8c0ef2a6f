#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hsx {

enum class ErrorKind {
  InvalidArgument,
  TailMismatch,
  GridMismatch,
  DomainTooNarrow,
  NotInD,
  NotInF,
  NotMonotone,
  NotInvertible,
  SingularSystem,
  NotInG0,
  SupportEscapesGrid,
  ParseError,
  ValidationError,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. `field()` carries a JSON-pointer-like
/// path for configuration errors and is empty otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string field = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorKind kind_;
  std::string field_;
};

}  // namespace hsx
