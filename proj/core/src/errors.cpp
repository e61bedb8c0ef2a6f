#include "hsx/errors.hpp"

#include <utility>

namespace hsx {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::TailMismatch: return "TailMismatch";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::DomainTooNarrow: return "DomainTooNarrow";
    case ErrorKind::NotInD: return "NotInD";
    case ErrorKind::NotInF: return "NotInF";
    case ErrorKind::NotMonotone: return "NotMonotone";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::NotInG0: return "NotInG0";
    case ErrorKind::SupportEscapesGrid: return "SupportEscapesGrid";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::string field)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      field_(std::move(field)) {}

}  // namespace hsx
