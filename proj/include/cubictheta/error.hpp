#pragma once

#include <stdexcept>
#include <string>

namespace cubictheta {

enum class ErrorKind {
  Overflow,
  InvalidArgument,
  NotFundamental,
  NotPositive,
  NotNegative,
  NotPositiveDefinite,
  NotPrimitive,
  DiscriminantMismatch,
  NotRepresented,
  Reducible,
  NonFundamentalDiscriminant,
  IntegralityViolation,
  InsufficientPrecision,
  PrecisionMismatch,
  InvalidRange,
  CorruptCacheEntry,
  Internal,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotFundamental: return "NotFundamental";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::NotNegative: return "NotNegative";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::NotPrimitive: return "NotPrimitive";
    case ErrorKind::DiscriminantMismatch: return "DiscriminantMismatch";
    case ErrorKind::NotRepresented: return "NotRepresented";
    case ErrorKind::Reducible: return "Reducible";
    case ErrorKind::NonFundamentalDiscriminant: return "NonFundamentalDiscriminant";
    case ErrorKind::IntegralityViolation: return "IntegralityViolation";
    case ErrorKind::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorKind::PrecisionMismatch: return "PrecisionMismatch";
    case ErrorKind::InvalidRange: return "InvalidRange";
    case ErrorKind::CorruptCacheEntry: return "CorruptCacheEntry";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a kind so callers (and tests)
/// can branch on it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cubictheta
