#ifndef SATO_ERROR_HPP
#define SATO_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace sato {

/// Machine-readable error categories. Every module error maps onto one of
/// these; the CLI prints the category name and exits nonzero.
enum class ErrorKind {
  UnsupportedRing,
  ZeroPrecision,
  RingMismatch,
  IndeterminateOrder,
  NonUnitLeading,
  DivisibilityViolation,
  NotMonic,
  NonpositiveValuation,
  BadValuation,
  ZeroN,
  WrongOrder,
  NonUnit,
  NotMonicOrderZero,
  NotBigCell,
  NonCommuting,
  NotDifferential,
  NoPositiveOrder,
  StabilityViolation,
  WindowTooSmall,
  UnstableBound,
  DepthTooSmall,
  UndecidableZero,
  WrongShape,
  JetOrderExceeded,
  SyntaxError,
  UnknownSymbol,
  InvalidArgument,
};

std::string_view error_kind_name(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view category() const noexcept { return error_kind_name(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace sato

#endif  // SATO_ERROR_HPP
