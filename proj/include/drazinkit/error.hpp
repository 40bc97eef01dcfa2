#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace drazinkit {

enum class ErrorCode {
  FieldMismatch,
  DivisionByZero,
  ShapeMismatch,
  Singular,
  InternalCertificationFailure,
  IndexTooLarge,
  ZeroLambda,
  PreconditionViolated,
  ExponentOverflow,
  NotNilpotentWithinBound,
  CharacteristicTwo,
  IncompatibleFamily,
  BudgetExceeded,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every library failure is reported through this type. `values` carries the
/// numeric payload some codes promise (rank for Singular, the actual index for
/// IndexTooLarge, the space size for BudgetExceeded, power ranks for
/// NotNilpotentWithinBound).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::vector<std::uint64_t> values = {})
      : std::runtime_error(message), code_(code), values_(std::move(values)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::uint64_t>& values() const noexcept { return values_; }

 private:
  ErrorCode code_;
  std::vector<std::uint64_t> values_;
};

}  // namespace drazinkit
