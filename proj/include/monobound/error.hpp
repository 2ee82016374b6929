#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace monobound {

enum class ErrorCode {
  EmptyInput,
  NonPositiveWeight,
  SumOutOfTolerance,
  DegeneratePartition,
  PointOutsideInterval,
  DomainViolation,
  NonMonotoneFunction,
  ToleranceNotReached,
  NotNormalized,
  LengthMismatch,
  NotMajorized,
  NotConvex,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library. `index` and `value` carry the
/// offending position / number when the error kind has one (e.g.
/// NonPositiveWeight(index), SumOutOfTolerance(actual sum)).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> index = std::nullopt,
        std::optional<double> value = std::nullopt,
        std::optional<double> secondary = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        index_(index),
        value_(value),
        secondary_(secondary) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }
  std::optional<double> value() const noexcept { return value_; }
  /// ToleranceNotReached: the achieved error estimate (value() holds the
  /// best integral estimate).
  std::optional<double> secondary() const noexcept { return secondary_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
  std::optional<double> value_;
  std::optional<double> secondary_;
};

}  // namespace monobound
