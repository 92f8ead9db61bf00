#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pglhyp {

enum class ErrorKind {
  NonPrime,
  EvenCharacteristic,
  ReducibleModulus,
  FieldTooLarge,
  DivisionByZero,
  CoincidentPoints,
  CenterOnConic,
  NotAnInvolution,
  BudgetExceeded,
  NotClosed,
  SubgroupNotContained,
  DegenerateInput,
  CollinearCenters,
  PointsNotOnConic,
  CoincidentConicPoints,
  SearchExhausted,
  InvalidPower,
  FixedConicPoint,
  NoTauTriangle,
  ParseError,
  UnsupportedFormat,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonPrime: return "NonPrime";
    case ErrorKind::EvenCharacteristic: return "EvenCharacteristic";
    case ErrorKind::ReducibleModulus: return "ReducibleModulus";
    case ErrorKind::FieldTooLarge: return "FieldTooLarge";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::CoincidentPoints: return "CoincidentPoints";
    case ErrorKind::CenterOnConic: return "CenterOnConic";
    case ErrorKind::NotAnInvolution: return "NotAnInvolution";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::SubgroupNotContained: return "SubgroupNotContained";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::CollinearCenters: return "CollinearCenters";
    case ErrorKind::PointsNotOnConic: return "PointsNotOnConic";
    case ErrorKind::CoincidentConicPoints: return "CoincidentConicPoints";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::InvalidPower: return "InvalidPower";
    case ErrorKind::FixedConicPoint: return "FixedConicPoint";
    case ErrorKind::NoTauTriangle: return "NoTauTriangle";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by group closure when the element budget runs out.
class BudgetExceededError : public Error {
 public:
  BudgetExceededError(std::size_t partial_size, std::size_t budget)
      : Error(ErrorKind::BudgetExceeded,
              "closure exceeded budget of " + std::to_string(budget) + " elements"),
        partial_size_(partial_size) {}

  std::size_t partial_size() const noexcept { return partial_size_; }

 private:
  std::size_t partial_size_;
};

}  // namespace pglhyp
