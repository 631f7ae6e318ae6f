#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vpf {

enum class ErrorKind {
  SingularMatrix,
  DimensionMismatch,
  NotFullRank,
  ZeroCoordinate,
  ZeroElongation,
  ZeroSumVector,
  EqualVectors,
  DegenerateDifference,
  NonExpandableDenominator,
  PoleHit,
  VectorOutsideExtendedSet,
  EmptyInterior,
  InvalidRank,
  IndependentInput,
  BadIndicator,
  Overflow,
  Parse,
  StepLimit,
};

constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotFullRank: return "NotFullRank";
    case ErrorKind::ZeroCoordinate: return "ZeroCoordinate";
    case ErrorKind::ZeroElongation: return "ZeroElongation";
    case ErrorKind::ZeroSumVector: return "ZeroSumVector";
    case ErrorKind::EqualVectors: return "EqualVectors";
    case ErrorKind::DegenerateDifference: return "DegenerateDifference";
    case ErrorKind::NonExpandableDenominator: return "NonExpandableDenominator";
    case ErrorKind::PoleHit: return "PoleHit";
    case ErrorKind::VectorOutsideExtendedSet: return "VectorOutsideExtendedSet";
    case ErrorKind::EmptyInterior: return "EmptyInterior";
    case ErrorKind::InvalidRank: return "InvalidRank";
    case ErrorKind::IndependentInput: return "IndependentInput";
    case ErrorKind::BadIndicator: return "BadIndicator";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::StepLimit: return "StepLimit";
  }
  return "Unknown";
}

/// All library failures surface as this exception; `kind()` tells them apart.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace vpf
