#pragma once

#include <stdexcept>
#include <string>

namespace qosing {

enum class ErrorKind {
  ParseError,
  DivisionByZero,
  DimensionMismatch,
  RankDeficient,
  NotASublattice,
  NoMultiple,
  EmptySeries,
  PreconditionViolated,
  NotAUnit,
  NotTotallyOrdered,
  NotStrict,
  DegenerateExponent,
  ShapeViolation,
  Smooth,
  Reducible,
  NotInLattice,
  NoUniqueMinimum,
  ValuationMismatch,
  InIdeal,
  NotInFan,
  NotRegular,
  NonIntegral,
  AmbiguousRecovery,
  NotNormalized,
  FragmentTooLarge,
};

inline const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::NotASublattice: return "NotASublattice";
    case ErrorKind::NoMultiple: return "NoMultiple";
    case ErrorKind::EmptySeries: return "EmptySeries";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::NotTotallyOrdered: return "NotTotallyOrdered";
    case ErrorKind::NotStrict: return "NotStrict";
    case ErrorKind::DegenerateExponent: return "DegenerateExponent";
    case ErrorKind::ShapeViolation: return "ShapeViolation";
    case ErrorKind::Smooth: return "Smooth";
    case ErrorKind::Reducible: return "Reducible";
    case ErrorKind::NotInLattice: return "NotInLattice";
    case ErrorKind::NoUniqueMinimum: return "NoUniqueMinimum";
    case ErrorKind::ValuationMismatch: return "ValuationMismatch";
    case ErrorKind::InIdeal: return "InIdeal";
    case ErrorKind::NotInFan: return "NotInFan";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::NonIntegral: return "NonIntegral";
    case ErrorKind::AmbiguousRecovery: return "AmbiguousRecovery";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::FragmentTooLarge: return "FragmentTooLarge";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace qosing
