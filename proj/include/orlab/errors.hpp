#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orlab {

enum class ErrorKind {
  NotConvex,
  RangeError,
  DomainError,
  NotNFunction,
  NonFinite,
  ConjugateUnavailable,
  SpecMismatch,
  MethodMismatch,
  ComplexInput,
  NotLocalized,
  SearchOverflow,
  CorpusError,
  GateFailed,
  CoverageTooLow,
  ParseError,
  UnknownKey,
  InvalidArgument,
  IoError,
};

std::string_view to_string(ErrorKind kind);

/// Every library failure carries a machine-readable kind so the CLI can map
/// it onto a structured message and exit status 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotConvex: return "NotConvex";
    case ErrorKind::RangeError: return "RangeError";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NotNFunction: return "NotNFunction";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::ConjugateUnavailable: return "ConjugateUnavailable";
    case ErrorKind::SpecMismatch: return "SpecMismatch";
    case ErrorKind::MethodMismatch: return "MethodMismatch";
    case ErrorKind::ComplexInput: return "ComplexInput";
    case ErrorKind::NotLocalized: return "NotLocalized";
    case ErrorKind::SearchOverflow: return "SearchOverflow";
    case ErrorKind::CorpusError: return "CorpusError";
    case ErrorKind::GateFailed: return "GateFailed";
    case ErrorKind::CoverageTooLow: return "CoverageTooLow";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownKey: return "UnknownKey";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace orlab
