#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sobmor {

enum class ErrorCode {
  DimensionTooSmall,
  POutOfRange,
  QOutOfRange,
  Q1OutOfRange,
  ThetaDegenerate,
  ThetaTooLarge,
  NonPositiveR,
  NonPositiveExponent,
  NTooSmall,
  ThetaOutOfRange,
  K0TooSmall,
  TooManyBumps,
  UnsupportedDim,
  SOutOfRange,
  RadiusExceedsPadding,
  ZeroField,
  ROutOfRange,
  WindowTooShort,
  UnknownKey,
  MissingRequired,
  TypeMismatch,
  IoError,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::POutOfRange: return "POutOfRange";
    case ErrorCode::QOutOfRange: return "QOutOfRange";
    case ErrorCode::Q1OutOfRange: return "Q1OutOfRange";
    case ErrorCode::ThetaDegenerate: return "ThetaDegenerate";
    case ErrorCode::ThetaTooLarge: return "ThetaTooLarge";
    case ErrorCode::NonPositiveR: return "NonPositiveR";
    case ErrorCode::NonPositiveExponent: return "NonPositiveExponent";
    case ErrorCode::NTooSmall: return "NTooSmall";
    case ErrorCode::ThetaOutOfRange: return "ThetaOutOfRange";
    case ErrorCode::K0TooSmall: return "K0TooSmall";
    case ErrorCode::TooManyBumps: return "TooManyBumps";
    case ErrorCode::UnsupportedDim: return "UnsupportedDim";
    case ErrorCode::SOutOfRange: return "SOutOfRange";
    case ErrorCode::RadiusExceedsPadding: return "RadiusExceedsPadding";
    case ErrorCode::ZeroField: return "ZeroField";
    case ErrorCode::ROutOfRange: return "ROutOfRange";
    case ErrorCode::WindowTooShort: return "WindowTooShort";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::MissingRequired: return "MissingRequired";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Thrown by validate(); carries every violated constraint, not just the first.
class ValidationError : public Error {
 public:
  ValidationError(std::vector<ErrorCode> codes, const std::string& what)
      : Error(codes.front(), what), codes_(std::move(codes)) {}

  const std::vector<ErrorCode>& codes() const { return codes_; }

  bool has(ErrorCode c) const {
    for (ErrorCode e : codes_)
      if (e == c) return true;
    return false;
  }

 private:
  std::vector<ErrorCode> codes_;
};

}  // namespace sobmor
