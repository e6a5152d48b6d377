#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fekete_dyn {

enum class ErrorCode {
  InvalidArgument,
  MapSpecInvalid,
  DegenerateLift,
  DegreeCapExceeded,
  InexactDivision,
  RootFindingDiverged,
  IncompleteRoots,
  NotGoodLift,
  PreimageSolveFailed,
  EmptySample,
  NegativeA,
  IntegralityViolation,
  ZeroInput,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MapSpecInvalid: return "MapSpecInvalid";
    case ErrorCode::DegenerateLift: return "DegenerateLift";
    case ErrorCode::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorCode::InexactDivision: return "InexactDivision";
    case ErrorCode::RootFindingDiverged: return "RootFindingDiverged";
    case ErrorCode::IncompleteRoots: return "IncompleteRoots";
    case ErrorCode::NotGoodLift: return "NotGoodLift";
    case ErrorCode::PreimageSolveFailed: return "PreimageSolveFailed";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::NegativeA: return "NegativeA";
    case ErrorCode::IntegralityViolation: return "IntegralityViolation";
    case ErrorCode::ZeroInput: return "ZeroInput";
  }
  return "Unknown";
}

/// Every library failure carries one of the codes above so that front ends
/// can map it onto an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fekete_dyn
