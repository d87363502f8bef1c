#pragma once

#include <stdexcept>
#include <string>

namespace spca {

enum class ErrorCode {
  kInvalidParameters,
  kDimensionMismatch,
  kNotSymmetric,
  kNotPositiveSemidefinite,
  kNoConvergence,
  kDegenerate,
  kInvalidCircuit,
  kInfeasibleFlow,
  kTooLarge,
  kParseError,
  kNotSquare,
  kAsymmetryTooLarge,
};

const char* to_string(ErrorCode code);

// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidParameters: return "InvalidParameters";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNotSymmetric: return "NotSymmetric";
    case ErrorCode::kNotPositiveSemidefinite: return "NotPositiveSemidefinite";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kDegenerate: return "Degenerate";
    case ErrorCode::kInvalidCircuit: return "InvalidCircuit";
    case ErrorCode::kInfeasibleFlow: return "InfeasibleFlow";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kNotSquare: return "NotSquare";
    case ErrorCode::kAsymmetryTooLarge: return "AsymmetryTooLarge";
  }
  return "Unknown";
}

}  // namespace spca
