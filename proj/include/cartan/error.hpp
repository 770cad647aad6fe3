#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace cartan {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  InvariantViolation,
  DegenerateSpanningSet,
  NotOrthogonal,
  IllConditionedSpectrum,
  NotOrthogonalSymmetry,
  LogBranchAmbiguity,
  YOmegaSingular,
  NotInCartanModel,
  CutLocus,
  NearSingularIsomorphism,
  NumericalFault,
  ParseError,
};

/// Stable machine-readable name, used in the CLI error JSON.
std::string_view error_code_name(ErrorCode code);

/// Every domain failure in the library is reported through this type.
/// `context` carries optional structured data (dimensions, offending values)
/// that the CLI forwards verbatim.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& detail, nlohmann::json context = nlohmann::json::object())
      : std::runtime_error(detail), code_(code), context_(std::move(context)) {}

  ErrorCode code() const noexcept { return code_; }
  const nlohmann::json& context() const noexcept { return context_; }

private:
  ErrorCode code_;
  nlohmann::json context_;
};

inline void require_same_dim(long a, long b, std::string_view what) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": dimension mismatch",
                {{"expected", a}, {"actual", b}});
  }
}

} // namespace cartan
