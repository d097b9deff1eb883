#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sz1d {

// Failure modes surfaced to callers and mapped onto CLI diagnostics.
enum class ErrorCode {
  turning_point,          // E <= V(x) somewhere a real phase needs k(x) > 0
  no_propagating_mode,    // E at or below an asymptotic potential value
  asymmetric_asymptotes,  // constant-k machinery requires V(-inf) == V(+inf)
  phase_derivative_zero,  // auxiliary phase violates phi'(x) != 0
  tolerance_not_met,      // adaptive integration could not meet its budget
  non_decaying_tail,      // potential not flat at the declared truncation points
  non_alternating_profile,// extrema list does not alternate peak/valley
  under_barrier,          // closed form requested below the barrier top
  unsupported,            // operation undefined for this input (e.g. WKB + delta)
  invalid_config,         // malformed config file / parameters
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message, std::string context = {})
      : std::runtime_error(message), code_(code), context_(std::move(context)) {}

  ErrorCode code() const { return code_; }
  const std::string& context() const { return context_; }
  std::string_view code_name() const { return error_code_name(code_); }

private:
  ErrorCode code_;
  std::string context_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message,
                              std::string context = {}) {
  throw Error(code, message, std::move(context));
}

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::turning_point: return "TurningPoint";
    case ErrorCode::no_propagating_mode: return "NoPropagatingMode";
    case ErrorCode::asymmetric_asymptotes: return "AsymmetricAsymptotes";
    case ErrorCode::phase_derivative_zero: return "PhaseDerivativeZero";
    case ErrorCode::tolerance_not_met: return "ToleranceNotMet";
    case ErrorCode::non_decaying_tail: return "NonDecayingTail";
    case ErrorCode::non_alternating_profile: return "NonAlternatingProfile";
    case ErrorCode::under_barrier: return "UnderBarrier";
    case ErrorCode::unsupported: return "Unsupported";
    case ErrorCode::invalid_config: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace sz1d
