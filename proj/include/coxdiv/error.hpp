#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace coxdiv {

enum class ErrorCode {
  unsupported_label,
  invalid_matrix,
  closure_overflow,
  arithmetic_overflow,
  same_wall,
  too_large,
  spherical_system,
  memory_budget,
  non_transitive_unsupported,
  span_budget,
  det_violation,
  config,
  io,
  parse,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::unsupported_label: return "UNSUPPORTED_LABEL";
    case ErrorCode::invalid_matrix: return "INVALID_MATRIX";
    case ErrorCode::closure_overflow: return "CLOSURE_OVERFLOW";
    case ErrorCode::arithmetic_overflow: return "ARITHMETIC_OVERFLOW";
    case ErrorCode::same_wall: return "SAME_WALL";
    case ErrorCode::too_large: return "TOO_LARGE";
    case ErrorCode::spherical_system: return "SPHERICAL_SYSTEM";
    case ErrorCode::memory_budget: return "MEMORY_BUDGET";
    case ErrorCode::non_transitive_unsupported: return "NON_TRANSITIVE_UNSUPPORTED";
    case ErrorCode::span_budget: return "SPAN_BUDGET";
    case ErrorCode::det_violation: return "DET_VIOLATION";
    case ErrorCode::config: return "CONFIG";
    case ErrorCode::io: return "IO";
    case ErrorCode::parse: return "PARSE";
  }
  return "UNKNOWN";
}

/// Library-wide exception. Every failure carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace coxdiv
