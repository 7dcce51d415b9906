#include <cstdlib>
#include <mutex>
#include <string>

#include "holoforge/error.hpp"
#include "holoforge/limits.hpp"

namespace holoforge {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kDegreeMismatch: return "degree_mismatch";
    case ErrorCode::kThresholdExceeded: return "threshold_exceeded";
    case ErrorCode::kBudgetExhausted: return "budget_exhausted";
    case ErrorCode::kParseError: return "parse_error";
    case ErrorCode::kUndeclaredGenerator: return "undeclared_generator";
    case ErrorCode::kNotSubgroup: return "not_subgroup";
    case ErrorCode::kNotNormal: return "not_normal";
    case ErrorCode::kOutOfRange: return "out_of_range";
    case ErrorCode::kUnknownClaim: return "unknown_claim";
    case ErrorCode::kInternal: return "internal";
  }
  return "unknown";
}

Limits& default_limits() {
  static Limits lim;
  static std::once_flag once;
  std::call_once(once, [] {
    if (const char* env = std::getenv("HOLOFORGE_BUDGET")) {
      try {
        long long v = std::stoll(env);
        if (v > 0) lim.coset_budget = static_cast<std::uint64_t>(v);
      } catch (const std::exception&) {
      }
    }
  });
  return lim;
}

}  // namespace holoforge
