#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "holoforge/fpgroup.hpp"
#include "holoforge/limits.hpp"

namespace holoforge {

using Json = nlohmann::ordered_json;

/// Every numeric quantity the presentations are written in, derived from
/// (p, n, m). Values that are not integral for the given n are -1.
struct PaperParams {
  std::int64_t p = 2;
  std::int64_t n = 1;
  std::int64_t m = 0;

  std::int64_t n1 = -1, n2 = -1, n3 = -1, n4 = -1;        // 2^n family
  std::int64_t x = -1, y = -1, t = -1, v = -1, w = -1;    // two-group alternative form
  std::int64_t z = -1, z1 = -1, s = -1, t_exp = -1;       // Aut(C_{p^n} x C_p)
  std::int64_t tt = -1, ap = -1, af = -1, x_root = -1, y1 = -1;
  std::int64_t x2 = -1, y_t5 = -1, y1_t5 = -1, yt = -1;   // three-group alternative form
  std::int64_t n1_t3 = -1, n2_t3 = -1, n3_t3 = -1, n4_t3 = -1;  // C_{2^m} x 1^2

  static PaperParams derive(std::int64_t p, std::int64_t n, std::int64_t m = 0);
  Json to_json() const;
};

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t mod);
/// Multiplicative order of u modulo `mod`; 0 when u is not a unit.
std::int64_t multiplicative_order(std::int64_t u, std::int64_t mod);

/// A claim presentation with every parameter substituted. Ids with
/// action data also carry the group part, the automorphism part and the table.
struct PaperPresentation {
  std::string id;
  std::string interpretation;
  Presentation presentation;
  std::optional<Presentation> group;
  std::optional<Presentation> aut;
  std::optional<ActionTable> action;
};

/// Readings of a presentation in the order they are tried; the first is the
/// text as printed.
std::vector<std::string> interpretations(const std::string& id);

/// Throws kUnknownClaim for an unknown id or interpretation and kOutOfRange
/// when the parameters make the presentation meaningless.
PaperPresentation paper_presentation(const std::string& id, const PaperParams& params,
                                     const std::string& interpretation = "literal");

enum class ClaimStatus { kPass, kFail, kInconclusive };
const char* status_name(ClaimStatus s) noexcept;

struct ClaimCheck {
  std::string name;
  ClaimStatus status = ClaimStatus::kInconclusive;
  std::string detail;
};

struct ClaimReport {
  std::string id;
  Json params = Json::object();
  ClaimStatus status = ClaimStatus::kInconclusive;
  std::vector<std::pair<std::string, std::uint64_t>> orders;
  std::vector<ClaimCheck> checks;
  Json witness;  // null when no witness was produced
  std::string interpretation;
  std::vector<std::string> notes;
  double elapsed_ms = 0;

  std::uint64_t order(const std::string& key) const;
  const ClaimCheck* check(const std::string& name) const;
  Json to_json() const;
  std::string to_text() const;
};

struct ClaimOptions {
  Limits limits = default_limits();
  bool allow_long = false;
  std::function<void(const std::string&)> progress;
};

ClaimReport verify_s1(std::int64_t p, std::int64_t n, const ClaimOptions& opt = {});
ClaimReport verify_s2_s3(std::int64_t n, const ClaimOptions& opt = {});
ClaimReport verify_s4(std::int64_t n, const ClaimOptions& opt = {});
ClaimReport verify_s5(std::int64_t m, std::int64_t rank, const ClaimOptions& opt = {});
ClaimReport verify_s6_s7(std::int64_t n, const ClaimOptions& opt = {});
ClaimReport verify_s8(std::int64_t n, const ClaimOptions& opt = {});
ClaimReport verify_s9(std::int64_t p, std::int64_t n, const ClaimOptions& opt = {});
ClaimReport verify_s10(std::int64_t p, std::int64_t m, std::int64_t n, const ClaimOptions& opt = {});
ClaimReport verify_s11(std::int64_t n, std::int64_t p, const ClaimOptions& opt = {});
ClaimReport verify_eq1(const std::vector<std::uint64_t>& factors, const ClaimOptions& opt = {});

/// Arguments for run_claim; each claim reads the fields it needs.
struct ClaimArgs {
  std::optional<std::int64_t> p, n, m, rank;
  std::vector<std::uint64_t> factors;
};

/// Canonical claim id for an accepted spelling ("s6s7" and "s6_s7" alike).
std::optional<std::string> canonical_claim_id(const std::string& id);
std::vector<std::string> claim_ids();
/// Fills unset arguments with the claim's default instance.
ClaimReport run_claim(const std::string& id, const ClaimArgs& args, const ClaimOptions& opt = {});

struct SuiteEntry {
  std::string id;
  ClaimArgs args;
  bool long_running = false;
};
std::vector<SuiteEntry> default_suite(bool include_long);

}  // namespace holoforge
