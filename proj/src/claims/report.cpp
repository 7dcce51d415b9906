#include <sstream>

#include "holoforge/claims.hpp"
#include "holoforge/error.hpp"

namespace holoforge {

const char* status_name(ClaimStatus s) noexcept {
  switch (s) {
    case ClaimStatus::kPass:
      return "pass";
    case ClaimStatus::kFail:
      return "fail";
    case ClaimStatus::kInconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

std::uint64_t ClaimReport::order(const std::string& key) const {
  for (const auto& [k, v] : orders)
    if (k == key) return v;
  return 0;
}

const ClaimCheck* ClaimReport::check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

Json ClaimReport::to_json() const {
  Json j = Json::object();
  j["id"] = id;
  j["params"] = params;
  j["status"] = status_name(status);
  Json computed = Json::object();
  for (const auto& [k, v] : orders) computed[k] = v;
  j["orders"] = {{"computed", computed}};
  Json w = Json::object();
  Json cj = Json::array();
  for (const auto& c : checks)
    cj.push_back({{"name", c.name}, {"status", status_name(c.status)}, {"detail", c.detail}});
  w["checks"] = cj;
  w["notes"] = notes;
  if (witness.is_object())
    for (const auto& [k, v] : witness.items()) w[k] = v;
  j["witness"] = w;
  j["interpretation"] = interpretation;
  j["elapsed_ms"] = static_cast<std::int64_t>(elapsed_ms + 0.5);
  return j;
}

std::string ClaimReport::to_text() const {
  std::ostringstream os;
  os << id;
  for (const auto& [k, v] : params.items()) os << ' ' << k << '=' << v.dump();
  os << ": " << status_name(status) << " (" << interpretation << ", "
     << static_cast<std::int64_t>(elapsed_ms + 0.5) << " ms)\n";
  if (!orders.empty()) {
    os << "  orders:";
    for (const auto& [k, v] : orders) os << ' ' << k << '=' << v;
    os << '\n';
  }
  for (const auto& c : checks) os << "  [" << status_name(c.status) << "] " << c.name << ": " << c.detail << '\n';
  for (const auto& n : notes) os << "  note: " << n << '\n';
  return os.str();
}

std::vector<std::string> claim_ids() {
  return {"s1", "s2s3", "s4", "s5", "s6s7", "s8", "s9", "s10", "s11", "eq1"};
}

std::optional<std::string> canonical_claim_id(const std::string& id) {
  if (id == "s6_s7") return "s6s7";
  if (id == "s2_s3") return "s2s3";
  for (const auto& c : claim_ids())
    if (c == id) return c;
  return std::nullopt;
}

ClaimReport run_claim(const std::string& raw, const ClaimArgs& a, const ClaimOptions& opt) {
  auto id = canonical_claim_id(raw);
  if (!id) throw Error(ErrorCode::kUnknownClaim, "unknown claim " + raw);
  if (*id == "s1") return verify_s1(a.p.value_or(3), a.n.value_or(2), opt);
  if (*id == "s2s3") return verify_s2_s3(a.n.value_or(3), opt);
  if (*id == "s4") return verify_s4(a.n.value_or(3), opt);
  if (*id == "s5") return verify_s5(a.m.value_or(3), a.rank.value_or(2), opt);
  if (*id == "s6s7") return verify_s6_s7(a.n.value_or(2), opt);
  if (*id == "s8") return verify_s8(a.n.value_or(2), opt);
  if (*id == "s9") return verify_s9(a.p.value_or(5), a.n.value_or(2), opt);
  if (*id == "s10") return verify_s10(a.p.value_or(2), a.m.value_or(3), a.n.value_or(2), opt);
  if (*id == "s11") return verify_s11(a.n.value_or(1), a.p.value_or(3), opt);
  return verify_eq1(a.factors.empty() ? std::vector<std::uint64_t>{4, 3} : a.factors, opt);
}

namespace {

using Opt = std::optional<std::int64_t>;

ClaimArgs args(Opt p, Opt n, Opt m = std::nullopt, Opt rank = std::nullopt) {
  ClaimArgs a;
  a.p = p;
  a.n = n;
  a.m = m;
  a.rank = rank;
  return a;
}

ClaimArgs factors(std::vector<std::uint64_t> f) {
  ClaimArgs a;
  a.factors = std::move(f);
  return a;
}

}  // namespace

std::vector<SuiteEntry> default_suite(bool include_long) {
  std::vector<SuiteEntry> s;
  auto add = [&](std::string id, ClaimArgs a, bool long_running = false) {
    s.push_back({std::move(id), std::move(a), long_running});
  };
  const Opt none;
  for (auto [p, n] : {std::pair{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {5, 2}}) add("s1", args(p, n));
  for (int n : {3, 4}) add("s2s3", args(none, n));
  for (int n : {3, 4}) add("s4", args(none, n));
  for (int m : {3, 4}) add("s5", args(none, none, m, 2));
  add("s5", args(none, none, 3, 3));
  for (int n : {2, 3}) add("s6s7", args(none, n));
  for (int n : {2, 3}) add("s8", args(none, n));
  add("s9", args(5, 2));
  add("s10", args(2, 2, 3));
  add("s10", args(3, 1, 2));
  for (int p : {3, 5, 7}) add("s11", args(p, 1));
  if (include_long) add("s11", args(3, 2), true);
  add("eq1", factors({4, 3}));
  add("eq1", factors({2, 9}));
  return s;
}

}  // namespace holoforge
