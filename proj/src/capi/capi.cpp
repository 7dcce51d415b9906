#include <cstring>
#include <numeric>
#include <string>

#include "holoforge.h"
#include "holoforge/abelian.hpp"
#include "holoforge/claims.hpp"
#include "holoforge/error.hpp"
#include "holoforge/fpgroup.hpp"

struct hf_presentation {
  holoforge::Presentation p;
};

struct hf_group {
  holoforge::PermGroup g;
};

struct hf_report {
  holoforge::ClaimReport r;
};

namespace {

using namespace holoforge;

thread_local std::string last_error;

hf_status fail(hf_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

template <class F>
hf_status guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return HF_OK;
  } catch (const Error& e) {
    return fail(static_cast<hf_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(HF_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(HF_ERR_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void need(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

// Aut and Hol for a group spec: a C_{p^n} x C_p^m group, or a cyclic group
// given by one factor or by pairwise coprime factors.
struct Resolved {
  std::uint64_t order = 1;
  PermGroup aut, hol;
};

Resolved resolve(const char* spec) {
  need(spec, "spec");
  auto factors = parse_group_spec(spec);
  Resolved r;
  for (auto f : factors) r.order *= f;
  const Limits& lim = default_limits();
  if (auto g = as_abelian_p_group(factors)) {
    r.aut = automorphism_group(*g, lim);
    r.hol = holomorph(*g, lim);
    return r;
  }
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (std::size_t j = i + 1; j < factors.size(); ++j)
      if (std::gcd(factors[i], factors[j]) != 1)
        throw Error(ErrorCode::kInvalidArgument,
                    std::string("unsupported group spec ") + spec +
                        ": needs C_{p^n} x C_p^m or a cyclic group");
  if (r.order > lim.enumeration)
    throw Error(ErrorCode::kThresholdExceeded, "cyclic order exceeds enumeration threshold");
  r.hol = cyclic_holomorph(r.order, lim);
  std::vector<Permutation> units;
  for (std::uint64_t u = 2; u < r.order; ++u) {
    if (std::gcd(u, r.order) != 1) continue;
    std::vector<Point> img(r.order);
    for (std::uint64_t x = 0; x < r.order; ++x) img[x] = static_cast<Point>(x * u % r.order);
    units.emplace_back(std::move(img));
  }
  r.aut = PermGroup(r.order, std::move(units)).with_reduced_generators();
  return r;
}

}  // namespace

extern "C" {

const char* hf_version(void) { return "1.0.0"; }

const char* hf_status_name(hf_status status) {
  if (status == HF_OK) return "ok";
  if (status < HF_ERR_INVALID_ARGUMENT || status > HF_ERR_INTERNAL) return "unknown";
  return error_code_name(static_cast<ErrorCode>(status));
}

const char* hf_last_error(void) { return last_error.c_str(); }

void hf_string_free(char* s) { delete[] s; }

hf_status hf_set_coset_budget(uint64_t budget) {
  return guarded([&] {
    if (budget > 0) default_limits().coset_budget = budget;
  });
}

uint64_t hf_coset_budget(void) { return default_limits().coset_budget; }

hf_status hf_presentation_parse(const char* text, hf_presentation** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new hf_presentation{parse_presentation(text)};
  });
}

void hf_presentation_free(hf_presentation* p) { delete p; }

hf_status hf_presentation_generator_count(const hf_presentation* p, size_t* out) {
  return guarded([&] {
    need(p, "presentation");
    need(out, "out");
    *out = p->p.generator_count();
  });
}

hf_status hf_presentation_relator_count(const hf_presentation* p, size_t* out) {
  return guarded([&] {
    need(p, "presentation");
    need(out, "out");
    *out = p->p.relators.size();
  });
}

hf_status hf_presentation_order(const hf_presentation* p, uint64_t* out) {
  return guarded([&] {
    need(p, "presentation");
    need(out, "out");
    CosetOptions opt;
    opt.budget = default_limits().coset_budget;
    *out = todd_coxeter(p->p, {}, opt).cosets;
  });
}

hf_status hf_abelian_orders(const char* spec, uint64_t* order, uint64_t* aut_order,
                            uint64_t* hol_order) {
  return guarded([&] {
    auto r = resolve(spec);
    if (order) *order = r.order;
    if (aut_order) *aut_order = r.aut.order();
    if (hol_order) *hol_order = r.hol.order();
  });
}

hf_status hf_holomorph(const char* spec, hf_group** out) {
  return guarded([&] {
    need(out, "out");
    *out = new hf_group{resolve(spec).hol};
  });
}

hf_status hf_automorphism_group(const char* spec, hf_group** out) {
  return guarded([&] {
    need(out, "out");
    *out = new hf_group{resolve(spec).aut};
  });
}

void hf_group_free(hf_group* g) { delete g; }

hf_status hf_group_order(const hf_group* g, uint64_t* out) {
  return guarded([&] {
    need(g, "group");
    need(out, "out");
    *out = g->g.order();
  });
}

hf_status hf_group_degree(const hf_group* g, size_t* out) {
  return guarded([&] {
    need(g, "group");
    need(out, "out");
    *out = g->g.degree();
  });
}

hf_status hf_group_generators_json(const hf_group* g, char** out) {
  return guarded([&] {
    need(g, "group");
    need(out, "out");
    Json j = Json::array();
    for (const auto& x : g->g.generators()) j.push_back(x.to_cycle_string());
    *out = dup(j.dump());
  });
}

hf_status hf_claim_ids_json(char** out) {
  return guarded([&] {
    need(out, "out");
    *out = dup(Json(claim_ids()).dump());
  });
}

hf_status hf_claim_run(const char* id, const char* args_json, int allow_long,
                       hf_progress_fn progress, void* user, hf_report** out) {
  return guarded([&] {
    need(id, "id");
    need(out, "out");
    ClaimArgs a;
    if (args_json && *args_json) {
      Json j = Json::parse(args_json, nullptr, false);
      if (j.is_discarded() || !j.is_object())
        throw Error(ErrorCode::kInvalidArgument, "claim arguments must be a JSON object");
      auto opt_int = [&](const char* k, std::optional<std::int64_t>& dst) {
        if (!j.contains(k) || j[k].is_null()) return;
        if (!j[k].is_number_integer()) throw Error(ErrorCode::kInvalidArgument, std::string(k) + " must be an integer");
        dst = j[k].get<std::int64_t>();
      };
      opt_int("p", a.p);
      opt_int("n", a.n);
      opt_int("m", a.m);
      opt_int("rank", a.rank);
      if (j.contains("factors")) {
        if (!j["factors"].is_array()) throw Error(ErrorCode::kInvalidArgument, "factors must be an array");
        for (const auto& f : j["factors"]) {
          if (!f.is_number_unsigned()) throw Error(ErrorCode::kInvalidArgument, "factors must be positive integers");
          a.factors.push_back(f.get<std::uint64_t>());
        }
      }
    }
    ClaimOptions opt;
    opt.limits = default_limits();
    opt.allow_long = allow_long != 0;
    if (progress) opt.progress = [progress, user](const std::string& s) { progress(s.c_str(), user); };
    *out = new hf_report{run_claim(id, a, opt)};
  });
}

hf_status hf_suite_json(int include_long, char** out) {
  return guarded([&] {
    need(out, "out");
    Json arr = Json::array();
    for (const auto& e : default_suite(include_long != 0)) {
      Json args = Json::object();
      if (e.args.p) args["p"] = *e.args.p;
      if (e.args.n) args["n"] = *e.args.n;
      if (e.args.m) args["m"] = *e.args.m;
      if (e.args.rank) args["rank"] = *e.args.rank;
      if (!e.args.factors.empty()) args["factors"] = e.args.factors;
      arr.push_back({{"id", e.id}, {"args", args}, {"long", e.long_running}});
    }
    *out = dup(arr.dump());
  });
}

void hf_report_free(hf_report* r) { delete r; }

hf_status hf_report_verdict(const hf_report* r, hf_verdict* out) {
  return guarded([&] {
    need(r, "report");
    need(out, "out");
    switch (r->r.status) {
      case ClaimStatus::kPass:
        *out = HF_VERDICT_PASS;
        break;
      case ClaimStatus::kFail:
        *out = HF_VERDICT_FAIL;
        break;
      case ClaimStatus::kInconclusive:
        *out = HF_VERDICT_INCONCLUSIVE;
        break;
    }
  });
}

hf_status hf_report_json(const hf_report* r, char** out) {
  return guarded([&] {
    need(r, "report");
    need(out, "out");
    *out = dup(r->r.to_json().dump());
  });
}

hf_status hf_report_text(const hf_report* r, char** out) {
  return guarded([&] {
    need(r, "report");
    need(out, "out");
    *out = dup(r->r.to_text());
  });
}

}  // extern "C"
