// Command-line front end over the C API.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "holoforge.h"
#include "json.hpp"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;
constexpr int kExitInconclusive = 3;

struct Config {
  std::string format = "text";
  std::string out;
  std::optional<std::uint64_t> budget;
  bool long_tests = false;
  bool quiet = false;
  bool generators = false;
};

struct Failure {
  hf_status status;
  std::string message;
};

void check(hf_status s) {
  if (s != HF_OK) throw Failure{s, hf_last_error()};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  hf_string_free(s);
  return out;
}

struct ReportDeleter {
  void operator()(hf_report* r) const { hf_report_free(r); }
};
using ReportPtr = std::unique_ptr<hf_report, ReportDeleter>;

void progress_line(const char* msg, void*) { std::fprintf(stderr, "progress: %s\n", msg); }

class Output {
 public:
  explicit Output(const Config& cfg) : cfg_(cfg) {}
  std::ostream& stream() { return buf_; }
  void flush() {
    if (cfg_.out.empty()) {
      std::cout << buf_.str();
      return;
    }
    std::ofstream f(cfg_.out);
    if (!f) throw Failure{HF_ERR_INVALID_ARGUMENT, "cannot write " + cfg_.out};
    f << buf_.str();
  }

 private:
  const Config& cfg_;
  std::ostringstream buf_;
};

bool json_format(const Config& cfg) { return cfg.format == "json"; }

int verdict_exit(hf_verdict v) {
  switch (v) {
    case HF_VERDICT_PASS:
      return kExitPass;
    case HF_VERDICT_FAIL:
      return kExitFail;
    default:
      return kExitInconclusive;
  }
}

ReportPtr run(const Config& cfg, const std::string& id, const Json& args, bool allow_long) {
  hf_report* r = nullptr;
  check(hf_claim_run(id.c_str(), args.dump().c_str(), allow_long ? 1 : 0,
                     cfg.quiet ? nullptr : progress_line, nullptr, &r));
  return ReportPtr(r);
}

int cmd_order(const Config& cfg, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Failure{HF_ERR_INVALID_ARGUMENT, "cannot read " + path};
  std::stringstream text;
  text << f.rdbuf();
  hf_presentation* p = nullptr;
  check(hf_presentation_parse(text.str().c_str(), &p));
  std::unique_ptr<hf_presentation, void (*)(hf_presentation*)> hold(p, hf_presentation_free);
  std::size_t gens = 0, rels = 0;
  std::uint64_t order = 0;
  check(hf_presentation_generator_count(p, &gens));
  check(hf_presentation_relator_count(p, &rels));
  check(hf_presentation_order(p, &order));
  Output out(cfg);
  if (json_format(cfg))
    out.stream() << Json{{"file", path}, {"generators", gens}, {"relators", rels}, {"order", order}}.dump(2) << '\n';
  else
    out.stream() << order << '\n';
  out.flush();
  return kExitPass;
}

int cmd_group(const Config& cfg, const std::string& spec, bool with_hol) {
  std::uint64_t g = 0, a = 0, h = 0;
  check(hf_abelian_orders(spec.c_str(), &g, &a, &h));
  Json gens;
  if (cfg.generators) {
    hf_group* grp = nullptr;
    check(with_hol ? hf_holomorph(spec.c_str(), &grp) : hf_automorphism_group(spec.c_str(), &grp));
    std::unique_ptr<hf_group, void (*)(hf_group*)> hold(grp, hf_group_free);
    char* s = nullptr;
    check(hf_group_generators_json(grp, &s));
    gens = Json::parse(take(s));
  }
  Output out(cfg);
  if (json_format(cfg)) {
    Json j{{"spec", spec}, {"order", g}, {"aut_order", a}};
    if (with_hol) j["hol_order"] = h;
    if (cfg.generators) j["generators"] = gens;
    out.stream() << j.dump(2) << '\n';
  } else {
    out.stream() << "|G| = " << g << "\n|Aut(G)| = " << a << '\n';
    if (with_hol) out.stream() << "|Hol(G)| = " << h << '\n';
    if (cfg.generators)
      for (const auto& x : gens) out.stream() << "  " << x.get<std::string>() << '\n';
  }
  out.flush();
  return kExitPass;
}

int emit_report(const Config& cfg, hf_report* r) {
  char* s = nullptr;
  Output out(cfg);
  if (json_format(cfg)) {
    check(hf_report_json(r, &s));
    out.stream() << Json::parse(take(s)).dump(2) << '\n';
  } else {
    check(hf_report_text(r, &s));
    out.stream() << take(s);
  }
  out.flush();
  hf_verdict v;
  check(hf_report_verdict(r, &v));
  return verdict_exit(v);
}

int cmd_suite(const Config& cfg) {
  char* s = nullptr;
  check(hf_suite_json(cfg.long_tests ? 1 : 0, &s));
  Json entries = Json::parse(take(s));
  Json reports = Json::array();
  std::string text;
  int pass = 0, fail = 0, open = 0;
  for (const auto& e : entries) {
    auto r = run(cfg, e["id"].get<std::string>(), e["args"], e["long"].get<bool>());
    char* js = nullptr;
    check(hf_report_json(r.get(), &js));
    reports.push_back(Json::parse(take(js)));
    char* ts = nullptr;
    check(hf_report_text(r.get(), &ts));
    text += take(ts);
    hf_verdict v;
    check(hf_report_verdict(r.get(), &v));
    (v == HF_VERDICT_PASS ? pass : v == HF_VERDICT_FAIL ? fail : open)++;
  }
  const char* status = fail ? "fail" : open ? "inconclusive" : "pass";
  Output out(cfg);
  if (json_format(cfg)) {
    Json j{{"status", status},
           {"summary", {{"pass", pass}, {"fail", fail}, {"inconclusive", open}}},
           {"reports", reports}};
    out.stream() << j.dump(2) << '\n';
  } else {
    out.stream() << text << "suite: " << status << " (" << pass << " pass, " << fail << " fail, "
                 << open << " inconclusive)\n";
  }
  out.flush();
  return fail ? kExitFail : open ? kExitInconclusive : kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"holomorph presentation verifier"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", cfg.out, "write output to this path");
  app.add_option("--budget", cfg.budget, "live-coset budget (overrides HOLOFORGE_BUDGET)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--long", cfg.long_tests, "enable long-running searches");
  app.add_flag("--quiet", cfg.quiet, "suppress progress lines");

  std::string path, spec, id;
  auto* order = app.add_subcommand("order", "coset enumeration of a presentation file");
  order->add_option("file", path)->required();

  auto* aut = app.add_subcommand("aut", "order of Aut(G) for a group spec");
  aut->add_option("spec", spec)->required();
  aut->add_flag("--generators", cfg.generators, "list generators");
  auto* hol = app.add_subcommand("hol", "orders of G, Aut(G) and Hol(G)");
  hol->add_option("spec", spec)->required();
  hol->add_flag("--generators", cfg.generators, "list generators");

  std::optional<std::int64_t> p, n, m, rank;
  std::vector<std::uint64_t> factors;
  auto* verify = app.add_subcommand("verify", "verify one claim");
  verify->add_option("id", id)->required();
  verify->add_option("--p", p);
  verify->add_option("--n", n);
  verify->add_option("--m", m);
  verify->add_option("--rank", rank);
  verify->add_option("--factors", factors)->delimiter(',');

  auto* suite = app.add_subcommand("suite", "run the default suite");

  std::int64_t cn = 1, cp = 3;
  auto* classes = app.add_subcommand("classes", "conjugacy classes of AGL(n,p) in GL(n+1,p)");
  classes->add_option("--n", cn)->required();
  classes->add_option("--p", cp)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }

  try {
    if (cfg.budget) check(hf_set_coset_budget(*cfg.budget));
    if (*order) return cmd_order(cfg, path);
    if (*aut) return cmd_group(cfg, spec, false);
    if (*hol) return cmd_group(cfg, spec, true);
    if (*suite) return cmd_suite(cfg);
    Json args = Json::object();
    if (*classes) {
      args["n"] = cn;
      args["p"] = cp;
      auto r = run(cfg, "s11", args, cfg.long_tests);
      return emit_report(cfg, r.get());
    }
    if (p) args["p"] = *p;
    if (n) args["n"] = *n;
    if (m) args["m"] = *m;
    if (rank) args["rank"] = *rank;
    if (!factors.empty()) args["factors"] = factors;
    auto r = run(cfg, id, args, cfg.long_tests);
    return emit_report(cfg, r.get());
  } catch (const Failure& f) {
    std::cerr << "error: " << hf_status_name(f.status) << ": " << f.message << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}
