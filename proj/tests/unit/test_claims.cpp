#include <numeric>

#include "doctest.h"
#include "holoforge/abelian.hpp"
#include "holoforge/claims.hpp"
#include "holoforge/error.hpp"

using namespace holoforge;

namespace {

// |Aut(C_{p^n} x C_p)| by counting generator images that give a bijection,
// using plain modular arithmetic on pairs.
std::uint64_t aut_count_rank2(std::uint64_t p, unsigned n) {
  const std::uint64_t q = ipow(p, n);
  std::uint64_t count = 0;
  std::vector<char> hit(q * p);
  for (std::uint64_t x1 = 0; x1 < q; ++x1)
    for (std::uint64_t x2 = 0; x2 < p; ++x2)
      for (std::uint64_t y1 = 0; y1 < q; y1 += q / p)
        for (std::uint64_t y2 = 0; y2 < p; ++y2) {
          std::fill(hit.begin(), hit.end(), 0);
          std::uint64_t distinct = 0;
          for (std::uint64_t i = 0; i < q; ++i)
            for (std::uint64_t j = 0; j < p; ++j) {
              std::uint64_t h = (i * x1 + j * y1) % q, t = (i * x2 + j * y2) % p;
              if (!hit[h * p + t]) {
                hit[h * p + t] = 1;
                ++distinct;
              }
            }
          if (distinct == q * p) ++count;
        }
  return count;
}

std::size_t relator_count(const std::string& id, const PaperParams& q, const std::string& in = "literal") {
  return paper_presentation(id, q, in).presentation.relators.size();
}

}  // namespace

TEST_CASE("modular helpers") {
  CHECK(mod_pow(3, 4, 7) == 4);
  CHECK(mod_pow(-1, 3, 9) == 8);
  CHECK(multiplicative_order(4, 9) == 3);
  CHECK(multiplicative_order(2, 9) == 6);
  CHECK(multiplicative_order(3, 9) == 0);
}

TEST_CASE("derived parameters") {
  auto a = PaperParams::derive(2, 3);
  CHECK(a.n1 == 8);
  CHECK(a.n2 == 2);
  CHECK(a.n3 == 4);
  CHECK(a.n4 == 1);
  CHECK(a.t == 4);
  CHECK(a.v == 4);
  CHECK(a.w == 1);
  CHECK(PaperParams::derive(2, 2).n4 == -1);

  auto b = PaperParams::derive(3, 2);
  CHECK(b.z == 3);
  CHECK(b.z1 == 1);
  CHECK(b.s == 2);
  CHECK(b.t_exp == 2);
  CHECK(b.ap == 7);
  CHECK(b.af == 4);
  CHECK(b.x_root == 8);
  CHECK(b.x2 == 3);
  CHECK(b.y_t5 == 6);
  CHECK(b.y1_t5 == 2);
  CHECK(b.yt == 4);

  auto c = PaperParams::derive(5, 2);
  CHECK(c.ap == 21);
  CHECK(c.t_exp == 3);
  CHECK(mod_pow(c.s, 4, 5) == 1);
  CHECK(multiplicative_order(c.x_root, 25) == 4);

  auto d = PaperParams::derive(2, 1, 4);
  CHECK(d.n1_t3 == 16);
  CHECK(d.n4_t3 == 2);
  CHECK_THROWS_AS(PaperParams::derive(4, 2), Error);
}

TEST_CASE("claim presentations") {
  auto e3 = paper_presentation("eq3", PaperParams::derive(2, 3));
  CHECK(e3.presentation.generator_count() == 4);
  CHECK(std::find(e3.presentation.relators.begin(), e3.presentation.relators.end(),
                  Word::generator(2, 2)) != e3.presentation.relators.end());

  auto t = paper_presentation("t_pres", PaperParams::derive(2, 1));
  CHECK(t.presentation.generator_count() == 4);
  CHECK(t.presentation.relators.size() == 14);

  auto e4 = paper_presentation("eq4", PaperParams::derive(2, 3));
  REQUIRE(e4.action.has_value());
  CHECK(e4.action->images[2][0] == Word::generator(0, -5));
  auto e4s = paper_presentation("eq4", PaperParams::derive(2, 3), "e-sign");
  CHECK(e4s.action->images[2][0] == Word::generator(0, 5));

  CHECK(relator_count("table3", PaperParams::derive(2, 1, 3)) + 1 == relator_count("table3", PaperParams::derive(2, 1, 4)));
  CHECK(relator_count("table3", PaperParams::derive(2, 1, 3), "t-relator-always") ==
        relator_count("table3", PaperParams::derive(2, 1, 4)));

  auto s9 = paper_presentation("s9_hol", PaperParams::derive(5, 2), "bc-swap");
  CHECK(s9.group->generator_count() == 2);
  CHECK(s9.aut->generator_count() == 6);
  CHECK(s9.presentation.generator_count() == 8);

  CHECK_THROWS_AS(paper_presentation("eq3", PaperParams::derive(2, 2)), Error);
  CHECK_THROWS_AS(paper_presentation("nope", PaperParams::derive(2, 3)), Error);
  CHECK_THROWS_AS(paper_presentation("eq3", PaperParams::derive(2, 3), "nope"), Error);
  CHECK(interpretations("table5").front() == "literal");
}

TEST_CASE("small presentation orders") {
  CHECK(todd_coxeter(paper_presentation("eq3", PaperParams::derive(2, 3)).presentation, {}).cosets ==
        aut_count_rank2(2, 3));
  CHECK(todd_coxeter(paper_presentation("s6_aut", PaperParams::derive(3, 2)).presentation, {}).cosets ==
        aut_count_rank2(3, 2));
}

TEST_CASE("aut oracle agrees with the library") {
  for (auto [p, n] : {std::pair<std::uint64_t, unsigned>{2, 3}, {2, 4}, {3, 2}, {3, 3}, {5, 2}})
    CHECK(automorphism_group(AbelianPGroup(p, n, 1)).order() == aut_count_rank2(p, n));
  CHECK(aut_count_rank2(3, 2) == 108);
  CHECK(aut_count_rank2(5, 2) == 2000);
}

TEST_CASE("claim ids") {
  CHECK(canonical_claim_id("s6_s7") == std::optional<std::string>("s6s7"));
  CHECK(canonical_claim_id("s6s7") == std::optional<std::string>("s6s7"));
  CHECK_FALSE(canonical_claim_id("s12").has_value());
  CHECK(claim_ids().size() == 10);
  CHECK_THROWS_AS(run_claim("s12", {}), Error);
  auto suite = default_suite(false);
  CHECK(std::none_of(suite.begin(), suite.end(), [](const SuiteEntry& e) { return e.long_running; }));
  auto full = default_suite(true);
  CHECK(full.size() == suite.size() + 1);
}

TEST_CASE("range guards are inconclusive") {
  CHECK(verify_s2_s3(2).status == ClaimStatus::kInconclusive);
  CHECK(verify_s4(2).status == ClaimStatus::kInconclusive);
  CHECK(verify_s5(2, 2).status == ClaimStatus::kInconclusive);
  CHECK(verify_s9(3, 2).status == ClaimStatus::kInconclusive);
  CHECK(verify_s10(2, 2, 2).status == ClaimStatus::kInconclusive);
  CHECK(verify_eq1({4, 4}).status == ClaimStatus::kInconclusive);
  CHECK(verify_eq1({6, 5}).status == ClaimStatus::kInconclusive);
  CHECK(verify_s11(2, 3).status == ClaimStatus::kInconclusive);
  CHECK_THROWS_AS(verify_s1(4, 2), Error);
}

TEST_CASE("short claims") {
  auto s1 = verify_s1(2, 2);
  CHECK(s1.status == ClaimStatus::kPass);
  CHECK(s1.order("hol") == 8);

  auto s23 = verify_s2_s3(3);
  CHECK(s23.status == ClaimStatus::kPass);
  CHECK(s23.interpretation == "e-sign");
  CHECK(s23.order("eq3_presentation") == aut_count_rank2(2, 3));

  auto s67 = verify_s6_s7(2);
  CHECK(s67.status == ClaimStatus::kPass);
  CHECK(s67.order("hol_presentation") == 27 * aut_count_rank2(3, 2));

  auto e = verify_eq1({4, 3});
  CHECK(e.status == ClaimStatus::kPass);
  CHECK(e.order("hol_product") == 48);

  CHECK(verify_s11(1, 3).order("classes") == 2);
}

TEST_CASE("budget exhaustion is inconclusive") {
  ClaimOptions opt;
  opt.limits.coset_budget = 200;
  CHECK(verify_s6_s7(2, opt).status == ClaimStatus::kInconclusive);
}

TEST_CASE("report serialization") {
  auto r = verify_eq1({2, 9});
  Json j = r.to_json();
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"id", "params", "status", "orders", "witness", "interpretation", "elapsed_ms"});
  CHECK(j["orders"]["computed"]["hol_product"] == 108);
  CHECK(j["status"] == "pass");
  CHECK(j["witness"]["checks"].is_array());
  CHECK(r.to_text().find("pass") != std::string::npos);

  auto again = verify_eq1({2, 9}).to_json();
  again["elapsed_ms"] = j["elapsed_ms"];
  CHECK(again == j);
}
