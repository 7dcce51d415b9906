#include <set>

#include "doctest.h"
#include "holoforge/abelian.hpp"
#include "holoforge/error.hpp"

using namespace holoforge;

namespace {

// Independent count: all generator-image tuples whose induced map on the
// full element list is a bijection.
std::uint64_t brute_force_aut_count(const AbelianPGroup& g) {
  auto elems = enumerate_elements(g);
  std::uint64_t count = 0;
  std::vector<std::size_t> pos(g.rank(), 0);
  for (;;) {
    EndoMatrix e;
    for (auto k : pos) e.images.push_back(elems[k]);
    if (is_well_defined(g, e)) {
      std::set<std::uint64_t> seen;
      for (const auto& x : elems) seen.insert(element_index(g, apply(g, e, x)));
      if (seen.size() == elems.size()) ++count;
    }
    std::size_t k = g.rank();
    while (k-- > 0) {
      if (++pos[k] < elems.size()) break;
      pos[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return count;
}

PermGroup symmetric4() {
  return PermGroup(4, {Permutation::from_cycles(4, {{0, 1}}),
                       Permutation::from_cycles(4, {{0, 1, 2, 3}})});
}

}  // namespace

TEST_CASE("element encoding") {
  AbelianPGroup c2(2, 1, 0);
  auto e2 = enumerate_elements(c2);
  REQUIRE(e2.size() == 2);
  CHECK(e2[0].head == 0);
  CHECK(e2[1].head == 1);
  AbelianPGroup g(2, 2, 1);
  auto e = enumerate_elements(g);
  REQUIRE(e.size() == 8);
  CHECK(e[1] == AbElement{0, {1}});
  CHECK(e[2] == AbElement{1, {0}});
  for (std::uint64_t i = 0; i < e.size(); ++i) CHECK(element_index(g, e[i]) == i);
  CHECK(enumerate_elements(AbelianPGroup(3, 2, 1)).size() == 27);
  CHECK(element_order(g, AbElement{2, {1}}) == 2);
  CHECK(element_order(g, AbElement{1, {1}}) == 4);
  CHECK_THROWS_AS(AbelianPGroup(4, 1, 1), Error);
}

TEST_CASE("automorphism groups against brute force") {
  CHECK(automorphism_group(AbelianPGroup(2, 1, 1)).order() == 6);
  CHECK(automorphism_group(AbelianPGroup(2, 3, 1)).order() == 16);
  CHECK(automorphism_group(AbelianPGroup(3, 2, 1)).order() == 108);
  for (auto g : {AbelianPGroup(2, 3, 1), AbelianPGroup(3, 2, 1), AbelianPGroup(2, 2, 2),
                 AbelianPGroup(5, 1, 1), AbelianPGroup(2, 4, 0)})
    CHECK(automorphism_group(g).order() == brute_force_aut_count(g));
  AbelianPGroup g(2, 2, 2);
  auto aut = automorphism_group(g);
  for (const auto& s : aut.generators()) {
    CHECK(s[0] == 0);
    for (std::uint64_t i = 0; i < g.order(); ++i)
      CHECK(element_order(g, element_at(g, i)) == element_order(g, element_at(g, s[i])));
  }
  // Head exponent 1 gives GL(m+1, p).
  CHECK(automorphism_group(AbelianPGroup(2, 1, 2)).order() == 168);
  CHECK(automorphism_group(AbelianPGroup(3, 1, 1)).order() == 48);
}

TEST_CASE("holomorphs") {
  CHECK(holomorph(AbelianPGroup(3, 1, 0)).order() == 6);
  PermGroup k4 = holomorph(AbelianPGroup(2, 1, 1));
  CHECK(k4.order() == 24);
  CHECK(is_isomorphic(k4, symmetric4()).has_value());
  CHECK(holomorph(AbelianPGroup(2, 3, 1)).order() == 256);
  CHECK(holomorph_cyclic(2).order() == 2);
  CHECK(holomorph_cyclic(9).order() == 54);
  CHECK(holomorph_cyclic(8).order() == 32);
  CHECK_THROWS_AS(holomorph_cyclic(12), Error);
  AbelianPGroup g(3, 2, 1);
  PermGroup hol = holomorph(g);
  auto tr = translation_generators(g);
  PermGroup t(g.order(), tr);
  CHECK(t.order() == g.order());
  CHECK(is_normal(t, hol));
  // Transitive of order |G|, hence regular.
  CHECK(t.chain().levels.at(0).orbit.size() == g.order());
}

TEST_CASE("cyclic holomorphs and coprime products") {
  CHECK(cyclic_holomorph(12).order() == 48);
  CHECK(cyclic_holomorph(9).order() == 54);
  CHECK(coprime_holomorph_product({4, 3}).order() == 48);
  CHECK(coprime_holomorph_product({2, 9}).order() == 108);
  CHECK(coprime_holomorph_product({4}).order() == 8);
  CHECK_THROWS_AS(coprime_holomorph_product({4, 4}), Error);
  CHECK(is_isomorphic(cyclic_holomorph(8), holomorph_cyclic(8)).has_value());
}

TEST_CASE("group specs") {
  CHECK(parse_group_spec("C(8)xC(2)") == std::vector<std::uint64_t>{8, 2});
  CHECK(parse_group_spec("C(9)xC(3)^2") == std::vector<std::uint64_t>{9, 3, 3});
  CHECK(parse_group_spec("C(2)^2") == std::vector<std::uint64_t>{2, 2});
  CHECK_THROWS_AS(parse_group_spec("C(8)x"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("D(8)"), ParseError);
  auto g = as_abelian_p_group({2, 2});
  REQUIRE(g.has_value());
  CHECK((g->p == 2 && g->n == 1 && g->m == 1));
  auto h = as_abelian_p_group({3, 9, 3});
  REQUIRE(h.has_value());
  CHECK((h->p == 3 && h->n == 2 && h->m == 2));
  CHECK_FALSE(as_abelian_p_group({4, 4}).has_value());
  CHECK_FALSE(as_abelian_p_group({12}).has_value());
}
