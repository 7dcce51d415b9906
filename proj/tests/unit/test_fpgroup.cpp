#include "doctest.h"
#include "holoforge/error.hpp"
#include "holoforge/fpgroup.hpp"

using namespace holoforge;

namespace {

std::uint64_t coset_count(const std::string& text, CosetStrategy s = CosetStrategy::kHltLookahead) {
  CosetOptions opt;
  opt.strategy = s;
  return todd_coxeter(parse_presentation(text), {}, opt).cosets;
}

const char* kTPresentation =
    "gens: t1 t2 t3 t4\n"
    "rels: t1^2, t2^2, t3^2, t4^2, (t1,t2), (t1,t4), (t3*t4)^3, (t1*t4)^4,\n"
    "  (t1*t3*t2*t3)^2, (t2*t3)^4, (t2*t4)^4, (t2*t3*t4*t3)^3,\n"
    "  t1*t2*t4*t3*t1*t3*t4*t2*t4*t3*t1*t3*t4,\n"
    "  t2*t3*t2*t3*t4*t2*t4*t3*t2*t3*t4*t2*t4\n";

}  // namespace

TEST_CASE("words reduce freely") {
  Word a = Word::generator(0), b = Word::generator(1);
  CHECK((a * a.inverse()).empty());
  CHECK((a * b * b.inverse() * a).syllables() == std::vector<Syllable>{{0, 2}});
  CHECK(Word::commutator(a, b) == a.inverse() * b.inverse() * a * b);
  CHECK(a.conjugate(b) == b.inverse() * a * b);
  CHECK((a * b * a.inverse()).cyclically_reduced() == b);
  CHECK((a * b).pow(-2) == b.inverse() * a.inverse() * b.inverse() * a.inverse());
  CHECK((a.pow(3) * b.pow(-2)).length() == 5);
}

TEST_CASE("dsl parsing") {
  Word a = Word::generator(0), b = Word::generator(1);
  auto p = parse_presentation("gens: a; rels: a^4");
  CHECK(p.generator_count() == 1);
  CHECK(p.relators.size() == 1);
  auto q = parse_presentation("gens: c d; rels: c^4, d^2, c^d*c");
  REQUIRE(q.relators.size() == 3);
  CHECK(q.relators[2] == b.inverse() * a * b * a);
  auto r = parse_presentation("gens: a b\nrels: (a,b)");
  CHECK(r.relators[0] == a.inverse() * b.inverse() * a * b);
  auto s = parse_presentation("gens: a b\nrels: a^-2 b^(-3), a^(b*a), (a b)^2 a^(2)");
  CHECK(s.relators[0] == a.pow(-2) * b.pow(-3));
  CHECK(s.relators[1] == a.conjugate(b * a));
  CHECK(s.relators[2] == a * b * a * b * a.pow(2));
  auto multi = parse_presentation("gens: a, b\nrels: a^2\nrels:\n  b^3,\n  (a*b)^2\n");
  CHECK(multi.relators.size() == 3);
}

TEST_CASE("dsl errors carry locations") {
  try {
    parse_presentation("gens: a\nrels: a^4, b");
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(e.code() == ErrorCode::kUndeclaredGenerator);
    CHECK(e.line() == 2);
    CHECK(e.column() == 12);
  }
  try {
    parse_presentation("gens: a\nrels: a^^2");
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(e.code() == ErrorCode::kParseError);
    CHECK(e.line() == 2);
    CHECK(e.column() == 9);
  }
  CHECK_THROWS_AS(parse_presentation("rels: a"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: a; rels: (a,"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: a a"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: a; foo: a"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: a; rels: a $"), ParseError);
}

TEST_CASE("printer round-trips") {
  for (const char* text : {"gens: a; rels: a^4", "gens: a b\nrels: (a,b), a^(b^-1), (a*b^-1)^3",
                           "gens: x y z; rels:", kTPresentation}) {
    auto p = parse_presentation(text);
    auto printed = format_presentation(p);
    CHECK(parse_presentation(printed) == p);
    CHECK(format_presentation(parse_presentation(printed)) == printed);
  }
  auto p = parse_presentation("gens: a b; rels: (a,b)");
  CHECK(format_presentation(p) == "gens: a b\nrels: a^-1*b^-1*a*b\n");
}

TEST_CASE("coset enumeration") {
  for (auto s : {CosetStrategy::kHltLookahead, CosetStrategy::kFelsch}) {
    CHECK(coset_count("gens: a; rels: a^4", s) == 4);
    CHECK(coset_count("gens: a b; rels: a^3, b^2, (a*b)^2", s) == 6);
    CHECK(coset_count("gens: a b; rels: a^2, b^3, (a*b)^5", s) == 60);
    CHECK(coset_count("gens: a b; rels: a^2, b^3, (a*b)^7, (a,b)^4", s) == 168);
    CHECK(coset_count("gens: a b; rels: a^8, b^2, a^b*a", s) == 16);
    CHECK(coset_count(kTPresentation, s) == 1344);
  }
  CosetOptions tight;
  tight.budget = 50;
  CHECK_THROWS_AS(todd_coxeter(parse_presentation("gens: a b; rels: a^3"), {}, tight), Error);
  auto s3 = parse_presentation("gens: a b; rels: a^3, b^2, (a*b)^2");
  CHECK(todd_coxeter(s3, {Word::generator(1)}).cosets == 3);
  CHECK(todd_coxeter(s3, {Word::generator(0)}).cosets == 2);
}

TEST_CASE("coset count ignores relator order and rotation") {
  CHECK(coset_count("gens: a b; rels: (a*b)^2, b^2, a^3") == 6);
  CHECK(coset_count("gens: a b; rels: b*a*b*a, b^2, a^3") == 6);
}

TEST_CASE("regular representation and images") {
  auto p = parse_presentation("gens: a b; rels: a^3, b^2, (a*b)^2");
  PermGroup g = presentation_to_perm_group(p);
  CHECK(g.order() == 6);
  CHECK(verify_images(p, g.generators()));
  auto c2 = parse_presentation("gens: a; rels: a^2");
  CHECK(verify_images(c2, {Permutation::from_cycles(2, {{0, 1}})}));
  CHECK_FALSE(verify_images(c2, {Permutation::from_cycles(3, {{0, 1, 2}})}));
  CHECK_THROWS_AS(verify_images(c2, {}), Error);
  auto rep = faithful_representation(parse_presentation(kTPresentation), 1344);
  REQUIRE(rep.has_value());
  CHECK(rep->group.degree() < 1344);
  CHECK(rep->group.order() == 1344);
}

TEST_CASE("extending a presentation by an action") {
  auto c4 = parse_presentation("gens: a; rels: a^4");
  auto c2 = parse_presentation("gens: c; rels: c^2");
  ActionTable act{{{Word::generator(0, -1)}}};
  auto hol = extend_presentation(c4, c2, act);
  CHECK(hol.names == std::vector<std::string>{"a", "c"});
  CHECK(todd_coxeter(hol, {}).cosets == 8);
  auto trivial = parse_presentation("gens: u; rels: u");
  auto same = extend_presentation(c4, trivial, ActionTable{{{Word::generator(0)}}});
  CHECK(todd_coxeter(same, {}).cosets == 4);
  CHECK_THROWS_AS(extend_presentation(c4, c2, ActionTable{}), Error);
}
