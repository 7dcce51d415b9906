#include <algorithm>
#include <set>

#include "doctest.h"
#include "holoforge/error.hpp"
#include "holoforge/matgf.hpp"

using namespace holoforge;

namespace {

// Closure using matrix arithmetic only.
std::set<MatGF> matrix_closure(const std::vector<MatGF>& gens) {
  std::set<MatGF> seen{MatGF::identity(gens[0].dim(), gens[0].prime())};
  std::vector<MatGF> queue(seen.begin(), seen.end());
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto& g : gens) {
      MatGF x = queue[i] * g;
      if (seen.insert(x).second) queue.push_back(x);
    }
  return seen;
}

MatGF mat_pow(const MatGF& m, std::int64_t k) {
  MatGF base = k < 0 ? m.inverse() : m;
  MatGF acc = MatGF::identity(m.dim(), m.prime());
  for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) acc = acc * base;
  return acc;
}

MatGF eval(const Word& w, const std::vector<MatGF>& imgs) {
  MatGF acc = MatGF::identity(imgs[0].dim(), imgs[0].prime());
  for (const auto& s : w.syllables()) acc = acc * mat_pow(imgs[s.gen], s.exp);
  return acc;
}

// Conjugacy classes of subgroups of GL(2, p) isomorphic to AGL(1, p), found
// from pairs of matrices with GL enumerated directly.
std::size_t brute_force_agl1_classes(std::uint32_t p) {
  auto pattern = agl_pattern(1, p);
  auto gl = enumerate_gl(2, p);
  std::set<std::set<MatGF>> subgroups;
  for (const auto& t : gl) {
    if (mat_pow(t, p) != MatGF::identity(2, p) || t == MatGF::identity(2, p)) continue;
    for (const auto& m : gl) {
      std::vector<MatGF> imgs{t, m};
      bool ok = std::all_of(pattern.presentation.relators.begin(),
                             pattern.presentation.relators.end(), [&](const Word& r) {
                               return eval(r, imgs) == MatGF::identity(2, p);
                             });
      if (!ok) continue;
      auto h = matrix_closure(imgs);
      if (h.size() == pattern.order) subgroups.insert(std::move(h));
    }
  }
  std::size_t classes = 0;
  std::set<std::set<MatGF>> done;
  for (const auto& h : subgroups) {
    if (done.count(h)) continue;
    ++classes;
    for (const auto& g : gl) {
      std::set<MatGF> c;
      MatGF gi = g.inverse();
      for (const auto& x : h) c.insert(gi * x * g);
      done.insert(std::move(c));
    }
  }
  return classes;
}

}  // namespace

TEST_CASE("matrix arithmetic") {
  MatGF a(2, 3, {1, 2, 0, 1});
  CHECK(a.det() == 1);
  CHECK(a * a.inverse() == MatGF::identity(2, 3));
  CHECK(mat_pow(a, 3) == MatGF::identity(2, 3));
  CHECK(a.apply_row({1, 0}) == std::vector<std::uint32_t>{1, 2});
  MatGF sing(2, 5, {1, 2, 2, 4});
  CHECK(sing.det() == 0);
  CHECK_THROWS(sing.inverse());
}

TEST_CASE("general linear group orders") {
  CHECK(gl_order(2, 2) == 6);
  CHECK(gl_order(3, 2) == 168);
  CHECK(gl_order(3, 3) == 11232);
  CHECK(gl_order(4, 2) == 20160);
  CHECK(enumerate_gl(1, 3).size() == 2);
  CHECK(enumerate_gl(2, 2).size() == 6);
  CHECK(enumerate_gl(2, 3).size() == 48);
  for (auto [n, p] : {std::pair<std::size_t, std::uint32_t>{2, 2}, {2, 3}, {2, 5}, {3, 2}}) {
    auto gens = gl_generators(n, p);
    CHECK(matrix_closure(gens).size() == gl_order(n, p));
    CHECK(matrix_group_to_perm(MatrixGroup(n, p, gens), VectorAction::kNonzero).order() ==
          gl_order(n, p));
  }
}

TEST_CASE("vector indexing round trips") {
  for (std::uint64_t i = 0; i < 27; ++i) CHECK(vector_index(vector_at(i, 3, 3), 3) == i);
  CHECK(vector_at(5, 3, 2) == std::vector<std::uint32_t>{1, 0, 1});
}

TEST_CASE("matrix perms multiply like matrices") {
  auto gl = enumerate_gl(2, 3);
  for (std::size_t i = 0; i < gl.size(); i += 5)
    for (std::size_t j = 0; j < gl.size(); j += 7)
      CHECK(matrix_to_perm(gl[i] * gl[j], VectorAction::kAll) ==
            matrix_to_perm(gl[i], VectorAction::kAll) * matrix_to_perm(gl[j], VectorAction::kAll));
}

TEST_CASE("t matrices") {
  auto t = t_matrices();
  for (const auto& m : t) {
    CHECK(m.dim() == 4);
    CHECK(m * m == MatGF::identity(4, 2));
  }
  CHECK(matrix_closure({t.begin(), t.end()}).size() == 1344);
}

TEST_CASE("affine groups") {
  CHECK(agl(1, 5).order() == 20);
  CHECK(agl(2, 3).order() == 432);
  CHECK(agl(3, 2).order() == 1344);
  CHECK(agl(4, 2).order() == 322560);
  auto t = t_matrices();
  PermGroup tg = matrix_group_to_perm(MatrixGroup(4, 2, {t.begin(), t.end()}),
                                      VectorAction::kNonzero);
  CHECK(is_isomorphic(tg, agl(3, 2)).has_value());
  std::vector<Point> cyc(42);
  for (Point i = 0; i < 42; ++i) cyc[i] = (i + 1) % 42;
  CHECK_FALSE(is_isomorphic(agl(1, 7), PermGroup(42, {Permutation(cyc)})).has_value());
}

TEST_CASE("primitive roots") {
  CHECK(smallest_primitive_root(2) == 1);
  CHECK(smallest_primitive_root(3) == 2);
  CHECK(smallest_primitive_root(7) == 3);
  CHECK(smallest_primitive_root(23) == 5);
}

TEST_CASE("affine patterns") {
  for (auto [n, p] : {std::pair<std::size_t, std::uint32_t>{1, 3}, {1, 7}, {2, 2}, {2, 3}}) {
    auto pat = agl_pattern(n, p);
    CHECK(pat.order == agl(n, p).order());
    CHECK(todd_coxeter(pat.presentation, {}).cosets == pat.order);
    for (const auto& r : pat.presentation.relators)
      CHECK(eval(r, pat.canonical_images) == MatGF::identity(n + 1, p));
    CHECK(matrix_closure(pat.canonical_images).size() == pat.order);
    for (const auto& m : pat.canonical_images) {
      std::vector<std::uint32_t> last(n + 1, 0);
      last[n] = 1;
      CHECK(m.apply_row(last) == last);
    }
  }
}

TEST_CASE("harvested presentations") {
  auto s3 = PermGroup(3, {Permutation::from_cycles(3, {{0, 1}}),
                          Permutation::from_cycles(3, {{0, 1, 2}})});
  auto pres = harvest_presentation(s3.generators(), {"x", "y"}, 6);
  CHECK(todd_coxeter(pres, {}).cosets == 6);
  CHECK(verify_images(pres, s3.generators()));
}

TEST_CASE("embedding classes of AGL(1, p)") {
  for (std::uint32_t p : {3u, 5u}) {
    auto pat = agl_pattern(1, p);
    auto classes = find_embedding_classes(pat.presentation, pat.order, 2, p);
    CHECK(classes.size() == brute_force_agl1_classes(p));
    std::uint64_t total = 0;
    for (const auto& c : classes) {
      CHECK(c.subgroup_order == pat.order);
      CHECK(matrix_closure(c.representative).size() == pat.order);
      total += c.class_size;
    }
    CHECK(total > 0);
    CHECK(embedding_class_of(classes, pat.canonical_images) >= 0);
  }
  auto pat = agl_pattern(1, 3);
  EmbeddingOptions opt;
  opt.node_budget = 3;
  CHECK_THROWS_AS(find_embedding_classes(pat.presentation, pat.order, 2, 3, opt), Error);
}
