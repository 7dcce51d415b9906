#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "holoforge/error.hpp"
#include "holoforge/perm.hpp"

namespace holoforge {

namespace {

Permutation diagonal(const Permutation& a, const Permutation& b) {
  std::vector<Point> img(a.degree() + b.degree());
  for (std::size_t x = 0; x < a.degree(); ++x) img[x] = a[static_cast<Point>(x)];
  for (std::size_t y = 0; y < b.degree(); ++y)
    img[a.degree() + y] = static_cast<Point>(b[static_cast<Point>(y)] + a.degree());
  return Permutation(std::move(img));
}

std::vector<Permutation> diagonal_gens(const std::vector<Permutation>& a,
                                       const std::vector<Permutation>& b, std::size_t n) {
  std::vector<Permutation> d;
  for (std::size_t i = 0; i < n; ++i) d.push_back(diagonal(a[i], b[i]));
  return d;
}

std::uint64_t chain_order(std::size_t degree, const std::vector<Permutation>& gens) {
  return build_stab_chain(degree, gens, std::nullopt, std::nullopt)->order();
}

bool chain_order_is(std::size_t degree, const std::vector<Permutation>& gens,
                    std::uint64_t expected) {
  auto c = build_stab_chain(degree, gens, std::nullopt, expected);
  return c && c->order() == expected;
}

std::uint64_t conjugacy_class_size(const Permutation& x, const std::vector<Permutation>& gens,
                                   std::uint64_t cap) {
  std::unordered_set<Permutation, PermutationHash> seen{x};
  std::vector<Permutation> queue{x};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto& s : gens) {
      Permutation y = queue[i].conjugate(s);
      if (seen.insert(y).second) {
        queue.push_back(std::move(y));
        if (queue.size() > cap) return cap + 1;
      }
    }
  return queue.size();
}

// Short words in a pair of generators whose orders must be preserved.
std::vector<Permutation> pair_words(const Permutation& x, const Permutation& y) {
  Permutation yi = y.inverse();
  return {x * y, x * yi, x * x * y, x * y * y, x.inverse() * yi * x * y, x * y * x * yi};
}

// Backtracking search for injective homomorphisms from <gens> into a target
// group given by its element index. Pruning: element orders, conjugacy class
// sizes, orders of short words, and certified homomorphism/injectivity of
// every prefix via the diagonal subgroup.
class HomSearch {
 public:
  using Visitor = std::function<bool(const std::vector<Permutation>&)>;

  HomSearch(const PermGroup& source, std::vector<Permutation> gens, const PermGroup& target,
            const ElementIndex& target_elems, bool reps_only_at_first)
      : source_(source),
        gens_(std::move(gens)),
        target_(target),
        elems_(target_elems),
        reps_only_(reps_only_at_first) {
    std::uint64_t n = source_.order();
    for (std::size_t j = 0; j < gens_.size(); ++j) {
      orders_.push_back(gens_[j].order());
      class_sizes_.push_back(conjugacy_class_size(gens_[j], source_.generators(), n));
      std::vector<Permutation> prefix(gens_.begin(), gens_.begin() + static_cast<long>(j) + 1);
      prefix_orders_.push_back(chain_order(source_.degree(), prefix));
      std::vector<std::vector<std::uint64_t>> row;
      for (std::size_t i = 0; i < j; ++i) {
        std::vector<std::uint64_t> w;
        for (const auto& p : pair_words(gens_[i], gens_[j])) w.push_back(p.order());
        row.push_back(std::move(w));
      }
      word_orders_.push_back(std::move(row));
    }
    const auto& cid = elems_.class_ids();
    const auto& csz = elems_.class_sizes();
    std::vector<bool> rep_seen(csz.size(), false);
    for (std::size_t j = 0; j < gens_.size(); ++j) {
      std::vector<std::uint32_t> cand;
      for (std::size_t e = 0; e < elems_.size(); ++e) {
        if (elems_.element_order(e) != orders_[j] || csz[cid[e]] != class_sizes_[j]) continue;
        if (j == 0 && reps_only_) {
          if (rep_seen[cid[e]]) continue;
          rep_seen[cid[e]] = true;
        }
        cand.push_back(static_cast<std::uint32_t>(e));
      }
      candidates_.push_back(std::move(cand));
    }
  }

  // Visits every full assignment; the visitor returns true to stop.
  void run(const Visitor& visit) {
    images_.clear();
    stop_ = false;
    recurse(0, visit);
  }

 private:
  void recurse(std::size_t j, const Visitor& visit) {
    if (stop_) return;
    if (j == gens_.size()) {
      if (visit(images_)) stop_ = true;
      return;
    }
    for (std::uint32_t e : candidates_[j]) {
      const Permutation& h = elems_[e];
      if (!consistent(j, h)) continue;
      images_.push_back(h);
      recurse(j + 1, visit);
      images_.pop_back();
      if (stop_) return;
    }
  }

  bool consistent(std::size_t j, const Permutation& h) {
    for (std::size_t i = 0; i < j; ++i) {
      auto words = pair_words(images_[i], h);
      for (std::size_t w = 0; w < words.size(); ++w)
        if (words[w].order() != word_orders_[j][i][w]) return false;
    }
    if (j == 0) return true;
    std::vector<Permutation> imgs = images_;
    imgs.push_back(h);
    std::uint64_t expect = prefix_orders_[j];
    if (!chain_order_is(target_.degree(), imgs, expect)) return false;
    auto d = diagonal_gens(gens_, imgs, j + 1);
    return chain_order_is(source_.degree() + target_.degree(), d, expect);
  }

  const PermGroup& source_;
  std::vector<Permutation> gens_;
  const PermGroup& target_;
  const ElementIndex& elems_;
  bool reps_only_;
  std::vector<std::uint64_t> orders_, class_sizes_, prefix_orders_;
  std::vector<std::vector<std::vector<std::uint64_t>>> word_orders_;
  std::vector<std::vector<std::uint32_t>> candidates_;
  std::vector<Permutation> images_;
  bool stop_ = false;
};

}  // namespace

Permutation GroupHom::image(const Permutation& x, std::size_t source_degree,
                            std::size_t target_degree) const {
  std::size_t deg = source_degree + target_degree;
  auto d = diagonal_gens(source_generators, images, source_generators.size());
  auto chain = build_stab_chain(deg, d, std::nullopt, std::nullopt);
  // Sift on the source coordinates only; the base lies entirely among them
  // when the map is well defined.
  Permutation acc(deg);
  Permutation r = x;
  for (std::size_t i = 0; i < chain->levels.size(); ++i) {
    Point b = chain->levels[i].base;
    if (b >= source_degree)
      throw Error(ErrorCode::kInvalidArgument, "generator assignment is not a homomorphism");
    Point delta = r[b];
    if (chain->levels[i].label[delta] == -1)
      throw Error(ErrorCode::kNotSubgroup, "element is not in the source group");
    Permutation u = chain->transversal(i, delta);
    std::vector<Point> ua(source_degree);
    for (std::size_t p = 0; p < source_degree; ++p) ua[p] = u[static_cast<Point>(p)];
    r = r * Permutation(std::move(ua)).inverse();
    acc = u * acc;
  }
  if (!r.is_identity()) throw Error(ErrorCode::kNotSubgroup, "element is not in the source group");
  std::vector<Point> img(target_degree);
  for (std::size_t p = 0; p < target_degree; ++p)
    img[p] = acc[static_cast<Point>(source_degree + p)] - static_cast<Point>(source_degree);
  return Permutation(std::move(img));
}

bool verify_hom(const PermGroup& source, const PermGroup& target, const GroupHom& hom,
                bool require_bijective) {
  if (hom.source_generators.size() != hom.images.size()) return false;
  for (const auto& s : hom.source_generators)
    if (s.degree() != source.degree() || !source.contains(s)) return false;
  for (const auto& h : hom.images)
    if (h.degree() != target.degree() || !target.contains(h)) return false;
  std::uint64_t n = source.order();
  if (chain_order(source.degree(), hom.source_generators) != n) return false;
  auto d = diagonal_gens(hom.source_generators, hom.images, hom.images.size());
  if (!chain_order_is(source.degree() + target.degree(), d, n)) return false;
  if (!require_bijective) return true;
  return target.order() == n && chain_order(target.degree(), hom.images) == n;
}

bool verify_hom_exhaustive(const PermGroup& source, const PermGroup& target,
                           const GroupHom& hom, const Limits& lim) {
  if (source.order() > lim.isomorphism)
    throw Error(ErrorCode::kThresholdExceeded, "source too large for exhaustive verification");
  if (hom.source_generators.size() != hom.images.size()) return false;
  std::unordered_map<Permutation, Permutation, PermutationHash> phi;
  std::vector<Permutation> queue{source.identity()};
  phi.emplace(source.identity(), target.identity());
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Permutation x = queue[i];
    const Permutation fx = phi.at(x);
    for (std::size_t j = 0; j < hom.source_generators.size(); ++j) {
      Permutation y = x * hom.source_generators[j];
      Permutation fy = fx * hom.images[j];
      auto it = phi.find(y);
      if (it == phi.end()) {
        phi.emplace(y, std::move(fy));
        queue.push_back(std::move(y));
      } else if (!(it->second == fy)) {
        return false;
      }
    }
  }
  if (queue.size() != source.order()) return false;
  std::unordered_set<Permutation, PermutationHash> imgs;
  for (const auto& [x, fx] : phi) {
    if (!target.contains(fx)) return false;
    imgs.insert(fx);
  }
  return imgs.size() == phi.size();
}

std::optional<GroupHom> is_isomorphic(const PermGroup& a, const PermGroup& b,
                                      const Limits& lim) {
  std::uint64_t n = a.order();
  if (n != b.order()) return std::nullopt;
  if (n > lim.isomorphism)
    throw Error(ErrorCode::kThresholdExceeded,
                "group order " + std::to_string(n) + " exceeds isomorphism threshold");
  if (n == 1) return GroupHom{{}, {}, true};
  Limits wide = lim;
  wide.enumeration = std::max(lim.enumeration, lim.isomorphism);
  if (n <= lim.enumeration && !(fingerprint(a, lim) == fingerprint(b, lim)))
    return std::nullopt;
  std::vector<Permutation> gens = small_generating_sequence(a);
  ElementIndex belems(b, wide);
  HomSearch search(a, gens, b, belems, /*reps_only_at_first=*/true);
  std::optional<GroupHom> found;
  search.run([&](const std::vector<Permutation>& imgs) {
    if (chain_order(b.degree(), imgs) != n) return false;
    found = GroupHom{gens, imgs, true};
    return true;
  });
  return found;
}

PermGroup automorphism_group_generic(const PermGroup& g, const Limits& lim) {
  std::uint64_t n = g.order();
  if (n > lim.generic_aut)
    throw Error(ErrorCode::kThresholdExceeded,
                "group order " + std::to_string(n) + " exceeds generic automorphism threshold");
  Limits wide = lim;
  wide.enumeration = std::max<std::uint64_t>(lim.enumeration, n);
  ElementIndex elems(g, wide);
  std::size_t deg = elems.size();
  if (n == 1) return PermGroup::trivial(1);
  std::vector<Permutation> gens = small_generating_sequence(g);
  HomSearch search(g, gens, g, elems, /*reps_only_at_first=*/false);
  std::vector<Permutation> aut_gens;
  PermGroup aut(deg, aut_gens);
  std::uint64_t count = 0;
  search.run([&](const std::vector<Permutation>& imgs) {
    if (chain_order(g.degree(), imgs) != n) return false;
    ++count;
    // Action on element indices by walking the Cayley graph from the identity.
    std::vector<Point> img(deg, UINT32_MAX);
    std::vector<std::uint32_t> queue{0};
    img[0] = 0;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      std::uint32_t x = queue[i];
      for (std::size_t j = 0; j < gens.size(); ++j) {
        std::uint32_t y = elems.index_of(elems[x] * gens[j]);
        if (img[y] != UINT32_MAX) continue;
        img[y] = elems.index_of(elems[img[x]] * imgs[j]);
        queue.push_back(y);
      }
    }
    Permutation alpha(std::move(img));
    if (!aut.contains(alpha)) {
      aut_gens.push_back(std::move(alpha));
      aut = PermGroup(deg, aut_gens);
    }
    return false;
  });
  if (aut.order() != count)
    throw Error(ErrorCode::kInternal, "automorphism count disagrees with generated group");
  return aut;
}

std::optional<Permutation> subgroups_conjugate(const ElementIndex& g_elements,
                                               const PermGroup& g, const PermGroup& h1,
                                               const PermGroup& h2) {
  if (!is_subgroup(h1, g) || !is_subgroup(h2, g))
    throw Error(ErrorCode::kNotSubgroup, "H1 and H2 must be subgroups of G");
  if (h1.order() != h2.order()) return std::nullopt;
  for (const auto& x : g_elements.elements()) {
    bool ok = true;
    for (const auto& s : h1.generators())
      if (!h2.contains(s.conjugate(x))) {
        ok = false;
        break;
      }
    if (ok) return x;
  }
  return std::nullopt;
}

std::optional<Permutation> subgroups_conjugate(const PermGroup& g, const PermGroup& h1,
                                               const PermGroup& h2, const Limits& lim) {
  if (!is_subgroup(h1, g) || !is_subgroup(h2, g))
    throw Error(ErrorCode::kNotSubgroup, "H1 and H2 must be subgroups of G");
  if (h1.order() != h2.order()) return std::nullopt;
  if (h1.order() <= lim.enumeration && !(fingerprint(h1, lim) == fingerprint(h2, lim)))
    return std::nullopt;
  ElementIndex elems(g, lim);
  return subgroups_conjugate(elems, g, h1, h2);
}

}  // namespace holoforge
