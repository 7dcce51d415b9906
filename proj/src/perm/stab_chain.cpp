#include <algorithm>

#include "holoforge/error.hpp"
#include "holoforge/perm.hpp"

namespace holoforge {

std::uint64_t StabChain::order() const {
  std::uint64_t o = 1;
  for (const auto& lv : levels) o *= lv.orbit.size();
  return o;
}

Permutation StabChain::transversal(std::size_t level, Point point) const {
  const Level& lv = levels[level];
  // Walk back to the base collecting generator labels, then multiply forward.
  std::vector<std::int32_t> path;
  Point x = point;
  while (lv.label[x] != -2) {
    std::int32_t g = lv.label[x];
    path.push_back(g);
    x = lv.parent[x];
  }
  Permutation u(degree);
  for (auto it = path.rbegin(); it != path.rend(); ++it)
    u = u * lv.gens[static_cast<std::size_t>(*it)];
  return u;
}

std::pair<Permutation, std::size_t> StabChain::strip(const Permutation& g,
                                                     std::size_t from) const {
  Permutation h = g;
  for (std::size_t i = from; i < levels.size(); ++i) {
    Point b = h[levels[i].base];
    if (levels[i].label[b] == -1) return {h, i};
    h = h * transversal(i, b).inverse();
  }
  return {h, levels.size()};
}

std::vector<Point> StabChain::base() const {
  std::vector<Point> b;
  for (const auto& lv : levels) b.push_back(lv.base);
  return b;
}

namespace {

void compute_orbit(StabChain::Level& lv, std::size_t degree) {
  lv.label.assign(degree, -1);
  lv.parent.assign(degree, 0);
  lv.orbit.clear();
  lv.label[lv.base] = -2;
  lv.orbit.push_back(lv.base);
  for (std::size_t i = 0; i < lv.orbit.size(); ++i) {
    Point x = lv.orbit[i];
    for (std::size_t g = 0; g < lv.gens.size(); ++g) {
      Point y = lv.gens[g][x];
      if (lv.label[y] == -1) {
        lv.label[y] = static_cast<std::int32_t>(g);
        lv.parent[y] = x;
        lv.orbit.push_back(y);
      }
    }
  }
}

// Lower bound on the group order certified by the partial chain.
std::uint64_t partial_order(const StabChain& c) {
  std::uint64_t o = 1;
  for (const auto& lv : c.levels) {
    if (o > (UINT64_MAX / std::max<std::size_t>(lv.orbit.size(), 1))) return UINT64_MAX;
    o *= lv.orbit.size();
  }
  return o;
}

}  // namespace

std::optional<StabChain> build_stab_chain(std::size_t degree,
                                          const std::vector<Permutation>& gens,
                                          std::optional<std::uint64_t> stop_at,
                                          std::optional<std::uint64_t> order_bound) {
  StabChain c;
  c.degree = degree;
  std::vector<Permutation> nontrivial;
  for (const auto& g : gens) {
    if (g.degree() != degree)
      throw Error(ErrorCode::kDegreeMismatch, "generator degree differs from group degree");
    if (!g.is_identity() &&
        std::find(nontrivial.begin(), nontrivial.end(), g) == nontrivial.end())
      nontrivial.push_back(g);
  }
  if (nontrivial.empty()) return c;

  // Initial base: every generator moves some base point.
  auto add_level = [&](Point b) {
    StabChain::Level lv;
    lv.base = b;
    c.levels.push_back(std::move(lv));
  };
  for (const auto& g : nontrivial) {
    bool moves = false;
    for (const auto& lv : c.levels)
      if (g[lv.base] != lv.base) moves = true;
    if (!moves) add_level(g.smallest_moved_point());
  }
  // Level i holds generators fixing base[0..i-1].
  auto assign_gens = [&](const Permutation& g, std::size_t upto_level) {
    for (std::size_t i = 0; i <= upto_level && i < c.levels.size(); ++i) {
      c.levels[i].gens.push_back(g);
    }
  };
  for (const auto& g : nontrivial) {
    std::size_t fixed_prefix = 0;
    while (fixed_prefix < c.levels.size() && g[c.levels[fixed_prefix].base] ==
                                                 c.levels[fixed_prefix].base)
      ++fixed_prefix;
    assign_gens(g, fixed_prefix);
  }
  for (auto& lv : c.levels) compute_orbit(lv, degree);

  auto done_by_order = [&]() { return stop_at && partial_order(c) >= *stop_at; };
  auto over_bound = [&]() { return order_bound && partial_order(c) > *order_bound; };
  if (over_bound()) return std::nullopt;
  if (done_by_order()) return c;

  std::size_t i = c.levels.size();
  while (i > 0) {
    std::size_t li = i - 1;
    bool restarted = false;
    // Schreier generators u_b * s * u_{b^s}^-1 for this level.
    for (std::size_t oi = 0; oi < c.levels[li].orbit.size() && !restarted; ++oi) {
      Point beta = c.levels[li].orbit[oi];
      Permutation ub = c.transversal(li, beta);
      for (std::size_t si = 0; si < c.levels[li].gens.size(); ++si) {
        const Permutation s = c.levels[li].gens[si];
        Point img = s[beta];
        Permutation h = ub * s * c.transversal(li, img).inverse();
        if (h.is_identity()) continue;
        auto [res, stop] = c.strip(h, li + 1);
        if (stop == c.levels.size() && res.is_identity()) continue;
        if (stop == c.levels.size()) add_level(res.smallest_moved_point());
        for (std::size_t l = li + 1; l <= stop; ++l) {
          c.levels[l].gens.push_back(res);
          compute_orbit(c.levels[l], degree);
        }
        if (over_bound()) return std::nullopt;
        if (done_by_order()) return c;
        i = stop + 1;
        restarted = true;
        break;
      }
    }
    if (!restarted) --i;
  }
  return c;
}

}  // namespace holoforge
