#include <algorithm>
#include <functional>
#include <memory>
#include <unordered_set>

#include "holoforge/error.hpp"
#include "holoforge/matgf.hpp"

namespace holoforge {

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint32_t>& k) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : k) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

using Key = std::vector<std::uint32_t>;

// Rebuilds a matrix from its action on nonzero row vectors.
MatGF perm_to_matrix(const Permutation& g, std::size_t n, std::uint32_t p) {
  MatGF m(n, p);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint32_t> e(n, 0);
    e[i] = 1;
    auto row = vector_at(g[static_cast<Point>(vector_index(e, p) - 1)] + 1, n, p);
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, row[j]);
  }
  return m;
}

class Ambient {
 public:
  Ambient(std::size_t n, std::uint32_t p, const Limits& lim) : n_(n), p_(p) {
    std::vector<Permutation> gens;
    for (const auto& m : gl_generators(n, p)) gens.push_back(matrix_to_perm(m, VectorAction::kNonzero));
    group_ = PermGroup(gens[0].degree(), gens, gl_order(n, p));
    Limits wide = lim;
    wide.enumeration = std::max(lim.enumeration, lim.gl_enumeration);
    if (group_.order() > wide.enumeration)
      throw Error(ErrorCode::kThresholdExceeded, "ambient group too large to enumerate");
    elems_ = std::make_unique<ElementIndex>(group_, wide);
    for (const auto& s : group_.generators()) {
      std::vector<std::uint32_t> c(elems_->size());
      for (std::size_t i = 0; i < elems_->size(); ++i)
        c[i] = elems_->index_of((*elems_)[i].conjugate(s));
      conj_.push_back(std::move(c));
    }
  }

  const PermGroup& group() const { return group_; }
  const ElementIndex& elements() const { return *elems_; }
  std::size_t dim() const { return n_; }
  std::uint32_t prime() const { return p_; }

  Key key_of(const std::vector<Permutation>& gens) const {
    auto all = naive_closure(gens, group_.degree(), elems_->size());
    Key k;
    k.reserve(all.size());
    for (const auto& x : all) k.push_back(elems_->index_of(x));
    std::sort(k.begin(), k.end());
    return k;
  }

  // All subgroups conjugate to `k`, by breadth-first conjugation.
  std::vector<Key> orbit(const Key& k) const {
    std::unordered_set<Key, KeyHash> seen{k};
    std::vector<Key> out{k};
    for (std::size_t i = 0; i < out.size(); ++i)
      for (const auto& c : conj_) {
        Key y;
        y.reserve(out[i].size());
        for (auto x : out[i]) y.push_back(c[x]);
        std::sort(y.begin(), y.end());
        if (seen.insert(y).second) out.push_back(std::move(y));
      }
    return out;
  }

 private:
  std::size_t n_;
  std::uint32_t p_;
  PermGroup group_;
  std::unique_ptr<ElementIndex> elems_;
  std::vector<std::vector<std::uint32_t>> conj_;
};

std::uint64_t fixed_vector_count(const std::vector<MatGF>& gens, std::size_t n, std::uint32_t p) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= p;
  std::uint64_t count = 0;
  for (std::uint64_t x = 0; x < total; ++x) {
    auto v = vector_at(x, n, p);
    bool fixed = true;
    for (const auto& m : gens)
      if (m.apply_row(v) != v) {
        fixed = false;
        break;
      }
    if (fixed) ++count;
  }
  return count;
}

}  // namespace

std::vector<EmbeddingClass> find_embedding_classes(const Presentation& pattern,
                                                   std::uint64_t pattern_order, std::size_t dim,
                                                   std::uint32_t p, const EmbeddingOptions& opt) {
  const std::size_t k = pattern.generator_count();
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "pattern has no generators");
  CosetOptions copt;
  copt.budget = opt.limits.coset_budget;
  PermGroup pat = presentation_to_perm_group(pattern, copt);
  if (pat.order() != pattern_order)
    throw Error(ErrorCode::kInvalidArgument, "pattern presentation defines a group of order " +
                                                 std::to_string(pat.order()));
  Ambient amb(dim, p, opt.limits);
  if (pattern_order > amb.group().order()) return {};
  const ElementIndex& el = amb.elements();
  std::vector<std::uint64_t> orders;
  for (const auto& g : pat.generators()) orders.push_back(g.order());

  // Relators checked as soon as their last generator is assigned.
  std::vector<std::vector<const Word*>> rel_at(k);
  for (const auto& r : pattern.relators) {
    if (r.empty()) continue;
    std::uint32_t hi = 0;
    for (const auto& s : r.syllables()) hi = std::max(hi, s.gen);
    rel_at[hi].push_back(&r);
  }

  const auto& cid = el.class_ids();
  std::vector<std::vector<std::uint32_t>> cand(k);
  std::vector<bool> rep_taken(el.class_sizes().size(), false);
  for (std::size_t e = 0; e < el.size(); ++e) {
    for (std::size_t j = 0; j < k; ++j) {
      if (el.element_order(e) != orders[j]) continue;
      if (j == 0) {
        if (rep_taken[cid[e]]) continue;
        rep_taken[cid[e]] = true;
      }
      cand[j].push_back(static_cast<std::uint32_t>(e));
    }
  }

  struct Found {
    Key min_key;
    std::vector<Permutation> images;
    std::uint64_t class_size;
  };
  std::vector<Found> found;
  std::unordered_set<Key, KeyHash> seen;
  EmbeddingProgress prog;
  prog.branches = cand[0].size();
  std::vector<Permutation> images(k);

  auto satisfies = [&](std::size_t j) {
    for (const Word* r : rel_at[j]) {
      Permutation acc(amb.group().degree());
      for (const auto& s : r->syllables()) acc = acc * images[s.gen].pow(s.exp);
      if (!acc.is_identity()) return false;
    }
    return true;
  };

  std::function<void(std::size_t)> dfs = [&](std::size_t j) {
    if (j == k) {
      auto chain = build_stab_chain(amb.group().degree(), images, std::nullopt, pattern_order);
      if (!chain || chain->order() != pattern_order) return;
      ++prog.hits;
      Key key = amb.key_of(images);
      if (seen.count(key)) return;
      auto orb = amb.orbit(key);
      Key min_key = *std::min_element(orb.begin(), orb.end());
      for (auto& o : orb) seen.insert(std::move(o));
      found.push_back({std::move(min_key), images, orb.size()});
      prog.classes = found.size();
      return;
    }
    for (std::uint32_t e : cand[j]) {
      if (++prog.nodes > opt.node_budget)
        throw Error(ErrorCode::kBudgetExhausted, "embedding search node budget exhausted");
      images[j] = el[e];
      if (!satisfies(j)) continue;
      dfs(j + 1);
    }
  };
  for (std::size_t b = 0; b < cand[0].size(); ++b) {
    prog.branch = b;
    if (opt.progress) opt.progress(prog);
    images[0] = el[cand[0][b]];
    if (!satisfies(0)) continue;
    dfs(1);
  }
  prog.branch = cand[0].size();
  if (opt.progress) opt.progress(prog);

  std::sort(found.begin(), found.end(),
            [](const Found& a, const Found& b) { return a.min_key < b.min_key; });
  std::vector<EmbeddingClass> out;
  for (const auto& f : found) {
    EmbeddingClass c;
    for (const auto& g : f.images) c.representative.push_back(perm_to_matrix(g, dim, p));
    PermGroup h(amb.group().degree(), f.images, pattern_order);
    c.subgroup_order = h.order();
    c.class_size = f.class_size;
    c.fixed_vectors = fixed_vector_count(c.representative, dim, p);
    Limits wide = opt.limits;
    std::uint64_t vol = 1;
    for (std::size_t i = 0; i < dim; ++i) vol *= p;
    wide.enumeration = std::max<std::uint64_t>(opt.limits.enumeration, vol * pattern_order);
    PermGroup semi = affine_group(dim, p, c.representative, vol * pattern_order, wide);
    c.center_order = center(semi, wide).order();
    c.fingerprint = fingerprint(h, wide);
    out.push_back(std::move(c));
  }
  return out;
}

int embedding_class_of(const std::vector<EmbeddingClass>& classes, const std::vector<MatGF>& images,
                       const Limits& lim) {
  if (images.empty()) return -1;
  const std::size_t n = images[0].dim();
  const std::uint32_t p = images[0].prime();
  Ambient amb(n, p, lim);
  std::vector<Permutation> perms;
  for (const auto& m : images) perms.push_back(matrix_to_perm(m, VectorAction::kNonzero));
  PermGroup h(amb.group().degree(), perms);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    std::vector<Permutation> rp;
    for (const auto& m : classes[i].representative)
      rp.push_back(matrix_to_perm(m, VectorAction::kNonzero));
    PermGroup r(amb.group().degree(), rp);
    if (r.order() != h.order()) continue;
    if (subgroups_conjugate(amb.elements(), amb.group(), r, h).has_value()) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace holoforge
