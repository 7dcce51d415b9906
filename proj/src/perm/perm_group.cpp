#include <algorithm>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include "holoforge/error.hpp"
#include "holoforge/perm.hpp"

namespace holoforge {

struct PermGroup::Cache {
  std::once_flag once;
  StabChain chain;
};

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> gens,
                     std::optional<std::uint64_t> known_order)
    : degree_(degree),
      gens_(std::move(gens)),
      known_order_(known_order),
      cache_(std::make_shared<Cache>()) {
  if (degree_ == 0) throw Error(ErrorCode::kInvalidArgument, "degree must be positive");
  for (const auto& g : gens_)
    if (g.degree() != degree_)
      throw Error(ErrorCode::kDegreeMismatch, "generator degree differs from group degree");
}

const StabChain& PermGroup::chain() const {
  std::call_once(cache_->once, [this] {
    cache_->chain = *build_stab_chain(degree_, gens_, known_order_, std::nullopt);
    if (known_order_ && cache_->chain.order() != *known_order_)
      throw Error(ErrorCode::kInternal, "stabilizer chain disagrees with the known group order");
  });
  return cache_->chain;
}

std::uint64_t PermGroup::order() const { return chain().order(); }

bool PermGroup::contains(const Permutation& x) const {
  if (x.degree() != degree_)
    throw Error(ErrorCode::kDegreeMismatch, "element degree differs from group degree");
  auto [res, stop] = chain().strip(x);
  return stop == chain().levels.size() && res.is_identity();
}

Permutation PermGroup::element_at(std::uint64_t index) const {
  const StabChain& c = chain();
  Permutation g(degree_);
  // g = u_k * ... * u_1, last level first.
  std::vector<Permutation> parts;
  for (std::size_t i = 0; i < c.levels.size(); ++i) {
    std::uint64_t n = c.levels[i].orbit.size();
    parts.push_back(c.transversal(i, c.levels[i].orbit[index % n]));
    index /= n;
  }
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) g = g * *it;
  return g;
}

PermGroup PermGroup::with_reduced_generators() const {
  std::vector<Permutation> kept;
  std::uint64_t target = order();
  std::uint64_t current = 1;
  for (const auto& g : gens_) {
    if (current == target) break;
    if (g.is_identity()) continue;
    PermGroup probe(degree_, kept);
    if (!kept.empty() && probe.contains(g)) continue;
    kept.push_back(g);
    current = PermGroup(degree_, kept).order();
  }
  return PermGroup(degree_, std::move(kept), target);
}

PermGroup group_from_generators(const std::vector<Permutation>& gens, std::size_t degree) {
  return PermGroup(degree, gens);
}

ElementIndex::ElementIndex(const PermGroup& g, const Limits& lim) : gens_(g.generators()) {
  if (g.order() > lim.enumeration)
    throw Error(ErrorCode::kThresholdExceeded,
                "group order " + std::to_string(g.order()) + " exceeds enumeration threshold " +
                    std::to_string(lim.enumeration));
  elems_ = naive_closure(g.generators(), g.degree(), g.order());
  std::sort(elems_.begin(), elems_.end());
  index_.reserve(elems_.size() * 2);
  orders_.reserve(elems_.size());
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    index_.emplace(elems_[i], static_cast<std::uint32_t>(i));
    orders_.push_back(elems_[i].order());
  }
}

std::int64_t ElementIndex::find(const Permutation& x) const {
  auto it = index_.find(x);
  return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

std::uint32_t ElementIndex::index_of(const Permutation& x) const {
  auto it = index_.find(x);
  if (it == index_.end()) throw Error(ErrorCode::kNotSubgroup, "element not in group");
  return it->second;
}

const std::vector<std::uint32_t>& ElementIndex::class_ids() const {
  if (!class_id_.empty() || elems_.empty()) return class_id_;
  constexpr std::uint32_t kUnset = UINT32_MAX;
  class_id_.assign(elems_.size(), kUnset);
  std::uint32_t next = 0;
  std::vector<std::uint32_t> queue;
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    if (class_id_[i] != kUnset) continue;
    std::uint32_t id = next++;
    class_id_[i] = id;
    queue.assign(1, static_cast<std::uint32_t>(i));
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const Permutation& x = elems_[queue[q]];
      for (const auto& s : gens_) {
        std::uint32_t j = index_of(x.conjugate(s));
        if (class_id_[j] == kUnset) {
          class_id_[j] = id;
          queue.push_back(j);
        }
      }
    }
    class_size_.push_back(static_cast<std::uint32_t>(queue.size()));
  }
  return class_id_;
}

const std::vector<std::uint32_t>& ElementIndex::class_sizes() const {
  class_ids();
  return class_size_;
}

std::vector<Permutation> naive_closure(const std::vector<Permutation>& gens,
                                       std::size_t degree, std::size_t max_size) {
  std::unordered_set<Permutation, PermutationHash> seen;
  std::vector<Permutation> out;
  Permutation id(degree);
  seen.insert(id);
  out.push_back(id);
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& g : gens) {
      Permutation y = out[i] * g;
      if (seen.insert(y).second) {
        out.push_back(std::move(y));
        if (out.size() > max_size)
          throw Error(ErrorCode::kThresholdExceeded, "closure exceeds size bound");
      }
    }
  }
  return out;
}

PermGroup subgroup(const PermGroup& g, const std::vector<Permutation>& gens) {
  for (const auto& x : gens)
    if (!g.contains(x)) throw Error(ErrorCode::kNotSubgroup, "generator not in the group");
  return PermGroup(g.degree(), gens);
}

bool is_subgroup(const PermGroup& h, const PermGroup& g) {
  if (h.degree() != g.degree()) return false;
  for (const auto& x : h.generators())
    if (!g.contains(x)) return false;
  return true;
}

bool is_normal(const PermGroup& n, const PermGroup& g) {
  for (const auto& x : n.generators())
    for (const auto& s : g.generators())
      if (!n.contains(x.conjugate(s))) return false;
  return true;
}

PermGroup normal_closure(const PermGroup& g, const std::vector<Permutation>& gens) {
  std::vector<Permutation> cur;
  std::vector<Permutation> queue = gens;
  PermGroup n(g.degree(), cur);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Permutation x = queue[i];
    if (x.is_identity() || n.contains(x)) continue;
    cur.push_back(x);
    n = PermGroup(g.degree(), cur);
    for (const auto& s : g.generators()) queue.push_back(x.conjugate(s));
  }
  return n;
}

PermGroup derived_subgroup(const PermGroup& g) {
  std::vector<Permutation> comms;
  const auto& gs = g.generators();
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = i + 1; j < gs.size(); ++j)
      comms.push_back(gs[i].inverse() * gs[j].inverse() * gs[i] * gs[j]);
  return normal_closure(g, comms);
}

namespace {

// Grow a subgroup generated by a list of elements, adding only new ones.
PermGroup generated_by(std::size_t degree, const std::vector<Permutation>& elems) {
  std::vector<Permutation> gens;
  PermGroup h(degree, gens);
  for (const auto& x : elems) {
    if (x.is_identity() || h.contains(x)) continue;
    gens.push_back(x);
    h = PermGroup(degree, gens);
  }
  return h;
}

std::vector<std::uint32_t> element_key(const ElementIndex& idx, const PermGroup& h) {
  std::vector<std::uint32_t> key;
  for (const auto& x : naive_closure(h.generators(), h.degree(), h.order()))
    key.push_back(idx.index_of(x));
  std::sort(key.begin(), key.end());
  return key;
}

std::vector<std::uint64_t> abelian_invariants_of(const PermGroup& a, const Limits& lim) {
  // a is abelian. For each prime p, |{x : x^(p^j) = 1}| = p^(sum_i min(l_i, j)).
  ElementIndex idx(a, lim);
  std::uint64_t n = a.order();
  std::vector<std::uint64_t> out;
  std::uint64_t m = n;
  for (std::uint64_t p = 2; m > 1; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    std::vector<std::uint64_t> s;  // s[j] = log_p #{x : x^(p^j)=1}
    s.push_back(0);
    std::uint64_t pj = 1;
    for (int j = 1;; ++j) {
      pj *= p;
      std::uint64_t cnt = 0;
      for (std::size_t i = 0; i < idx.size(); ++i)
        if (pj % idx.element_order(i) == 0) ++cnt;
      std::uint64_t e = 0;
      while (cnt > 1) {
        cnt /= p;
        ++e;
      }
      s.push_back(e);
      if (s[j] == s[j - 1]) break;
    }
    // r(j) = s[j] - s[j-1] counts cyclic factors of order >= p^j
    auto r = [&](std::size_t j) { return j < s.size() ? s[j] - s[j - 1] : 0; };
    std::uint64_t q = 1;
    for (std::size_t j = 1; j < s.size(); ++j) {
      q *= p;
      for (std::uint64_t t = 0; t < r(j) - r(j + 1); ++t) out.push_back(q);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

PermGroup center(const PermGroup& g, const Limits& lim) {
  ElementIndex idx(g, lim);
  std::vector<Permutation> central;
  for (const auto& x : idx.elements()) {
    bool ok = true;
    for (const auto& s : g.generators())
      if (!(x * s == s * x)) {
        ok = false;
        break;
      }
    if (ok) central.push_back(x);
  }
  return generated_by(g.degree(), central);
}

Fingerprint fingerprint(const PermGroup& g, const Limits& lim) {
  Fingerprint f;
  ElementIndex idx(g, lim);
  f.order = g.order();
  for (std::size_t i = 0; i < idx.size(); ++i) f.order_histogram[idx.element_order(i)]++;
  f.center_order = center(g, lim).order();
  PermGroup d = derived_subgroup(g);
  f.derived_order = d.order();
  PermGroup ab = quotient(g, d, lim);
  f.abelian_invariants = abelian_invariants_of(ab, lim);
  return f;
}

std::string to_string(const Fingerprint& f) {
  std::ostringstream os;
  os << "order=" << f.order << " hist={";
  bool first = true;
  for (auto [k, v] : f.order_histogram) {
    os << (first ? "" : ",") << k << ":" << v;
    first = false;
  }
  os << "} ab=[";
  for (std::size_t i = 0; i < f.abelian_invariants.size(); ++i)
    os << (i ? "," : "") << f.abelian_invariants[i];
  os << "] Z=" << f.center_order << " D=" << f.derived_order;
  return os.str();
}

std::vector<PermGroup> normal_subgroups_of_order(const PermGroup& g, std::uint64_t k,
                                                 const Limits& lim) {
  std::uint64_t n = g.order();
  if (k == 0 || n % k != 0) return {};
  ElementIndex idx(g, lim);
  if (k == 1) return {PermGroup::trivial(g.degree())};

  const auto& cid = idx.class_ids();
  std::size_t nclasses = idx.class_sizes().size();
  std::vector<std::vector<Permutation>> classes(nclasses);
  for (std::size_t i = 0; i < idx.size(); ++i) classes[cid[i]].push_back(idx[i]);

  // Normal closures of single classes; every normal subgroup is a join of these.
  std::vector<PermGroup> atoms;
  std::set<std::vector<std::uint32_t>> atom_keys;
  for (const auto& cls : classes) {
    if (cls.front().is_identity()) continue;
    if (k % cls.front().order() != 0 || cls.size() >= k) continue;
    PermGroup h = generated_by(g.degree(), cls);
    if (k % h.order() != 0) continue;
    auto key = element_key(idx, h);
    if (atom_keys.insert(key).second) atoms.push_back(h);
  }

  std::map<std::vector<std::uint32_t>, PermGroup> found;
  std::vector<std::vector<std::uint32_t>> queue;
  for (const auto& a : atoms) {
    auto key = element_key(idx, a);
    if (found.emplace(key, a).second) queue.push_back(key);
  }
  for (std::size_t q = 0; q < queue.size(); ++q) {
    PermGroup cur = found.at(queue[q]);
    if (cur.order() == k) continue;
    for (const auto& a : atoms) {
      std::vector<Permutation> gens = cur.generators();
      if (std::all_of(a.generators().begin(), a.generators().end(),
                      [&](const Permutation& x) { return cur.contains(x); }))
        continue;
      gens.insert(gens.end(), a.generators().begin(), a.generators().end());
      auto joined = build_stab_chain(g.degree(), gens, std::nullopt, k);
      if (!joined || k % joined->order() != 0) continue;
      PermGroup j = generated_by(g.degree(), gens);
      auto key = element_key(idx, j);
      if (found.emplace(key, j).second) queue.push_back(key);
    }
  }
  std::vector<PermGroup> out;
  for (auto& [key, h] : found)
    if (h.order() == k) out.push_back(h);
  return out;
}

PermGroup quotient(const PermGroup& g, const PermGroup& n, const Limits& lim) {
  if (!is_subgroup(n, g)) throw Error(ErrorCode::kNotSubgroup, "N is not a subgroup of G");
  if (!is_normal(n, g)) throw Error(ErrorCode::kNotNormal, "N is not normal in G");
  ElementIndex idx(g, lim);
  std::vector<Permutation> nelems = naive_closure(n.generators(), g.degree(), n.order());
  constexpr std::uint32_t kUnset = UINT32_MAX;
  std::vector<std::uint32_t> coset(idx.size(), kUnset);
  std::vector<std::uint32_t> rep;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (coset[i] != kUnset) continue;
    auto id = static_cast<std::uint32_t>(rep.size());
    rep.push_back(static_cast<std::uint32_t>(i));
    for (const auto& y : nelems) coset[idx.index_of(y * idx[i])] = id;
  }
  std::size_t deg = rep.size();
  std::vector<Permutation> gens;
  for (const auto& s : g.generators()) {
    std::vector<Point> img(deg);
    for (std::size_t c = 0; c < deg; ++c) img[c] = coset[idx.index_of(idx[rep[c]] * s)];
    gens.emplace_back(std::move(img));
  }
  return PermGroup(deg, std::move(gens));
}

PermGroup direct_product(const PermGroup& a, const PermGroup& b) {
  std::size_t deg = a.degree() + b.degree();
  std::vector<Permutation> gens;
  for (const auto& x : a.generators()) gens.push_back(x.shifted(deg, 0));
  for (const auto& y : b.generators()) gens.push_back(y.shifted(deg, a.degree()));
  return PermGroup(deg, std::move(gens), a.order() * b.order());
}

std::vector<Permutation> small_generating_sequence(const PermGroup& g) {
  std::uint64_t target = g.order();
  std::vector<Permutation> seq;
  if (target == 1) return seq;
  std::vector<Permutation> pool;
  for (const auto& s : g.generators())
    if (!s.is_identity()) pool.push_back(s);
  std::mt19937_64 rng(0x5eedULL);
  for (int i = 0; i < 48; ++i) pool.push_back(g.element_at(rng() % target));
  std::uint64_t cur = 1;
  while (cur < target) {
    // Largest subgroup first; then larger element order; then pool position.
    std::size_t best = pool.size();
    std::uint64_t best_order = cur, best_elem = 0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      std::vector<Permutation> trial = seq;
      trial.push_back(pool[i]);
      std::uint64_t o = build_stab_chain(g.degree(), trial, target, std::nullopt)->order();
      std::uint64_t eo = pool[i].order();
      if (o > best_order || (o == best_order && best < pool.size() && eo > best_elem)) {
        best = i;
        best_order = o;
        best_elem = eo;
      }
    }
    if (best == pool.size()) break;
    seq.push_back(pool[best]);
    cur = best_order;
  }
  if (cur < target) {
    // Fall back to the group's own generators.
    seq = g.with_reduced_generators().generators();
  }
  // Drop entries that became redundant.
  for (std::size_t i = 0; i < seq.size() && seq.size() > 1;) {
    std::vector<Permutation> trial = seq;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
    if (build_stab_chain(g.degree(), trial, target, std::nullopt)->order() == target)
      seq = trial;
    else
      ++i;
  }
  return seq;
}

}  // namespace holoforge
