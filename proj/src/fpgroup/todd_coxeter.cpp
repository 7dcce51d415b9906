#include <algorithm>
#include <numeric>

#include "holoforge/error.hpp"
#include "holoforge/fpgroup.hpp"

namespace holoforge {

namespace {

constexpr std::uint32_t kNone = UINT32_MAX;

struct OutOfSpace {};

class Enumerator {
 public:
  Enumerator(const Presentation& p, const std::vector<Word>& subgroup, const CosetOptions& opt)
      : ngens_(p.generator_count()), cols_(2 * ngens_), opt_(opt) {
    if (opt.budget < 1) throw Error(ErrorCode::kInvalidArgument, "coset budget must be positive");
    for (const auto& r : p.relators) {
      for (const auto& s : r.syllables())
        if (s.gen >= ngens_)
          throw Error(ErrorCode::kUndeclaredGenerator, "relator uses an undeclared generator");
      auto l = r.cyclically_reduced().letters();
      if (!l.empty()) rels_.push_back(std::move(l));
    }
    for (const auto& h : subgroup) {
      for (const auto& s : h.syllables())
        if (s.gen >= ngens_)
          throw Error(ErrorCode::kUndeclaredGenerator, "subgroup word uses an undeclared generator");
      auto l = h.letters();
      if (!l.empty()) subgens_.push_back(std::move(l));
    }
    if (opt.strategy == CosetStrategy::kFelsch) {
      // Every cyclic conjugate of every relator and its inverse, keyed by first letter.
      by_first_.resize(cols_);
      for (const auto& r : rels_) {
        std::vector<std::uint32_t> inv(r.rbegin(), r.rend());
        for (auto& x : inv) x ^= 1u;
        const std::vector<std::uint32_t>* both[] = {&r, &inv};
        for (const auto* w : both)
          for (std::size_t k = 0; k < w->size(); ++k) {
            std::vector<std::uint32_t> c(w->begin() + static_cast<long>(k), w->end());
            c.insert(c.end(), w->begin(), w->begin() + static_cast<long>(k));
            auto& bucket = by_first_[c[0]];
            if (std::find(bucket.begin(), bucket.end(), c) == bucket.end()) bucket.push_back(c);
          }
      }
    }
    new_coset();
  }

  CosetTable run() {
    if (ngens_ == 0) {
      CosetTable t;
      t.cosets = 1;
      t.complete = true;
      t.total_defined = 1;
      t.max_live = 1;
      return t;
    }
    if (opt_.strategy == CosetStrategy::kFelsch)
      felsch();
    else
      hlt();
    verify();
    return standardize();
  }

 private:
  std::uint32_t& at(std::uint32_t c, std::uint32_t x) { return tab_[std::size_t{c} * cols_ + x]; }

  std::uint32_t new_coset() {
    if (live_ >= opt_.budget) throw OutOfSpace{};
    auto c = static_cast<std::uint32_t>(fwd_.size());
    fwd_.push_back(c);
    tab_.resize(tab_.size() + cols_, kNone);
    ++live_;
    ++total_;
    max_live_ = std::max(max_live_, live_);
    return c;
  }

  bool alive(std::uint32_t c) const { return fwd_[c] == c; }

  std::uint32_t rep(std::uint32_t c) {
    std::uint32_t r = c;
    while (fwd_[r] != r) r = fwd_[r];
    while (fwd_[c] != r) {
      std::uint32_t n = fwd_[c];
      fwd_[c] = r;
      c = n;
    }
    return r;
  }

  void set(std::uint32_t c, std::uint32_t x, std::uint32_t d) {
    at(c, x) = d;
    at(d, x ^ 1u) = c;
    if (track_deductions_) deductions_.push_back({c, x});
  }

  void merge(std::uint32_t k, std::uint32_t l) {
    k = rep(k);
    l = rep(l);
    if (k == l) return;
    if (k > l) std::swap(k, l);
    fwd_[l] = k;
    --live_;
    queue_.push_back(l);
  }

  void coincidence(std::uint32_t a, std::uint32_t b) {
    queue_.clear();
    merge(a, b);
    for (std::size_t i = 0; i < queue_.size(); ++i) {
      std::uint32_t g = queue_[i];
      for (std::uint32_t x = 0; x < cols_; ++x) {
        std::uint32_t d = at(g, x);
        if (d == kNone) continue;
        at(d, x ^ 1u) = kNone;
        std::uint32_t mu = rep(g), nu = rep(d);
        if (at(mu, x) != kNone)
          merge(nu, at(mu, x));
        else if (at(nu, x ^ 1u) != kNone)
          merge(mu, at(nu, x ^ 1u));
        else
          set(mu, x, nu);
      }
    }
    queue_.clear();
  }

  // Traces w from c in both directions; closes a single gap, records a
  // coincidence, or (when `fill`) defines new cosets until the cycle closes.
  void scan(std::uint32_t c, const std::vector<std::uint32_t>& w, bool fill) {
    std::uint32_t f = c, b = c;
    std::size_t i = 0, j = w.size();
    for (;;) {
      while (i < j && at(f, w[i]) != kNone) f = at(f, w[i++]);
      if (i == j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j > i && at(b, w[j - 1] ^ 1u) != kNone) b = at(b, w[--j] ^ 1u);
      if (j == i) {
        coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        set(f, w[i], b);
        return;
      }
      if (!fill) return;
      std::uint32_t n = new_coset();
      set(f, w[i], n);
    }
  }

  void lookahead() {
    for (std::uint32_t c = 0; c < fwd_.size(); ++c)
      for (const auto& r : rels_) {
        if (!alive(c)) break;
        scan(c, r, false);
      }
  }

  // Drops dead rows; `pos` is remapped to the first live coset at or after it.
  std::uint32_t compact(std::uint32_t pos) {
    std::vector<std::uint32_t> map(fwd_.size(), kNone);
    std::uint32_t n = 0;
    std::uint32_t new_pos = kNone;
    for (std::uint32_t c = 0; c < fwd_.size(); ++c) {
      if (c >= pos && new_pos == kNone && alive(c)) new_pos = n;
      if (alive(c)) map[c] = n++;
    }
    if (new_pos == kNone) new_pos = n;
    std::vector<std::uint32_t> t(std::size_t{n} * cols_, kNone);
    for (std::uint32_t c = 0; c < fwd_.size(); ++c) {
      if (!alive(c)) continue;
      for (std::uint32_t x = 0; x < cols_; ++x) {
        std::uint32_t d = at(c, x);
        if (d != kNone) t[std::size_t{map[c]} * cols_ + x] = map[rep(d)];
      }
    }
    tab_ = std::move(t);
    fwd_.resize(n);
    std::iota(fwd_.begin(), fwd_.end(), 0u);
    deductions_.clear();
    return new_pos;
  }

  std::uint32_t maybe_compact(std::uint32_t pos) {
    if (fwd_.size() > 2 * live_ + 1024) return compact(pos);
    return pos;
  }

  // After running out of space: free cosets by lookahead or give up.
  void recover() {
    std::uint64_t before = live_;
    try {
      lookahead();
    } catch (const OutOfSpace&) {
    }
    if (live_ >= before && live_ >= opt_.budget)
      throw Error(ErrorCode::kBudgetExhausted,
                  "coset budget of " + std::to_string(opt_.budget) + " exhausted");
  }

  void hlt() {
    for (;;) {
      try {
        for (const auto& h : subgens_) scan(0, h, true);
        break;
      } catch (const OutOfSpace&) {
        recover();
      }
    }
    std::uint32_t c = 0;
    while (c < fwd_.size()) {
      if (!alive(c)) {
        ++c;
        continue;
      }
      try {
        for (const auto& r : rels_) {
          if (!alive(c)) break;
          scan(c, r, true);
        }
        for (std::uint32_t x = 0; x < cols_ && alive(c); ++x)
          if (at(c, x) == kNone) set(c, x, new_coset());
        ++c;
        c = maybe_compact(c);
      } catch (const OutOfSpace&) {
        recover();
        c = compact(c);
      }
    }
  }

  void process_deductions() {
    while (!deductions_.empty()) {
      auto [c, x] = deductions_.back();
      deductions_.pop_back();
      if (!alive(c)) continue;
      for (const auto& r : by_first_[x]) {
        if (!alive(c)) break;
        scan(c, r, false);
      }
      if (!alive(c) || at(c, x) == kNone) continue;
      std::uint32_t d = at(c, x);
      for (const auto& r : by_first_[x ^ 1u]) {
        if (!alive(d)) break;
        scan(d, r, false);
      }
    }
  }

  void felsch() {
    track_deductions_ = true;
    try {
      for (const auto& h : subgens_) {
        scan(0, h, true);
        process_deductions();
      }
      for (std::uint32_t c = 0; c < fwd_.size(); ++c) {
        for (std::uint32_t x = 0; x < cols_; ++x) {
          if (!alive(c)) break;
          if (at(c, x) != kNone) continue;
          set(c, x, new_coset());
          process_deductions();
        }
      }
    } catch (const OutOfSpace&) {
      throw Error(ErrorCode::kBudgetExhausted,
                  "coset budget of " + std::to_string(opt_.budget) + " exhausted");
    }
    track_deductions_ = false;
  }

  // Complete and consistent: every entry defined and every relator closes at
  // every coset. Anything left open is repaired by further scanning.
  void verify() {
    for (int round = 0;; ++round) {
      bool clean = true;
      for (std::uint32_t c = 0; c < fwd_.size(); ++c) {
        if (!alive(c)) continue;
        for (std::uint32_t x = 0; x < cols_; ++x)
          if (at(c, x) == kNone) clean = false;
        for (const auto& r : rels_) {
          std::uint32_t f = c;
          for (auto x : r) {
            f = at(f, x);
            if (f == kNone) break;
          }
          if (f != c) clean = false;
        }
      }
      for (const auto& h : subgens_) {
        std::uint32_t f = rep(0);
        for (auto x : h) {
          f = at(f, x);
          if (f == kNone) break;
        }
        if (f != rep(0)) clean = false;
      }
      if (clean) return;
      if (round > 8) throw Error(ErrorCode::kInternal, "coset table failed to close");
      track_deductions_ = false;
      for (;;) {
        try {
          hlt();
          break;
        } catch (const OutOfSpace&) {
          recover();
        }
      }
    }
  }

  CosetTable standardize() {
    std::vector<std::uint32_t> order;
    std::vector<std::uint32_t> number(fwd_.size(), kNone);
    std::uint32_t root = rep(0);
    number[root] = 0;
    order.push_back(root);
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::uint32_t x = 0; x < cols_; ++x) {
        std::uint32_t d = rep(at(order[i], x));
        if (number[d] == kNone) {
          number[d] = static_cast<std::uint32_t>(order.size());
          order.push_back(d);
        }
      }
    CosetTable t;
    t.generators = ngens_;
    t.cosets = order.size();
    t.table.resize(order.size() * cols_);
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::uint32_t x = 0; x < cols_; ++x)
        t.table[i * cols_ + x] = number[rep(at(order[i], x))];
    t.complete = true;
    t.total_defined = total_;
    t.max_live = max_live_;
    return t;
  }

  std::size_t ngens_;
  std::uint32_t cols_;
  CosetOptions opt_;
  std::vector<std::vector<std::uint32_t>> rels_, subgens_;
  std::vector<std::vector<std::vector<std::uint32_t>>> by_first_;
  std::vector<std::uint32_t> tab_, fwd_, queue_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> deductions_;
  bool track_deductions_ = false;
  std::uint64_t live_ = 0, total_ = 0, max_live_ = 0;
};

}  // namespace

Permutation CosetTable::generator_action(std::uint32_t g) const {
  std::vector<Point> img(cosets);
  for (std::size_t c = 0; c < cosets; ++c) img[c] = act(static_cast<std::uint32_t>(c), 2 * g);
  return Permutation(std::move(img));
}

CosetTable todd_coxeter(const Presentation& p, const std::vector<Word>& subgroup,
                        const CosetOptions& opt) {
  Enumerator e(p, subgroup, opt);
  return e.run();
}

PermGroup coset_action(const Presentation& p, const std::vector<Word>& subgroup,
                       const CosetOptions& opt) {
  CosetTable t = todd_coxeter(p, subgroup, opt);
  std::vector<Permutation> gens;
  for (std::uint32_t g = 0; g < p.generator_count(); ++g) gens.push_back(t.generator_action(g));
  return PermGroup(t.cosets, std::move(gens));
}

PermGroup presentation_to_perm_group(const Presentation& p, const CosetOptions& opt) {
  CosetTable t = todd_coxeter(p, {}, opt);
  std::vector<Permutation> gens;
  for (std::uint32_t g = 0; g < p.generator_count(); ++g) gens.push_back(t.generator_action(g));
  return PermGroup(t.cosets, std::move(gens), t.cosets);
}

std::optional<FaithfulRep> faithful_representation(const Presentation& p, std::uint64_t order,
                                                   const CosetOptions& opt,
                                                   std::size_t max_degree) {
  const auto n = static_cast<std::uint32_t>(p.generator_count());
  if (n == 0 || n > 20) return std::nullopt;
  // Subsets of generators, largest first, lexicographic within a size.
  std::vector<std::vector<std::uint32_t>> subsets;
  for (std::uint32_t size = n - 1; size >= 1; --size) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + size, true);
    do {
      std::vector<std::uint32_t> s;
      for (std::uint32_t i = 0; i < n; ++i)
        if (pick[i]) s.push_back(i);
      subsets.push_back(std::move(s));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  CosetOptions small = opt;
  small.budget = std::min<std::uint64_t>(opt.budget, std::max<std::uint64_t>(4 * max_degree, 4096));
  for (const auto& s : subsets) {
    std::vector<Word> sub;
    for (auto g : s) sub.push_back(Word::generator(g));
    CosetTable t;
    try {
      t = todd_coxeter(p, sub, small);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kBudgetExhausted) continue;
      throw;
    }
    if (t.cosets > max_degree || t.cosets < 2) continue;
    std::vector<Permutation> gens;
    for (std::uint32_t g = 0; g < n; ++g) gens.push_back(t.generator_action(g));
    auto chain = build_stab_chain(t.cosets, gens, order, order);
    if (chain && chain->order() == order)
      return FaithfulRep{PermGroup(t.cosets, std::move(gens), order), s};
  }
  return std::nullopt;
}

}  // namespace holoforge
