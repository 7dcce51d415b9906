#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_set>

#include "holoforge/error.hpp"
#include "holoforge/matgf.hpp"

namespace holoforge {

namespace {

std::uint32_t inv_mod(std::uint32_t v, std::uint32_t p) {
  std::uint64_t r = 1, b = v % p;
  std::uint32_t k = p - 2;
  while (k) {
    if (k & 1u) r = r * b % p;
    b = b * b % p;
    k >>= 1u;
  }
  return static_cast<std::uint32_t>(r);
}

std::uint64_t checked_pow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (r > UINT64_MAX / b) throw Error(ErrorCode::kOutOfRange, "integer power overflows");
    r *= b;
  }
  return r;
}

void check_prime(std::uint32_t p) {
  if (p < 2) throw Error(ErrorCode::kInvalidArgument, "modulus must be prime");
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) throw Error(ErrorCode::kInvalidArgument, std::to_string(p) + " is not prime");
}

}  // namespace

MatGF::MatGF(std::size_t n, std::uint32_t p) : n_(n), p_(p), e_(n * n, 0) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "matrix dimension must be positive");
  check_prime(p);
}

MatGF::MatGF(std::size_t n, std::uint32_t p, std::vector<std::uint32_t> entries)
    : MatGF(n, p) {
  if (entries.size() != n * n) throw Error(ErrorCode::kInvalidArgument, "wrong number of entries");
  for (std::size_t i = 0; i < entries.size(); ++i) e_[i] = entries[i] % p;
}

MatGF MatGF::identity(std::size_t n, std::uint32_t p) {
  MatGF m(n, p);
  for (std::size_t i = 0; i < n; ++i) m.e_[i * n + i] = 1;
  return m;
}

MatGF operator*(const MatGF& a, const MatGF& b) {
  if (a.n_ != b.n_ || a.p_ != b.p_)
    throw Error(ErrorCode::kDegreeMismatch, "matrices of different shape or field");
  MatGF r(a.n_, a.p_);
  const std::size_t n = a.n_;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      std::uint64_t x = a.e_[i * n + k];
      if (!x) continue;
      for (std::size_t j = 0; j < n; ++j)
        r.e_[i * n + j] = static_cast<std::uint32_t>((r.e_[i * n + j] + x * b.e_[k * n + j]) % a.p_);
    }
  return r;
}

std::uint32_t MatGF::det() const {
  std::vector<std::uint64_t> a(e_.begin(), e_.end());
  const std::size_t n = n_;
  std::uint64_t d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv * n + c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a[piv * n + k], a[c * n + k]);
      d = (p_ - d) % p_;
    }
    d = d * a[c * n + c] % p_;
    std::uint64_t iv = inv_mod(static_cast<std::uint32_t>(a[c * n + c]), p_);
    for (std::size_t r = c + 1; r < n; ++r) {
      std::uint64_t f = a[r * n + c] * iv % p_;
      if (!f) continue;
      for (std::size_t k = c; k < n; ++k) a[r * n + k] = (a[r * n + k] + (p_ - f) * a[c * n + k]) % p_;
    }
  }
  return static_cast<std::uint32_t>(d);
}

MatGF MatGF::inverse() const {
  const std::size_t n = n_;
  std::vector<std::uint64_t> a(e_.begin(), e_.end());
  MatGF r = identity(n, p_);
  std::vector<std::uint64_t> b(r.e_.begin(), r.e_.end());
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv * n + c] == 0) ++piv;
    if (piv == n) throw Error(ErrorCode::kInvalidArgument, "matrix is singular");
    for (std::size_t k = 0; k < n; ++k) {
      std::swap(a[piv * n + k], a[c * n + k]);
      std::swap(b[piv * n + k], b[c * n + k]);
    }
    std::uint64_t iv = inv_mod(static_cast<std::uint32_t>(a[c * n + c]), p_);
    for (std::size_t k = 0; k < n; ++k) {
      a[c * n + k] = a[c * n + k] * iv % p_;
      b[c * n + k] = b[c * n + k] * iv % p_;
    }
    for (std::size_t r2 = 0; r2 < n; ++r2) {
      if (r2 == c) continue;
      std::uint64_t f = a[r2 * n + c];
      if (!f) continue;
      for (std::size_t k = 0; k < n; ++k) {
        a[r2 * n + k] = (a[r2 * n + k] + (p_ - f) * a[c * n + k]) % p_;
        b[r2 * n + k] = (b[r2 * n + k] + (p_ - f) * b[c * n + k]) % p_;
      }
    }
  }
  for (std::size_t i = 0; i < n * n; ++i) r.e_[i] = static_cast<std::uint32_t>(b[i]);
  return r;
}

std::vector<std::uint32_t> MatGF::apply_row(const std::vector<std::uint32_t>& v) const {
  std::vector<std::uint32_t> out(n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    std::uint64_t x = v[i] % p_;
    if (!x) continue;
    for (std::size_t j = 0; j < n_; ++j)
      out[j] = static_cast<std::uint32_t>((out[j] + x * e_[i * n_ + j]) % p_);
  }
  return out;
}

std::string MatGF::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < n_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < n_; ++j) os << (j ? "," : "") << at(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

MatrixGroup::MatrixGroup(std::size_t n, std::uint32_t p, std::vector<MatGF> gens)
    : n_(n), p_(p), gens_(std::move(gens)) {
  for (const auto& g : gens_) {
    if (g.dim() != n || g.prime() != p)
      throw Error(ErrorCode::kDegreeMismatch, "generator of different shape or field");
    if (!g.is_invertible()) throw Error(ErrorCode::kInvalidArgument, "generator is singular");
  }
}

std::vector<MatGF> MatrixGroup::elements(std::uint64_t max_size) const {
  std::set<MatGF> seen{MatGF::identity(n_, p_)};
  std::vector<MatGF> queue{MatGF::identity(n_, p_)};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto& g : gens_) {
      MatGF y = queue[i] * g;
      if (seen.insert(y).second) {
        if (seen.size() > max_size)
          throw Error(ErrorCode::kThresholdExceeded, "matrix group closure exceeds threshold");
        queue.push_back(std::move(y));
      }
    }
  return {seen.begin(), seen.end()};
}

std::uint64_t gl_order(std::size_t n, std::uint64_t p) {
  std::uint64_t pn = checked_pow(p, n);
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t f = pn - checked_pow(p, i);
    if (r > UINT64_MAX / f) throw Error(ErrorCode::kOutOfRange, "group order overflows");
    r *= f;
  }
  return r;
}

std::vector<MatGF> enumerate_gl(std::size_t n, std::uint32_t p, const Limits& lim) {
  check_prime(p);
  std::uint64_t order = gl_order(n, p);
  if (order > lim.gl_enumeration)
    throw Error(ErrorCode::kThresholdExceeded,
                "|GL(" + std::to_string(n) + "," + std::to_string(p) + ")| = " +
                    std::to_string(order) + " exceeds enumeration threshold");
  std::uint64_t total = checked_pow(p, n * n);
  std::vector<MatGF> out;
  out.reserve(order);
  std::vector<std::uint32_t> e(n * n, 0);
  for (std::uint64_t k = 0; k < total; ++k) {
    MatGF m(n, p, e);
    if (m.is_invertible()) out.push_back(std::move(m));
    for (std::size_t i = n * n; i-- > 0;) {
      if (++e[i] < p) break;
      e[i] = 0;
    }
  }
  return out;
}

std::uint32_t smallest_primitive_root(std::uint32_t p) {
  check_prime(p);
  if (p == 2) return 1;
  for (std::uint32_t r = 2; r < p; ++r) {
    std::uint64_t x = 1;
    std::uint32_t ord = 0;
    do {
      x = x * r % p;
      ++ord;
    } while (x != 1);
    if (ord == p - 1) return r;
  }
  throw Error(ErrorCode::kInternal, "no primitive root found");
}

std::vector<MatGF> gl_generators(std::size_t n, std::uint32_t p) {
  std::vector<MatGF> out;
  if (p > 2) {
    MatGF d = MatGF::identity(n, p);
    d.set(0, 0, smallest_primitive_root(p));
    out.push_back(d);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      MatGF t = MatGF::identity(n, p);
      t.set(i, j, 1);
      out.push_back(t);
    }
  return out;
}

std::array<MatGF, 4> t_matrices() {
  return {MatGF(4, 2, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 1, 0, 0, 1}),
          MatGF(4, 2, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 1, 0, 1}),
          MatGF(4, 2, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0}),
          MatGF(4, 2, {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1})};
}

std::uint64_t vector_index(const std::vector<std::uint32_t>& v, std::uint32_t p) {
  std::uint64_t idx = 0;
  for (auto x : v) idx = idx * p + x % p;
  return idx;
}

std::vector<std::uint32_t> vector_at(std::uint64_t index, std::size_t n, std::uint32_t p) {
  std::vector<std::uint32_t> v(n);
  for (std::size_t i = n; i-- > 0;) {
    v[i] = static_cast<std::uint32_t>(index % p);
    index /= p;
  }
  return v;
}

Permutation matrix_to_perm(const MatGF& m, VectorAction action) {
  const std::size_t n = m.dim();
  const std::uint32_t p = m.prime();
  std::uint64_t total = checked_pow(p, n);
  std::uint64_t skip = action == VectorAction::kNonzero ? 1 : 0;
  std::vector<Point> img(total - skip);
  for (std::uint64_t i = skip; i < total; ++i)
    img[i - skip] = static_cast<Point>(vector_index(m.apply_row(vector_at(i, n, p)), p) - skip);
  return Permutation(std::move(img));
}

PermGroup matrix_group_to_perm(const MatrixGroup& g, VectorAction action, const Limits& lim) {
  std::uint64_t total = checked_pow(g.prime(), g.dim());
  if (total > lim.degree) throw Error(ErrorCode::kThresholdExceeded, "too many vectors");
  std::size_t deg = action == VectorAction::kNonzero ? total - 1 : total;
  std::vector<Permutation> gens;
  for (const auto& m : g.generators()) gens.push_back(matrix_to_perm(m, action));
  return PermGroup(std::max<std::size_t>(deg, 1), std::move(gens));
}

PermGroup affine_group(std::size_t n, std::uint32_t p, const std::vector<MatGF>& linear,
                       std::optional<std::uint64_t> known_order, const Limits& lim) {
  check_prime(p);
  std::uint64_t total = checked_pow(p, n);
  if (total > lim.degree) throw Error(ErrorCode::kThresholdExceeded, "too many vectors");
  std::vector<Permutation> gens;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Point> img(total);
    for (std::uint64_t x = 0; x < total; ++x) {
      auto v = vector_at(x, n, p);
      v[i] = (v[i] + 1) % p;
      img[x] = static_cast<Point>(vector_index(v, p));
    }
    gens.emplace_back(std::move(img));
  }
  for (const auto& m : linear) {
    if (m.dim() != n || m.prime() != p)
      throw Error(ErrorCode::kDegreeMismatch, "linear part of different shape or field");
    gens.push_back(matrix_to_perm(m, VectorAction::kAll));
  }
  return PermGroup(total, std::move(gens), known_order);
}

PermGroup agl(std::size_t n, std::uint32_t p, const Limits& lim) {
  std::uint64_t order = checked_pow(p, n) * gl_order(n, p);
  return affine_group(n, p, gl_generators(n, p), order, lim);
}

namespace {

std::vector<std::uint32_t> canonical_cyclic(const std::vector<std::uint32_t>& w) {
  std::vector<std::uint32_t> best = w;
  std::vector<std::uint32_t> inv(w.rbegin(), w.rend());
  for (auto& x : inv) x ^= 1u;
  const std::vector<std::uint32_t>* both[] = {&w, &inv};
  for (const auto* src : both)
    for (std::size_t k = 0; k < src->size(); ++k) {
      std::vector<std::uint32_t> r(src->begin() + static_cast<long>(k), src->end());
      r.insert(r.end(), src->begin(), src->begin() + static_cast<long>(k));
      if (r < best) best = std::move(r);
    }
  return best;
}

Word word_from_letters(const std::vector<std::uint32_t>& letters) {
  std::vector<Syllable> s;
  for (auto x : letters) s.push_back({x / 2, (x & 1u) ? -1 : 1});
  return Word(std::move(s));
}

bool enumerates_to(const Presentation& pres, std::uint64_t order, const CosetOptions& opt) {
  try {
    return todd_coxeter(pres, {}, opt).cosets == order;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kBudgetExhausted) throw;
    return false;
  }
}

// w == u^k where a smaller power of u is already trivial.
bool implied_by_root(const std::vector<std::uint32_t>& w, const std::vector<Permutation>& prefix) {
  for (std::size_t d = 1; d < w.size(); ++d) {
    if (w.size() % d) continue;
    bool periodic = true;
    for (std::size_t i = d; i < w.size() && periodic; ++i) periodic = w[i] == w[i - d];
    if (!periodic) continue;
    for (std::size_t j = d; j < w.size(); j += d)
      if (prefix[j].is_identity()) return true;
  }
  return false;
}

}  // namespace

Presentation harvest_presentation(const std::vector<Permutation>& gens,
                                  const std::vector<std::string>& names, std::uint64_t order,
                                  std::size_t max_length, const CosetOptions& opt) {
  if (gens.size() != names.size() || gens.empty())
    throw Error(ErrorCode::kInvalidArgument, "one name per generator required");
  const std::size_t deg = gens[0].degree();
  std::vector<Permutation> letters;
  for (const auto& g : gens) {
    letters.push_back(g);
    letters.push_back(g.inverse());
  }
  const auto cols = static_cast<std::uint32_t>(letters.size());
  Presentation pres;
  pres.names = names;
  std::set<std::vector<std::uint32_t>> found;
  CosetOptions small = opt;
  small.budget = std::min<std::uint64_t>(opt.budget, std::max<std::uint64_t>(64 * order, 20000));
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::vector<std::vector<std::uint32_t>> fresh;
    std::vector<std::uint32_t> word;
    std::vector<Permutation> prefix{Permutation(deg)};
    // Depth-first over freely reduced words of exactly `len` letters.
    std::function<void()> dfs = [&] {
      if (word.size() == len) {
        if (!prefix.back().is_identity()) return;
        if (len > 1 && word.front() == (word.back() ^ 1u)) return;
        auto c = canonical_cyclic(word);
        if (implied_by_root(word, prefix)) return;
        if (found.insert(c).second) fresh.push_back(c);
        return;
      }
      for (std::uint32_t x = 0; x < cols; ++x) {
        if (!word.empty() && x == (word.back() ^ 1u)) continue;
        word.push_back(x);
        prefix.push_back(prefix.back() * letters[x]);
        dfs();
        prefix.pop_back();
        word.pop_back();
      }
    };
    dfs();
    if (fresh.empty()) continue;
    for (const auto& w : fresh) pres.relators.push_back(word_from_letters(w));
    if (!enumerates_to(pres, order, small)) continue;
    // Drop relators the rest already imply, longest first.
    for (std::size_t i = pres.relators.size(); i-- > 0;) {
      Presentation trial = pres;
      trial.relators.erase(trial.relators.begin() + static_cast<long>(i));
      if (enumerates_to(trial, order, small)) pres = std::move(trial);
    }
    return pres;
  }
  throw Error(ErrorCode::kBudgetExhausted, "no presentation found within the word length bound");
}

AffinePattern agl_pattern(std::size_t n, std::uint32_t p, const CosetOptions& opt) {
  check_prime(p);
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "dimension must be positive");
  AffinePattern out;
  out.order = checked_pow(p, n) * gl_order(n, p);
  const std::size_t d = n + 1;
  // Matrices [[A, c], [0, 1]]; the translation has A = 1, c = e_1.
  MatGF t = MatGF::identity(d, p);
  t.set(0, n, 1);
  if (n == 1) {
    std::uint32_t r = smallest_primitive_root(p);
    std::ostringstream os;
    os << "gens: t m\nrels: t^" << p << ", m^" << (p - 1) << ", t^m*t^-" << r << '\n';
    out.presentation = parse_presentation(os.str());
    // t^m = t^r holds for A = r^-1.
    MatGF m = MatGF::identity(d, p);
    m.set(0, 0, inv_mod(r, p));
    out.canonical_images = {t, m};
  } else {
    // One translation and two linear generators of GL(n, p).
    std::vector<MatGF> lin;
    if (n == 2) {
      lin = {MatGF(2, p, {1, 1, 0, 1}), MatGF(2, p, {0, 1, 1, 1})};
    } else {
      lin = gl_generators(n, p);
    }
    std::vector<MatGF> embedded;
    for (const auto& a : lin) {
      MatGF e = MatGF::identity(d, p);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) e.set(i, j, a.at(i, j));
      embedded.push_back(e);
    }
    std::vector<MatGF> imgs{t};
    imgs.insert(imgs.end(), embedded.begin(), embedded.end());
    std::vector<Permutation> perms;
    std::vector<std::string> names{"t"};
    for (std::size_t i = 0; i < imgs.size(); ++i) {
      perms.push_back(matrix_to_perm(imgs[i], VectorAction::kNonzero));
      if (i > 0) names.push_back("m" + std::to_string(i));
    }
    PermGroup check(perms[0].degree(), perms);
    if (check.order() != out.order)
      throw Error(ErrorCode::kInternal, "chosen generators do not generate the affine group");
    out.presentation = harvest_presentation(perms, names, out.order, 14, opt);
    out.canonical_images = imgs;
  }
  return out;
}

}  // namespace holoforge
