#include <algorithm>
#include <cctype>
#include <numeric>

#include "holoforge/abelian.hpp"
#include "holoforge/error.hpp"

namespace holoforge {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t t) {
  if (t < 2) return std::nullopt;
  std::uint64_t p = 2;
  while (t % p != 0) ++p;
  unsigned n = 0;
  std::uint64_t r = t;
  while (r % p == 0) {
    r /= p;
    ++n;
  }
  if (r != 1) return std::nullopt;
  return std::make_pair(p, n);
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base)
      throw Error(ErrorCode::kOutOfRange, "integer power overflows");
    r *= base;
  }
  return r;
}

AbelianPGroup::AbelianPGroup(std::uint64_t p_, unsigned n_, unsigned m_) : p(p_), n(n_), m(m_) {
  if (!is_prime(p)) throw Error(ErrorCode::kInvalidArgument, std::to_string(p) + " is not prime");
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "head exponent must be at least 1");
  ipow(p, n + m);
}

std::string AbelianPGroup::to_string() const {
  std::string s = "C(" + std::to_string(head_order()) + ")";
  if (m > 0) s += "xC(" + std::to_string(p) + ")";
  if (m > 1) s += "^" + std::to_string(m);
  return s;
}

std::uint64_t element_index(const AbelianPGroup& g, const AbElement& x) {
  std::uint64_t idx = x.head % g.head_order();
  for (unsigned i = 0; i < g.m; ++i) idx = idx * g.p + x.tail.at(i) % g.p;
  return idx;
}

AbElement element_at(const AbelianPGroup& g, std::uint64_t index) {
  if (index >= g.order()) throw Error(ErrorCode::kOutOfRange, "element index out of range");
  AbElement x;
  x.tail.assign(g.m, 0);
  for (unsigned i = g.m; i-- > 0;) {
    x.tail[i] = index % g.p;
    index /= g.p;
  }
  x.head = index;
  return x;
}

AbElement add(const AbelianPGroup& g, const AbElement& x, const AbElement& y) {
  AbElement r;
  r.head = (x.head + y.head) % g.head_order();
  r.tail.resize(g.m);
  for (unsigned i = 0; i < g.m; ++i) r.tail[i] = (x.tail[i] + y.tail[i]) % g.p;
  return r;
}

AbElement scale(const AbelianPGroup& g, const AbElement& x, std::int64_t k) {
  auto mod = [](std::int64_t v, std::uint64_t q) {
    auto qi = static_cast<std::int64_t>(q);
    return static_cast<std::uint64_t>(((v % qi) + qi) % qi);
  };
  AbElement r;
  std::uint64_t h = g.head_order();
  std::uint64_t kh = mod(k, h);
  r.head = static_cast<std::uint64_t>((static_cast<unsigned __int128>(kh) * x.head) % h);
  r.tail.resize(g.m);
  std::uint64_t kp = mod(k, g.p);
  for (unsigned i = 0; i < g.m; ++i) r.tail[i] = (kp * x.tail[i]) % g.p;
  return r;
}

std::uint64_t element_order(const AbelianPGroup& g, const AbElement& x) {
  std::uint64_t h = g.head_order();
  std::uint64_t o = h / std::gcd(h, x.head);
  for (auto t : x.tail)
    if (t % g.p != 0) o = std::lcm(o, g.p);
  return o;
}

AbElement basis_element(const AbelianPGroup& g, std::size_t i) {
  AbElement x;
  x.tail.assign(g.m, 0);
  if (i == 0)
    x.head = 1 % g.head_order();
  else
    x.tail.at(i - 1) = 1;
  return x;
}

std::vector<AbElement> enumerate_elements(const AbelianPGroup& g, const Limits& lim) {
  if (g.order() > lim.enumeration)
    throw Error(ErrorCode::kThresholdExceeded,
                "group order " + std::to_string(g.order()) + " exceeds enumeration threshold");
  std::vector<AbElement> out;
  for (std::uint64_t i = 0; i < g.order(); ++i) out.push_back(element_at(g, i));
  return out;
}

bool is_well_defined(const AbelianPGroup& g, const EndoMatrix& e) {
  if (e.images.size() != g.rank()) return false;
  for (std::size_t i = 0; i < e.images.size(); ++i) {
    const auto& x = e.images[i];
    if (x.tail.size() != g.m || x.head >= g.head_order()) return false;
    for (auto t : x.tail)
      if (t >= g.p) return false;
    if (i > 0 && element_order(g, x) > g.p) return false;
  }
  return true;
}

bool is_invertible(const AbelianPGroup& g, const EndoMatrix& e) {
  if (!is_well_defined(g, e)) return false;
  const std::size_t r = g.rank();
  const std::uint64_t p = g.p;
  std::vector<std::vector<std::uint64_t>> a(r, std::vector<std::uint64_t>(r));
  for (std::size_t i = 0; i < r; ++i) {
    // Head coordinate of G/pG is the head residue mod p (for n == 1) or the
    // head residue's class in C_{p^n}/pC_{p^n}; tail images have head in p^(n-1)Z.
    a[i][0] = (g.n == 1 || i == 0) ? e.images[i].head % p : 0;
    for (std::size_t j = 0; j < g.m; ++j) a[i][j + 1] = e.images[i].tail[j];
  }
  auto inv_mod = [p](std::uint64_t v) {
    std::uint64_t r = 1, b = v % p, k = p - 2;
    while (k) {
      if (k & 1) r = r * b % p;
      b = b * b % p;
      k >>= 1;
    }
    return r;
  };
  for (std::size_t col = 0; col < r; ++col) {
    std::size_t piv = col;
    while (piv < r && a[piv][col] == 0) ++piv;
    if (piv == r) return false;
    std::swap(a[piv], a[col]);
    std::uint64_t iv = inv_mod(a[col][col]);
    for (std::size_t row = col + 1; row < r; ++row) {
      std::uint64_t f = a[row][col] * iv % p;
      for (std::size_t k = col; k < r; ++k) a[row][k] = (a[row][k] + (p - f) * a[col][k]) % p;
    }
  }
  return true;
}

AbElement apply(const AbelianPGroup& g, const EndoMatrix& e, const AbElement& x) {
  AbElement r = scale(g, e.images[0], static_cast<std::int64_t>(x.head));
  for (unsigned i = 0; i < g.m; ++i)
    r = add(g, r, scale(g, e.images[i + 1], static_cast<std::int64_t>(x.tail[i])));
  return r;
}

Permutation endo_permutation(const AbelianPGroup& g, const EndoMatrix& e) {
  std::vector<Point> img(g.order());
  for (std::uint64_t i = 0; i < g.order(); ++i)
    img[i] = static_cast<Point>(element_index(g, apply(g, e, element_at(g, i))));
  return Permutation(std::move(img));
}

Permutation automorphism_from_images(const AbelianPGroup& g,
                                     const std::vector<AbElement>& images) {
  EndoMatrix e{images};
  if (!is_well_defined(g, e))
    throw Error(ErrorCode::kInvalidArgument, "images do not define an endomorphism");
  if (!is_invertible(g, e))
    throw Error(ErrorCode::kInvalidArgument, "images do not define an automorphism");
  return endo_permutation(g, e);
}

std::vector<EndoMatrix> automorphism_matrices(const AbelianPGroup& g, const Limits& lim) {
  if (g.order() > lim.enumeration)
    throw Error(ErrorCode::kThresholdExceeded,
                "group order " + std::to_string(g.order()) + " exceeds enumeration threshold");
  // Candidate images: any element for the head, order-p elements for the tail.
  std::vector<AbElement> all = enumerate_elements(g, lim);
  std::vector<AbElement> small;
  for (const auto& x : all)
    if (element_order(g, x) <= g.p) small.push_back(x);
  std::vector<EndoMatrix> out;
  std::vector<std::size_t> pos(g.rank(), 0);
  for (;;) {
    EndoMatrix e;
    e.images.push_back(all[pos[0]]);
    for (std::size_t i = 1; i < g.rank(); ++i) e.images.push_back(small[pos[i]]);
    if (is_invertible(g, e)) out.push_back(std::move(e));
    std::size_t k = g.rank();
    while (k-- > 0) {
      std::size_t limit = k == 0 ? all.size() : small.size();
      if (++pos[k] < limit) break;
      pos[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

PermGroup automorphism_group(const AbelianPGroup& g, const Limits& lim) {
  auto mats = automorphism_matrices(g, lim);
  std::size_t deg = g.order();
  std::vector<Permutation> gens;
  PermGroup aut(deg, {});
  for (const auto& e : mats) {
    Permutation s = endo_permutation(g, e);
    if (aut.contains(s)) continue;
    gens.push_back(std::move(s));
    aut = PermGroup(deg, gens);
  }
  if (aut.order() != mats.size())
    throw Error(ErrorCode::kInternal, "automorphism count disagrees with generated group");
  return PermGroup(deg, gens, mats.size());
}

Permutation translation(const AbelianPGroup& g, const AbElement& t) {
  std::vector<Point> img(g.order());
  for (std::uint64_t i = 0; i < g.order(); ++i)
    img[i] = static_cast<Point>(element_index(g, add(g, element_at(g, i), t)));
  return Permutation(std::move(img));
}

std::vector<Permutation> translation_generators(const AbelianPGroup& g) {
  std::vector<Permutation> out;
  for (std::size_t i = 0; i < g.rank(); ++i) out.push_back(translation(g, basis_element(g, i)));
  return out;
}

PermGroup holomorph(const AbelianPGroup& g, const Limits& lim) {
  PermGroup aut = automorphism_group(g, lim);
  std::vector<Permutation> gens = translation_generators(g);
  for (const auto& s : aut.generators()) gens.push_back(s);
  return PermGroup(g.order(), std::move(gens), g.order() * aut.order());
}

PermGroup holomorph_cyclic(std::uint64_t t, const Limits& lim) {
  auto pp = prime_power(t);
  if (!pp) throw Error(ErrorCode::kInvalidArgument, std::to_string(t) + " is not a prime power");
  return holomorph(AbelianPGroup(pp->first, pp->second, 0), lim);
}

PermGroup cyclic_holomorph(std::uint64_t n, const Limits& lim) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "cyclic order must be positive");
  if (n > lim.enumeration)
    throw Error(ErrorCode::kThresholdExceeded, "cyclic order exceeds enumeration threshold");
  if (n == 1) return PermGroup::trivial(1);
  std::vector<Point> shift(n);
  for (std::uint64_t x = 0; x < n; ++x) shift[x] = static_cast<Point>((x + 1) % n);
  std::vector<Permutation> gens{Permutation(shift)};
  PermGroup units(n, {});
  std::vector<Permutation> unit_gens;
  std::uint64_t phi = 0;
  for (std::uint64_t u = 1; u < n; ++u) {
    if (std::gcd(u, n) != 1) continue;
    ++phi;
    std::vector<Point> img(n);
    for (std::uint64_t x = 0; x < n; ++x) img[x] = static_cast<Point>(u * x % n);
    Permutation s(std::move(img));
    if (units.contains(s)) continue;
    unit_gens.push_back(s);
    units = PermGroup(n, unit_gens);
  }
  gens.insert(gens.end(), unit_gens.begin(), unit_gens.end());
  return PermGroup(n, std::move(gens), n * phi);
}

PermGroup coprime_holomorph_product(const std::vector<std::uint64_t>& ts, const Limits& lim) {
  if (ts.empty()) throw Error(ErrorCode::kInvalidArgument, "no factors given");
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t j = i + 1; j < ts.size(); ++j)
      if (std::gcd(ts[i], ts[j]) != 1)
        throw Error(ErrorCode::kInvalidArgument, "factors " + std::to_string(ts[i]) + " and " +
                                                     std::to_string(ts[j]) + " are not coprime");
  PermGroup acc = holomorph_cyclic(ts[0], lim);
  for (std::size_t i = 1; i < ts.size(); ++i)
    acc = direct_product(acc, holomorph_cyclic(ts[i], lim));
  return acc;
}

std::vector<std::uint64_t> parse_group_spec(std::string_view spec) {
  std::vector<std::uint64_t> out;
  std::size_t i = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw ParseError(msg, 1, static_cast<int>(i) + 1);
  };
  auto skip_ws = [&] {
    while (i < spec.size() && std::isspace(static_cast<unsigned char>(spec[i]))) ++i;
  };
  auto number = [&]() -> std::uint64_t {
    skip_ws();
    if (i >= spec.size() || !std::isdigit(static_cast<unsigned char>(spec[i])))
      fail("expected a positive integer");
    std::uint64_t v = 0;
    while (i < spec.size() && std::isdigit(static_cast<unsigned char>(spec[i]))) {
      if (v > (UINT64_MAX - 9) / 10) fail("integer out of range");
      v = v * 10 + static_cast<std::uint64_t>(spec[i++] - '0');
    }
    return v;
  };
  auto expect = [&](char c) {
    skip_ws();
    if (i >= spec.size() || spec[i] != c) fail(std::string("expected '") + c + "'");
    ++i;
  };
  for (;;) {
    expect('C');
    expect('(');
    std::uint64_t k = number();
    if (k < 1) fail("cyclic order must be positive");
    expect(')');
    std::uint64_t rep = 1;
    skip_ws();
    if (i < spec.size() && spec[i] == '^') {
      ++i;
      rep = number();
      if (rep < 1) fail("repetition must be positive");
    }
    for (std::uint64_t r = 0; r < rep; ++r) out.push_back(k);
    skip_ws();
    if (i == spec.size()) break;
    if (spec[i] != 'x') fail("expected 'x' or end of spec");
    ++i;
  }
  return out;
}

std::optional<AbelianPGroup> as_abelian_p_group(const std::vector<std::uint64_t>& factors) {
  std::vector<std::uint64_t> f;
  for (auto k : factors)
    if (k != 1) f.push_back(k);
  if (f.empty()) return std::nullopt;
  std::sort(f.begin(), f.end(), std::greater<>());
  auto head = prime_power(f[0]);
  if (!head) return std::nullopt;
  for (std::size_t i = 1; i < f.size(); ++i)
    if (f[i] != head->first) return std::nullopt;
  return AbelianPGroup(head->first, head->second, static_cast<unsigned>(f.size() - 1));
}

}  // namespace holoforge
