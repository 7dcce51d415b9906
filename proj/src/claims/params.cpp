#include "holoforge/abelian.hpp"
#include "holoforge/claims.hpp"
#include "holoforge/error.hpp"
#include "holoforge/matgf.hpp"

namespace holoforge {

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t mod) {
  if (mod == 1) return 0;
  __int128 r = 1, b = ((base % mod) + mod) % mod;
  for (; exp > 0; exp >>= 1) {
    if (exp & 1) r = r * b % mod;
    b = b * b % mod;
  }
  return static_cast<std::int64_t>(r);
}

std::int64_t multiplicative_order(std::int64_t u, std::int64_t mod) {
  u = ((u % mod) + mod) % mod;
  if (mod == 1) return 1;
  std::int64_t x = u;
  for (std::int64_t k = 1; k <= mod; ++k) {
    if (x == 1) return k;
    if (x == 0) return 0;
    x = static_cast<std::int64_t>(static_cast<__int128>(x) * u % mod);
  }
  return 0;
}

namespace {

std::int64_t power_or_missing(std::int64_t p, std::int64_t k) {
  if (k < 0) return -1;
  return static_cast<std::int64_t>(ipow(static_cast<std::uint64_t>(p), static_cast<unsigned>(k)));
}

std::int64_t half(std::int64_t v) { return v >= 2 && v % 2 == 0 ? v / 2 : -1; }

std::int64_t scaled(std::int64_t c, std::int64_t v) { return v < 0 ? -1 : c * v; }

}  // namespace

PaperParams PaperParams::derive(std::int64_t p, std::int64_t n, std::int64_t m) {
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p)))
    throw Error(ErrorCode::kInvalidArgument, "p must be prime");
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "n must be positive");
  if (m < 0) throw Error(ErrorCode::kInvalidArgument, "m must be non-negative");
  PaperParams q;
  q.p = p;
  q.n = n;
  q.m = m;

  q.n1 = power_or_missing(2, n);
  q.n2 = power_or_missing(2, n - 2);
  q.n3 = half(q.n1);
  q.n4 = half(q.n2);

  q.x = q.n1;
  q.y = q.n2;
  q.t = power_or_missing(2, n - 1);
  q.v = half(q.x);
  q.w = half(q.y);

  const std::int64_t pn = power_or_missing(p, n);
  q.z = power_or_missing(p, n - 1);
  q.z1 = power_or_missing(p, n - 2);
  q.s = smallest_primitive_root(static_cast<std::uint32_t>(p));
  q.t_exp = p == 2 ? 1 : mod_pow(q.s, p - 2, p);

  q.tt = q.z;
  q.ap = (p - 1) * q.z + 1;
  q.af = (1 + p) % pn;
  q.x_root = 1;
  for (std::int64_t c = 2; c < pn && p > 2; ++c)
    if (multiplicative_order(c, pn) == p - 1) {
      q.x_root = c;
      break;
    }
  q.y1 = p == 2 ? 1 : q.s;

  q.x2 = power_or_missing(3, n - 1);
  q.y_t5 = scaled(2, q.x2);
  q.y1_t5 = scaled(2, power_or_missing(3, n - 2));
  q.yt = scaled(4, power_or_missing(3, n - 2));

  if (m >= 1) {
    q.n1_t3 = power_or_missing(2, m);
    q.n2_t3 = power_or_missing(2, m - 2);
    q.n3_t3 = half(q.n1_t3);
    q.n4_t3 = half(q.n2_t3);
  }
  return q;
}

Json PaperParams::to_json() const {
  Json j = Json::object();
  auto put = [&](const char* k, std::int64_t v) {
    if (v >= 0) j[k] = v;
  };
  put("p", p);
  put("n", n);
  put("m", m);
  put("n1", n1);
  put("n2", n2);
  put("n3", n3);
  put("n4", n4);
  put("x", x);
  put("y", y);
  put("t", t);
  put("v", v);
  put("w", w);
  put("z", z);
  put("z1", z1);
  put("s", s);
  put("t_exp", t_exp);
  put("tt", tt);
  put("ap", ap);
  put("af", af);
  put("x_root", x_root);
  put("y1", y1);
  put("x2", x2);
  put("y_t5", y_t5);
  put("y1_t5", y1_t5);
  put("yt", yt);
  put("n1_t3", n1_t3);
  put("n2_t3", n2_t3);
  put("n3_t3", n3_t3);
  put("n4_t3", n4_t3);
  return j;
}

}  // namespace holoforge
