#include <algorithm>
#include <numeric>
#include <sstream>

#include "holoforge/error.hpp"
#include "holoforge/perm.hpp"

namespace holoforge {

Permutation::Permutation(std::size_t degree) : img_(degree) {
  std::iota(img_.begin(), img_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (Point x : img_) {
    if (x >= img_.size() || seen[x])
      throw Error(ErrorCode::kInvalidArgument, "images do not form a bijection");
    seen[x] = true;
  }
}

Permutation Permutation::from_cycles(std::size_t degree,
                                     const std::vector<std::vector<Point>>& cycles) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  std::vector<bool> used(degree, false);
  for (const auto& cyc : cycles) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      Point x = cyc[i];
      if (x >= degree || used[x])
        throw Error(ErrorCode::kInvalidArgument, "malformed cycle");
      used[x] = true;
      img[x] = cyc[(i + 1) % cyc.size()];
    }
  }
  return Permutation(std::move(img));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.img_.resize(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) r.img_[img_[i]] = static_cast<Point>(i);
  return r;
}

Permutation Permutation::pow(std::int64_t k) const {
  Permutation base = k < 0 ? inverse() : *this;
  std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-k) : static_cast<std::uint64_t>(k);
  Permutation acc(img_.size());
  while (e) {
    if (e & 1u) acc = acc * base;
    base = base * base;
    e >>= 1u;
  }
  return acc;
}

std::uint64_t Permutation::order() const {
  std::vector<bool> seen(img_.size(), false);
  std::uint64_t ord = 1;
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (Point x = static_cast<Point>(i); !seen[x]; x = img_[x]) {
      seen[x] = true;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

Point Permutation::smallest_moved_point() const noexcept {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i) return static_cast<Point>(i);
  return static_cast<Point>(img_.size());
}

Permutation Permutation::conjugate(const Permutation& by) const {
  // x^(by^-1 p by): image of by[x] is by[p[x]]
  Permutation r;
  r.img_.resize(img_.size());
  for (std::size_t x = 0; x < img_.size(); ++x) r.img_[by.img_[x]] = by.img_[img_[x]];
  return r;
}

Permutation Permutation::shifted(std::size_t new_degree, std::size_t offset) const {
  Permutation r(new_degree);
  for (std::size_t x = 0; x < img_.size(); ++x)
    r.img_[x + offset] = static_cast<Point>(img_[x] + offset);
  return r;
}

std::string Permutation::to_cycle_string() const {
  std::ostringstream os;
  std::vector<bool> seen(img_.size(), false);
  bool any = false;
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (seen[i] || img_[i] == i) continue;
    os << '(';
    Point x = static_cast<Point>(i);
    bool first = true;
    while (!seen[x]) {
      seen[x] = true;
      if (!first) os << ' ';
      os << x;
      first = false;
      x = img_[x];
    }
    os << ')';
    any = true;
  }
  if (!any) os << "()";
  return os.str();
}

Permutation operator*(const Permutation& lhs, const Permutation& rhs) {
  if (lhs.img_.size() != rhs.img_.size())
    throw Error(ErrorCode::kDegreeMismatch, "product of permutations of different degree");
  Permutation r;
  r.img_.resize(lhs.img_.size());
  for (std::size_t i = 0; i < lhs.img_.size(); ++i) r.img_[i] = rhs.img_[lhs.img_[i]];
  return r;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (Point x : p.images()) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

std::uint64_t commutator_order(const Permutation& a, const Permutation& b) {
  return (a.inverse() * b.inverse() * a * b).order();
}

}  // namespace holoforge
