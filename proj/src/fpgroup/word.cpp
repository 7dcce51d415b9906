#include <cstdlib>

#include "holoforge/error.hpp"
#include "holoforge/fpgroup.hpp"

namespace holoforge {

namespace {

void push_reduced(std::vector<Syllable>& out, Syllable s) {
  if (s.exp == 0) return;
  if (!out.empty() && out.back().gen == s.gen) {
    out.back().exp += s.exp;
    if (out.back().exp == 0) out.pop_back();
    return;
  }
  out.push_back(s);
}

}  // namespace

Word::Word(std::vector<Syllable> syllables) {
  for (const auto& s : syllables) push_reduced(syl_, s);
}

Word Word::generator(std::uint32_t gen, std::int64_t exp) { return Word({{gen, exp}}); }

std::uint64_t Word::length() const noexcept {
  std::uint64_t n = 0;
  for (const auto& s : syl_) n += static_cast<std::uint64_t>(std::llabs(s.exp));
  return n;
}

Word Word::inverse() const {
  Word r;
  for (auto it = syl_.rbegin(); it != syl_.rend(); ++it) r.syl_.push_back({it->gen, -it->exp});
  return r;
}

Word Word::pow(std::int64_t k) const {
  Word base = k < 0 ? inverse() : *this;
  std::int64_t e = k < 0 ? -k : k;
  if (base.syl_.size() == 1) return Word({{base.syl_[0].gen, base.syl_[0].exp * e}});
  Word acc;
  for (std::int64_t i = 0; i < e; ++i) acc = acc * base;
  return acc;
}

Word Word::conjugate(const Word& by) const { return by.inverse() * *this * by; }

Word Word::commutator(const Word& u, const Word& v) {
  return u.inverse() * v.inverse() * u * v;
}

Word Word::cyclically_reduced() const {
  std::vector<Syllable> s = syl_;
  while (s.size() >= 2 && s.front().gen == s.back().gen) {
    s.front().exp += s.back().exp;
    s.pop_back();
    if (s.front().exp == 0) s.erase(s.begin());
  }
  return Word(std::move(s));
}

Word Word::shifted(std::uint32_t offset) const {
  Word r = *this;
  for (auto& s : r.syl_) s.gen += offset;
  return r;
}

std::vector<std::uint32_t> Word::letters() const {
  std::vector<std::uint32_t> out;
  for (const auto& s : syl_) {
    std::uint32_t col = 2 * s.gen + (s.exp < 0 ? 1u : 0u);
    for (std::int64_t i = 0; i < std::llabs(s.exp); ++i) out.push_back(col);
  }
  return out;
}

Word operator*(const Word& a, const Word& b) {
  Word r = a;
  for (const auto& s : b.syl_) push_reduced(r.syl_, s);
  return r;
}

int Presentation::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return -1;
}

Permutation evaluate(const Word& w, const std::vector<Permutation>& images) {
  if (images.empty()) throw Error(ErrorCode::kInvalidArgument, "no generator images");
  Permutation acc(images[0].degree());
  for (const auto& s : w.syllables()) {
    if (s.gen >= images.size())
      throw Error(ErrorCode::kInvalidArgument, "word uses a generator without image");
    acc = acc * images[s.gen].pow(s.exp);
  }
  return acc;
}

bool verify_images(const Presentation& p, const std::vector<Permutation>& images) {
  if (images.size() != p.generator_count())
    throw Error(ErrorCode::kInvalidArgument, "one image per generator required");
  for (const auto& img : images)
    if (img.degree() != images[0].degree())
      throw Error(ErrorCode::kDegreeMismatch, "images of different degree");
  for (const auto& r : p.relators)
    if (!evaluate(r, images).is_identity()) return false;
  return true;
}

Presentation extend_presentation(const Presentation& group, const Presentation& aut,
                                 const ActionTable& action) {
  const auto ng = static_cast<std::uint32_t>(group.generator_count());
  if (action.images.size() != aut.generator_count())
    throw Error(ErrorCode::kInvalidArgument, "action table misses an automorphism generator");
  Presentation out;
  out.names = group.names;
  out.names.insert(out.names.end(), aut.names.begin(), aut.names.end());
  out.relators = group.relators;
  for (const auto& r : aut.relators) out.relators.push_back(r.shifted(ng));
  for (std::uint32_t g = 0; g < action.images.size(); ++g) {
    if (action.images[g].size() != ng)
      throw Error(ErrorCode::kInvalidArgument, "action table misses a group generator");
    Word ag = Word::generator(ng + g);
    for (std::uint32_t a = 0; a < ng; ++a) {
      for (const auto& s : action.images[g][a].syllables())
        if (s.gen >= ng)
          throw Error(ErrorCode::kInvalidArgument, "action word leaves the group generators");
      out.relators.push_back(Word::generator(a).conjugate(ag) * action.images[g][a].inverse());
    }
  }
  return out;
}

}  // namespace holoforge
