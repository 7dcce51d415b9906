#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "holoforge/limits.hpp"
#include "holoforge/perm.hpp"

namespace holoforge {

struct Syllable {
  std::uint32_t gen = 0;
  std::int64_t exp = 0;

  friend bool operator==(const Syllable&, const Syllable&) = default;
};

/// Freely reduced word in abstract generators.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Syllable> syllables);
  static Word generator(std::uint32_t gen, std::int64_t exp = 1);

  const std::vector<Syllable>& syllables() const noexcept { return syl_; }
  bool empty() const noexcept { return syl_.empty(); }
  /// Sum of absolute exponents.
  std::uint64_t length() const noexcept;

  Word inverse() const;
  Word pow(std::int64_t k) const;
  /// by^-1 * this * by
  Word conjugate(const Word& by) const;
  /// u^-1 v^-1 u v
  static Word commutator(const Word& u, const Word& v);
  Word cyclically_reduced() const;
  /// Generator indices shifted by `offset`.
  Word shifted(std::uint32_t offset) const;

  /// One letter per unit exponent: column 2g for g, 2g+1 for g^-1.
  std::vector<std::uint32_t> letters() const;

  friend Word operator*(const Word& a, const Word& b);
  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Syllable> syl_;
};

struct Presentation {
  std::vector<std::string> names;
  std::vector<Word> relators;

  std::size_t generator_count() const noexcept { return names.size(); }
  /// -1 when absent.
  int index_of(std::string_view name) const;

  friend bool operator==(const Presentation&, const Presentation&) = default;
};

/// DSL: `gens: a b c` then `rels: r1, r2, ...`; statements separated by
/// newlines or ';'. `x^y` with a word y is y^-1 x y, `(x,y)` is x^-1 y^-1 x y.
Presentation parse_presentation(std::string_view text);
/// Parses one word against an existing generator list.
Word parse_word(std::string_view text, const std::vector<std::string>& names);

std::string format_word(const Word& w, const std::vector<std::string>& names);
std::string format_presentation(const Presentation& p);

enum class CosetStrategy { kHltLookahead, kFelsch };

struct CosetOptions {
  CosetStrategy strategy = CosetStrategy::kHltLookahead;
  std::uint64_t budget = default_limits().coset_budget;
};

struct CosetTable {
  std::size_t generators = 0;
  std::size_t cosets = 0;
  /// table[c * 2 * generators + col]; col 2g is g, 2g+1 is g^-1.
  std::vector<std::uint32_t> table;
  bool complete = false;
  std::uint64_t total_defined = 0;
  std::uint64_t max_live = 0;

  std::uint32_t act(std::uint32_t coset, std::uint32_t col) const {
    return table[coset * 2 * generators + col];
  }
  /// Action of generator g on cosets.
  Permutation generator_action(std::uint32_t g) const;
};

/// Enumerates the cosets of the subgroup generated by `subgroup`. Throws
/// kBudgetExhausted when the live-coset budget runs out. The result is
/// standardized: coset 0 is the subgroup, the rest in breadth-first order.
CosetTable todd_coxeter(const Presentation& p, const std::vector<Word>& subgroup,
                        const CosetOptions& opt = {});

/// Regular action on the cosets of the trivial subgroup.
PermGroup presentation_to_perm_group(const Presentation& p, const CosetOptions& opt = {});

/// Action on the cosets of a subgroup (not necessarily faithful).
PermGroup coset_action(const Presentation& p, const std::vector<Word>& subgroup,
                       const CosetOptions& opt = {});

Permutation evaluate(const Word& w, const std::vector<Permutation>& images);
bool verify_images(const Presentation& p, const std::vector<Permutation>& images);

/// For each automorphism generator, the image word of each group generator.
struct ActionTable {
  std::vector<std::vector<Word>> images;  // [aut generator][group generator]
};

/// Generators of groupP followed by those of autP; relators of both plus
/// a^g * w^-1 for every pair.
Presentation extend_presentation(const Presentation& group, const Presentation& aut,
                                 const ActionTable& action);

/// A permutation representation of small degree: cosets of a subgroup generated
/// by a subset of the generators, accepted when its order equals `order`.
struct FaithfulRep {
  PermGroup group;
  std::vector<std::uint32_t> subgroup_generators;
};

std::optional<FaithfulRep> faithful_representation(const Presentation& p, std::uint64_t order,
                                                   const CosetOptions& opt = {},
                                                   std::size_t max_degree = 4096);

}  // namespace holoforge
