#pragma once

#include <cstdint>
#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "holoforge/limits.hpp"

namespace holoforge {

using Point = std::uint32_t;

/// A bijection of {0, ..., degree-1}. Products act on the right:
/// (p * q)[x] == q[p[x]], so p is applied first.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::size_t degree);
  explicit Permutation(std::vector<Point> images);

  static Permutation from_cycles(std::size_t degree,
                                 const std::vector<std::vector<Point>>& cycles);

  std::size_t degree() const noexcept { return img_.size(); }
  Point operator[](Point x) const noexcept { return img_[x]; }
  std::span<const Point> images() const noexcept { return img_; }

  bool is_identity() const noexcept;
  Permutation inverse() const;
  Permutation pow(std::int64_t k) const;
  std::uint64_t order() const;
  /// degree() when the permutation is the identity.
  Point smallest_moved_point() const noexcept;
  /// by^-1 * this * by
  Permutation conjugate(const Permutation& by) const;
  /// Embed into a larger degree, shifting all points by `offset`.
  Permutation shifted(std::size_t new_degree, std::size_t offset) const;

  std::string to_cycle_string() const;

  friend Permutation operator*(const Permutation& lhs, const Permutation& rhs);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Point> img_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

std::uint64_t commutator_order(const Permutation& a, const Permutation& b);

/// Stabilizer chain with Schreier vectors. Level i stores the strong
/// generators fixing base[0..i-1] and the orbit of base[i] under them.
struct StabChain {
  struct Level {
    Point base = 0;
    std::vector<Permutation> gens;
    std::vector<std::int32_t> label;  // -1 outside orbit, -2 base, else gens index
    std::vector<Point> parent;        // orbit point this one was reached from
    std::vector<Point> orbit;
  };

  std::size_t degree = 0;
  std::vector<Level> levels;

  std::uint64_t order() const;
  /// u with base^u == point; point must lie in the level's orbit.
  Permutation transversal(std::size_t level, Point point) const;
  /// Residue after stripping g and the level where stripping stopped
  /// (levels.size() when it ran through).
  std::pair<Permutation, std::size_t> strip(const Permutation& g,
                                            std::size_t from = 0) const;
  std::vector<Point> base() const;
};

/// Deterministic Schreier-Sims: base points are smallest moved points.
/// When `stop_at` is set, construction stops once the certified order reaches
/// it; it must be an upper bound on the true order.
/// When `order_bound` is set, construction aborts (returns nullopt) as soon as
/// the certified lower bound on the order exceeds it.
std::optional<StabChain> build_stab_chain(std::size_t degree,
                                          const std::vector<Permutation>& gens,
                                          std::optional<std::uint64_t> stop_at,
                                          std::optional<std::uint64_t> order_bound);

class PermGroup {
 public:
  PermGroup() : PermGroup(1, {}) {}
  PermGroup(std::size_t degree, std::vector<Permutation> gens,
            std::optional<std::uint64_t> known_order = std::nullopt);

  static PermGroup trivial(std::size_t degree) { return PermGroup(degree, {}); }

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return gens_; }
  Permutation identity() const { return Permutation(degree_); }

  std::uint64_t order() const;
  bool contains(const Permutation& x) const;
  const StabChain& chain() const;

  /// Element addressed by a mixed-radix index over the chain's transversals.
  Permutation element_at(std::uint64_t index) const;
  /// Same group with a reduced generating list (redundant generators dropped).
  PermGroup with_reduced_generators() const;

 private:
  struct Cache;
  std::size_t degree_;
  std::vector<Permutation> gens_;
  std::optional<std::uint64_t> known_order_;
  std::shared_ptr<Cache> cache_;
};

PermGroup group_from_generators(const std::vector<Permutation>& gens,
                                std::size_t degree);

/// All elements of a group in canonical (lexicographic) order, with an index.
/// Index 0 is always the identity.
class ElementIndex {
 public:
  explicit ElementIndex(const PermGroup& g, const Limits& lim = default_limits());

  std::size_t size() const noexcept { return elems_.size(); }
  const Permutation& operator[](std::size_t i) const { return elems_[i]; }
  const std::vector<Permutation>& elements() const noexcept { return elems_; }
  /// -1 when x is not an element.
  std::int64_t find(const Permutation& x) const;
  std::uint32_t index_of(const Permutation& x) const;
  std::uint64_t element_order(std::size_t i) const { return orders_[i]; }

  /// Conjugacy class id of each element (ids in order of first element).
  const std::vector<std::uint32_t>& class_ids() const;
  const std::vector<std::uint32_t>& class_sizes() const;

 private:
  std::vector<Permutation> gens_;
  std::vector<Permutation> elems_;
  std::vector<std::uint64_t> orders_;
  std::unordered_map<Permutation, std::uint32_t, PermutationHash> index_;
  mutable std::vector<std::uint32_t> class_id_;
  mutable std::vector<std::uint32_t> class_size_;
};

/// Closure by breadth-first multiplication; independent of the chain code.
std::vector<Permutation> naive_closure(const std::vector<Permutation>& gens,
                                       std::size_t degree,
                                       std::size_t max_size);

struct Fingerprint {
  std::uint64_t order = 0;
  std::map<std::uint64_t, std::uint64_t> order_histogram;
  std::vector<std::uint64_t> abelian_invariants;  // prime powers, ascending
  std::uint64_t center_order = 0;
  std::uint64_t derived_order = 0;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

std::string to_string(const Fingerprint& f);

/// A map given on generators. `is_isomorphism` is set only after the map has
/// been certified bijective.
struct GroupHom {
  std::vector<Permutation> source_generators;
  std::vector<Permutation> images;
  bool is_isomorphism = false;

  /// Image of an element of the source group under the map.
  Permutation image(const Permutation& x, std::size_t source_degree,
                    std::size_t target_degree) const;
};

/// True iff the generator assignment extends to a homomorphism A -> B. When
/// `require_bijective` is set, also requires it to be an isomorphism.
bool verify_hom(const PermGroup& source, const PermGroup& target,
                const GroupHom& hom, bool require_bijective);

/// Element-by-element check over the Cayley graph of the source: the induced
/// map is well defined, multiplicative and injective.
bool verify_hom_exhaustive(const PermGroup& source, const PermGroup& target,
                           const GroupHom& hom, const Limits& lim = default_limits());

PermGroup subgroup(const PermGroup& g, const std::vector<Permutation>& gens);
bool is_subgroup(const PermGroup& h, const PermGroup& g);
bool is_normal(const PermGroup& n, const PermGroup& g);
PermGroup normal_closure(const PermGroup& g, const std::vector<Permutation>& gens);
PermGroup derived_subgroup(const PermGroup& g);

PermGroup center(const PermGroup& g, const Limits& lim = default_limits());
Fingerprint fingerprint(const PermGroup& g, const Limits& lim = default_limits());
std::vector<PermGroup> normal_subgroups_of_order(const PermGroup& g, std::uint64_t k,
                                                 const Limits& lim = default_limits());
/// Action of g on the right cosets of the normal subgroup n.
PermGroup quotient(const PermGroup& g, const PermGroup& n,
                   const Limits& lim = default_limits());
PermGroup direct_product(const PermGroup& a, const PermGroup& b);

/// Deterministic generating sequence, greedily grown to be short.
std::vector<Permutation> small_generating_sequence(const PermGroup& g);

std::optional<GroupHom> is_isomorphic(const PermGroup& a, const PermGroup& b,
                                      const Limits& lim = default_limits());

/// Automorphism group acting on the canonical element list of g.
PermGroup automorphism_group_generic(const PermGroup& g,
                                     const Limits& lim = default_limits());

/// First g in canonical element order with h1^g == h2.
std::optional<Permutation> subgroups_conjugate(const PermGroup& g, const PermGroup& h1,
                                               const PermGroup& h2,
                                               const Limits& lim = default_limits());
std::optional<Permutation> subgroups_conjugate(const ElementIndex& g_elements,
                                               const PermGroup& g, const PermGroup& h1,
                                               const PermGroup& h2);

}  // namespace holoforge
