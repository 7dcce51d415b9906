#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "holoforge/fpgroup.hpp"
#include "holoforge/limits.hpp"
#include "holoforge/perm.hpp"

namespace holoforge {

/// Square matrix over GF(p), row-major. Vectors are rows and act by v * M,
/// so row i is the image of basis vector i.
class MatGF {
 public:
  MatGF() = default;
  MatGF(std::size_t n, std::uint32_t p);
  MatGF(std::size_t n, std::uint32_t p, std::vector<std::uint32_t> entries);
  static MatGF identity(std::size_t n, std::uint32_t p);

  std::size_t dim() const noexcept { return n_; }
  std::uint32_t prime() const noexcept { return p_; }
  std::uint32_t at(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, std::uint32_t v) { e_[i * n_ + j] = v % p_; }
  const std::vector<std::uint32_t>& entries() const noexcept { return e_; }

  std::uint32_t det() const;
  bool is_invertible() const { return det() != 0; }
  MatGF inverse() const;
  std::vector<std::uint32_t> apply_row(const std::vector<std::uint32_t>& v) const;
  std::string to_string() const;

  friend MatGF operator*(const MatGF& a, const MatGF& b);
  friend bool operator==(const MatGF&, const MatGF&) = default;
  friend auto operator<=>(const MatGF&, const MatGF&) = default;

 private:
  std::size_t n_ = 0;
  std::uint32_t p_ = 2;
  std::vector<std::uint32_t> e_;
};

/// Closure of a set of invertible matrices.
class MatrixGroup {
 public:
  MatrixGroup(std::size_t n, std::uint32_t p, std::vector<MatGF> gens);

  std::size_t dim() const noexcept { return n_; }
  std::uint32_t prime() const noexcept { return p_; }
  const std::vector<MatGF>& generators() const noexcept { return gens_; }
  /// Sorted element list; throws kThresholdExceeded past `max_size`.
  std::vector<MatGF> elements(std::uint64_t max_size = default_limits().enumeration) const;

 private:
  std::size_t n_;
  std::uint32_t p_;
  std::vector<MatGF> gens_;
};

std::uint64_t gl_order(std::size_t n, std::uint64_t p);
/// All invertible matrices in row-major lexicographic order.
std::vector<MatGF> enumerate_gl(std::size_t n, std::uint32_t p,
                                const Limits& lim = default_limits());
/// Transvections I + E_ij and diag(s, 1, ..., 1) for a primitive root s.
std::vector<MatGF> gl_generators(std::size_t n, std::uint32_t p);

/// The four 4x4 matrices over GF(2) generating Hol(1^3).
std::array<MatGF, 4> t_matrices();

enum class VectorAction { kNonzero, kAll };

/// Index of a row vector in mixed radix (first coordinate most significant);
/// the nonzero action drops the zero vector and shifts indices down by one.
std::uint64_t vector_index(const std::vector<std::uint32_t>& v, std::uint32_t p);
std::vector<std::uint32_t> vector_at(std::uint64_t index, std::size_t n, std::uint32_t p);

Permutation matrix_to_perm(const MatGF& m, VectorAction action);
PermGroup matrix_group_to_perm(const MatrixGroup& g, VectorAction action,
                               const Limits& lim = default_limits());

/// Affine group on p^n vectors: translations by basis vectors and the given
/// linear maps.
PermGroup affine_group(std::size_t n, std::uint32_t p, const std::vector<MatGF>& linear,
                       std::optional<std::uint64_t> known_order = std::nullopt,
                       const Limits& lim = default_limits());
PermGroup agl(std::size_t n, std::uint32_t p, const Limits& lim = default_limits());

std::uint32_t smallest_primitive_root(std::uint32_t p);

/// Relators found among all freely reduced words up to some length, grown
/// until coset enumeration gives `order`.
Presentation harvest_presentation(const std::vector<Permutation>& gens,
                                  const std::vector<std::string>& names, std::uint64_t order,
                                  std::size_t max_length = 14, const CosetOptions& opt = {});

/// A presentation of AGL(n, p) together with matching matrices in GL(n+1, p):
/// the canonical copy fixing the last basis vector under the row action.
struct AffinePattern {
  Presentation presentation;
  std::uint64_t order = 0;
  std::vector<MatGF> canonical_images;
};

/// n == 1: <t, m | t^p, m^(p-1), t^m t^-r> with r the smallest primitive root.
/// n >= 2: harvested from the affine permutation group.
AffinePattern agl_pattern(std::size_t n, std::uint32_t p, const CosetOptions& opt = {});

struct EmbeddingClass {
  std::vector<MatGF> representative;  // images of the pattern generators
  std::uint64_t subgroup_order = 0;
  std::uint64_t class_size = 0;       // subgroups in the conjugacy class
  std::uint64_t center_order = 0;     // of V x| H acting on the vectors
  std::uint64_t fixed_vectors = 0;    // |C_V(H)|
  Fingerprint fingerprint;
};

struct EmbeddingProgress {
  std::size_t branch = 0;  // first-generator class being searched
  std::size_t branches = 0;
  std::uint64_t nodes = 0;
  std::uint64_t hits = 0;
  std::size_t classes = 0;
};

struct EmbeddingOptions {
  std::uint64_t node_budget = 2'000'000'000;
  std::function<void(const EmbeddingProgress&)> progress;
  Limits limits = default_limits();
};

/// Conjugacy classes of subgroups of GL(dim, p) generated by images of the
/// pattern generators satisfying its relators and of the pattern's order.
/// Ordered by the canonical key of the first subgroup found in each class.
std::vector<EmbeddingClass> find_embedding_classes(const Presentation& pattern,
                                                   std::uint64_t pattern_order, std::size_t dim,
                                                   std::uint32_t p,
                                                   const EmbeddingOptions& opt = {});

/// Index in `classes` of the class containing <images>, or -1.
int embedding_class_of(const std::vector<EmbeddingClass>& classes, const std::vector<MatGF>& images,
                       const Limits& lim = default_limits());

}  // namespace holoforge
