#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "holoforge/limits.hpp"
#include "holoforge/perm.hpp"

namespace holoforge {

bool is_prime(std::uint64_t p);
/// (p, n) with t == p^n, if t is a prime power > 1.
std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t t);
std::uint64_t ipow(std::uint64_t base, unsigned exp);

/// C_{p^n} x (C_p)^m. Generator a is the head, b_1..b_m the tail.
struct AbelianPGroup {
  std::uint64_t p = 2;
  unsigned n = 1;
  unsigned m = 0;

  AbelianPGroup() = default;
  AbelianPGroup(std::uint64_t p, unsigned n, unsigned m);

  std::uint64_t head_order() const { return ipow(p, n); }
  std::uint64_t order() const { return ipow(p, n + m); }
  std::size_t rank() const { return m + 1; }
  std::string to_string() const;
};

struct AbElement {
  std::uint64_t head = 0;
  std::vector<std::uint64_t> tail;

  friend bool operator==(const AbElement&, const AbElement&) = default;
};

/// Mixed radix, head most significant; index 0 is the identity.
std::uint64_t element_index(const AbelianPGroup& g, const AbElement& x);
AbElement element_at(const AbelianPGroup& g, std::uint64_t index);
AbElement add(const AbelianPGroup& g, const AbElement& x, const AbElement& y);
AbElement scale(const AbelianPGroup& g, const AbElement& x, std::int64_t k);
std::uint64_t element_order(const AbelianPGroup& g, const AbElement& x);
/// Canonical generator i (0 is the head).
AbElement basis_element(const AbelianPGroup& g, std::size_t i);

std::vector<AbElement> enumerate_elements(const AbelianPGroup& g,
                                          const Limits& lim = default_limits());

/// Images of the canonical generators. Head image any element; tail images of
/// order dividing p, so their head entries are multiples of p^(n-1).
struct EndoMatrix {
  std::vector<AbElement> images;
};

bool is_well_defined(const AbelianPGroup& g, const EndoMatrix& e);
/// Invertibility via the induced matrix on G / pG.
bool is_invertible(const AbelianPGroup& g, const EndoMatrix& e);
AbElement apply(const AbelianPGroup& g, const EndoMatrix& e, const AbElement& x);
/// The endomorphism as a map on element indices; must be invertible.
Permutation endo_permutation(const AbelianPGroup& g, const EndoMatrix& e);
/// Throws kInvalidArgument unless the images define an automorphism.
Permutation automorphism_from_images(const AbelianPGroup& g, const std::vector<AbElement>& images);

/// Every invertible EndoMatrix, in enumeration order.
std::vector<EndoMatrix> automorphism_matrices(const AbelianPGroup& g,
                                              const Limits& lim = default_limits());

/// Aut(G) acting on element indices.
PermGroup automorphism_group(const AbelianPGroup& g, const Limits& lim = default_limits());

/// x -> x + t on element indices.
Permutation translation(const AbelianPGroup& g, const AbElement& t);
std::vector<Permutation> translation_generators(const AbelianPGroup& g);

/// Generated by translations by the canonical generators (first rank()
/// generators) followed by the generators of automorphism_group(g).
PermGroup holomorph(const AbelianPGroup& g, const Limits& lim = default_limits());

/// Hol(C_t) for a prime power t.
PermGroup holomorph_cyclic(std::uint64_t t, const Limits& lim = default_limits());

/// Hol(Z_N) built elementwise: x -> x + 1 and x -> u x for units u. Any N >= 1.
PermGroup cyclic_holomorph(std::uint64_t n, const Limits& lim = default_limits());

/// Direct product of Hol(C_t) over pairwise coprime prime powers.
PermGroup coprime_holomorph_product(const std::vector<std::uint64_t>& ts,
                                    const Limits& lim = default_limits());

/// `C(8)xC(2)`, `C(9)xC(3)^2`, `C(2)^2`: the cyclic factor orders in order.
std::vector<std::uint64_t> parse_group_spec(std::string_view spec);
/// The matching C_{p^n} x C_p^m, if the factors have that shape.
std::optional<AbelianPGroup> as_abelian_p_group(const std::vector<std::uint64_t>& factors);

}  // namespace holoforge
