#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eqtree/automorphism.hpp"
#include "eqtree/quotient.hpp"

namespace eqtree {

inline constexpr std::uint8_t kCodeVersion = 1;

// Deterministic bytes; equal codes exactly when the inputs are isomorphic.
// Comparable only between codes carrying the same version byte.
struct CanonicalCode {
  std::vector<std::uint8_t> bytes;

  std::string hex() const;
  friend bool operator==(const CanonicalCode&, const CanonicalCode&) = default;
};

struct RootPolicy {
  enum class Kind { Centers, At };
  Kind kind = Kind::Centers;
  std::uint32_t vertex = 0;

  static RootPolicy centers() { return {}; }
  static RootPolicy at(std::uint32_t v) { return {Kind::At, v}; }
};

// Bottom-up encoding of the quotient. Centers: rooted at the quotient's
// center, or at the central edge as an unordered pair of halves; a loop
// quotient is always rooted at its loop vertex, with the loop color folded
// into the root. Class ids are assigned per height level in sorted tuple
// order, so the bytes depend only on the isomorphism class.
CanonicalCode canon_quotient(const QuotientTree& q, RootPolicy policy = RootPolicy::centers());

struct RootedQuotient {
  QuotientTree q;  // vertices in orbit order (least member ascending)
  std::uint32_t root;
};

// Orbits of the half's P^2 with parents taken towards the half's root.
RootedQuotient half_quotient(const RootedHalf& half);

// Code of the equipped tree: case tag plus the code of the quotient that
// the normal form reduces it to.
CanonicalCode canon_equipped(const EquippedColoredTree& et);

// Compares vertex counts and color multisets, then center cases (and
// central colors for swapped centers), then quotient classes through one
// shared hash-interning table. Expected linear time.
bool iso_decide(const EquippedColoredTree& a, const EquippedColoredTree& b);

struct IsoWitness {
  std::vector<Vertex> mapping;  // vertex of the first tree -> vertex of the second
};

// ξ is a bijection preserving adjacency and colors with ξ P_a = P_b ξ.
bool is_witness(const EquippedColoredTree& a, const EquippedColoredTree& b, std::span<const Vertex> xi);

inline constexpr std::uint32_t kBruteLimit = 12;

// Exhaustive backtracking over color/degree-compatible bijections. Uses no
// ranks, orbits or quotients. Trees of different sizes have no witness;
// otherwise throws TooLarge when n > limit.
std::optional<IsoWitness> iso_brute(const EquippedColoredTree& a, const EquippedColoredTree& b,
                                    std::uint32_t limit = kBruteLimit);

// Reduces both quotients to simple graphs, recovers the quotients from the
// bare edge lists and compares their codes.
bool iso_via_reduction(const QuotientTree& a, const QuotientTree& b);

// The loop-free quotient iso_via_reduction works on for an equipped tree.
// Swapped trees contribute their half, doubled at its root with the central color.
QuotientTree reduction_quotient(const NormalForm& nf);

// iso_decide routed through the graph reduction instead of canonical codes.
bool iso_decide_via_reduction(const EquippedColoredTree& a, const EquippedColoredTree& b);

}  // namespace eqtree
