#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "eqtree/automorphism.hpp"
#include "eqtree/colored_tree.hpp"

namespace eqtree {

struct QuotientEdge {
  std::uint32_t a;
  std::uint32_t b;
  Color color;

  friend bool operator==(const QuotientEdge&, const QuotientEdge&) = default;
};

struct QuotientLoop {
  std::uint32_t vertex;
  Color color;

  friend bool operator==(const QuotientLoop&, const QuotientLoop&) = default;
};

// Weighted edge-colored tree of orbits. The optional loop only appears in the
// dynamics form, at the merged pair of swapped centers.
struct QuotientTree {
  std::uint32_t m = 0;
  Color k = 1;
  std::vector<Weight> weight;
  std::vector<QuotientEdge> edges;
  std::optional<QuotientLoop> loop;
  // Where each quotient vertex came from (least orbit member, or graph vertex
  // after recovery). Empty for hand-written quotients; never serialized.
  std::vector<Vertex> origin;

  Weight total_weight() const;
};

// The weight-1 vertex expansion is anchored at: a weight-1 center of the
// quotient if there is one, else the least weight-1 vertex. Loop quotients
// are anchored at the loop vertex.
std::uint32_t expansion_anchor(const QuotientTree& q);

// Full invariant check: tree shape, colors, positive weights, loop placement
// and divisibility outward from the anchor. Throws InvalidQuotient,
// CentralWeightNotOne or DivisibilityViolated.
void validate_quotient(const QuotientTree& q);

// Loop-free quotient of an equipped tree whose central orbits are fixed.
// Vertices ordered by (rank descending, least member); every non-root
// vertex contributes the edge (parent, child), listed in child order.
// Throws CentralOrbitNotFixed.
QuotientTree build_quotient(const EquippedColoredTree& et);
QuotientTree build_quotient(const EquippedColoredTree& et, const RankInfo& ranks);  // ranks of et's tree

// Like build_quotient, but swapped centers merge into one weight-2 vertex
// carrying a loop in the central edge's color.
QuotientTree build_dynamics_quotient(const EquippedColoredTree& et);

// First tree vertex of each quotient vertex's block in expand_quotient's
// output: vertex i occupies [offset[i], offset[i] + weight[i]).
std::vector<Vertex> expansion_offsets(const QuotientTree& q);

// Restores (T, c, P). Copies of a child orbit of size q attach to a parent
// orbit of size p by w_j -- v_{j mod p}; P shifts every block cyclically.
// Throws LoopPresent, CentralWeightNotOne, DivisibilityViolated.
EquippedColoredTree expand_quotient(const QuotientTree& q, Mode mode = Mode::Generic);

// Structural equality under an explicit vertex correspondence a -> b.
bool equal_under(const QuotientTree& a, const QuotientTree& b, std::span<const std::uint32_t> a_to_b);

// Correspondence a -> b obtained by matching a's expansion offsets against
// b.origin, for b = build_quotient(expand_quotient(a)).
std::optional<std::vector<std::uint32_t>> correspondence_after_expansion(const QuotientTree& a,
                                                                         const QuotientTree& b);

struct SaddleOrbit {
  Vertex u;
  Vertex v;  // least-indexed edge of the orbit
  Color color;
  std::uint32_t period;
  bool central;
};

struct DynamicsReport {
  std::uint32_t saddles = 0;  // k_f
  std::uint32_t domains = 0;
  std::uint32_t s_saddles = 0;
  std::uint32_t u_saddles = 0;
  std::vector<SaddleOrbit> saddle_orbits;
  std::uint32_t negative_saddles = 0;
  std::optional<SaddleOrbit> negative_saddle;
};

// Throws WrongMode unless the tree is in morse-smale mode.
DynamicsReport ms_report(const EquippedColoredTree& et);

}  // namespace eqtree
