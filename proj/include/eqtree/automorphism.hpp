#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "eqtree/colored_tree.hpp"

namespace eqtree {

// A bijection of 0..n-1, stored as its image table.
class VertexPermutation {
 public:
  static VertexPermutation from_table(std::vector<Vertex> image);  // throws NotBijective
  static VertexPermutation identity(std::uint32_t n);

  Vertex operator()(Vertex v) const noexcept { return image_[v]; }
  std::uint32_t size() const noexcept { return static_cast<std::uint32_t>(image_.size()); }
  std::span<const Vertex> image() const noexcept { return image_; }
  VertexPermutation inverse() const;

  friend bool operator==(const VertexPermutation&, const VertexPermutation&) = default;

 private:
  VertexPermutation() = default;
  std::vector<Vertex> image_;
};

// (T, c, P): a colored tree with a color-preserving automorphism.
class EquippedColoredTree {
 public:
  const ColoredTree& tree() const noexcept { return tree_; }
  const VertexPermutation& perm() const noexcept { return perm_; }
  std::uint32_t n() const noexcept { return tree_.n(); }

 private:
  friend EquippedColoredTree validate_automorphism(ColoredTree tree, VertexPermutation perm);
  EquippedColoredTree(ColoredTree tree, VertexPermutation perm) : tree_(std::move(tree)), perm_(std::move(perm)) {}

  ColoredTree tree_;
  VertexPermutation perm_;
};

// Throws NotBijective, AdjacencyBroken or ColorBroken for the first bad edge.
EquippedColoredTree validate_automorphism(ColoredTree tree, VertexPermutation perm);

// Orbits are stored back to back. Each orbit starts at its least vertex and
// lists the remaining members in the order P visits them; orbits appear in
// increasing order of their least vertex.
struct OrbitDecomposition {
  std::vector<Vertex> members;
  std::vector<std::uint32_t> offsets;  // count() + 1 entries
  std::vector<std::uint32_t> orbit_of;
  std::vector<std::uint32_t> position_of;

  std::uint32_t count() const noexcept { return static_cast<std::uint32_t>(offsets.size()) - 1; }
  std::uint32_t size(std::uint32_t orbit) const noexcept { return offsets[orbit + 1] - offsets[orbit]; }
  std::span<const Vertex> orbit(std::uint32_t i) const noexcept {
    return {members.data() + offsets[i], members.data() + offsets[i + 1]};
  }
};

OrbitDecomposition compute_orbits(const VertexPermutation& perm);
OrbitDecomposition compute_orbits(const EquippedColoredTree& et);

// Size of the P-orbit of the edge {a, b}. Throws NotAnEdge.
std::uint32_t edge_period(const EquippedColoredTree& et, Vertex a, Vertex b);

struct LawViolation {
  enum class Kind { MixedRankOrbit, Divisibility, Wiring, ColorMismatch, CentralOrbit };
  Kind kind;
  std::string detail;
};

std::string_view to_string(LawViolation::Kind kind) noexcept;

struct LawReport {
  std::vector<LawViolation> violations;
  std::size_t orbit_pairs_checked = 0;

  bool ok() const noexcept { return violations.empty(); }
};

// Checks, for every pair of neighbouring orbits (O1 of size p one rank above
// O2 of size q): p divides q, v_i's neighbours in O2 are w_i, w_{i+p}, ...,
// and all O1-O2 edges share a color. Accepts any bijection so that it can
// also diagnose maps which are not automorphisms.
LawReport check_structure_laws(const ColoredTree& tree, const VertexPermutation& perm);
LawReport check_structure_laws(const EquippedColoredTree& et);

enum class CenterCase { CentralDoubled, Fixed, Swapped };

std::string_view to_string(CenterCase c) noexcept;

CenterCase classify(const EquippedColoredTree& et, const RankInfo& ranks);

// Component of T minus the central edge that contains the lesser center,
// relabeled to 0..|A|-1 in increasing original order and equipped with P^2.
struct RootedHalf {
  EquippedColoredTree half;
  Vertex root;
  Color central_color;
  std::vector<Vertex> original;  // half vertex -> vertex of the input tree
};

struct NormalForm {
  CenterCase tag;
  std::variant<EquippedColoredTree, RootedHalf> payload;

  const EquippedColoredTree& tree() const { return std::get<EquippedColoredTree>(payload); }
  const RootedHalf& half() const { return std::get<RootedHalf>(payload); }
};

// CentralDoubled: two copies joined at the center by an edge of color 1.
// Fixed: bicentral with both centers fixed, returned as is.
// Swapped: bicentral with the centers exchanged, reduced to a RootedHalf.
NormalForm normalize(const EquippedColoredTree& et);

// Two disjoint copies of et joined by an edge {v, v + n} of the given color;
// P acts on each copy separately.
EquippedColoredTree join_copies(const EquippedColoredTree& et, Vertex v, Color joining_color);

RootedHalf split_swapped(const EquippedColoredTree& et, const RankInfo& ranks);

}  // namespace eqtree
