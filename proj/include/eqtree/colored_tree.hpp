#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace eqtree {

using Vertex = std::uint32_t;
using Color = std::uint32_t;
using Weight = std::uint32_t;

inline constexpr Vertex kNoVertex = static_cast<Vertex>(-1);

enum class Mode { Generic, MorseSmale };

std::string_view to_string(Mode mode) noexcept;

// In morse-smale mode color 1 is the stable ("s") and color 2 the unstable ("u") type.
inline constexpr Color kColorS = 1;
inline constexpr Color kColorU = 2;

struct Edge {
  Vertex u;
  Vertex v;
  Color color;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  Vertex vertex;
  Color color;
  std::uint32_t edge;  // index into ColoredTree::edges()
};

// Raw, unvalidated tree data as it arrives from a document or a builder.
struct TreeInput {
  std::uint32_t n = 0;
  Color k = 1;
  Mode mode = Mode::Generic;
  std::vector<Edge> edges;
};

// An edge-colored tree on vertices 0..n-1. Immutable; only obtainable through
// validate_tree, so every instance satisfies the tree law.
class ColoredTree {
 public:
  std::uint32_t n() const noexcept { return n_; }
  Color k() const noexcept { return k_; }
  Mode mode() const noexcept { return mode_; }
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::span<const Neighbor> neighbors(Vertex v) const noexcept {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::uint32_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  // Index of edge {a, b}, if present. O(1): the tree is rooted at 0 internally
  // and every edge is the parent edge of exactly one endpoint.
  std::optional<std::uint32_t> edge_between(Vertex a, Vertex b) const noexcept;

  // Breadth-first layout from vertex 0: order[i] is the vertex at position i,
  // position(v) its inverse, and parent position / parent color are indexed by
  // position (kNoVertex and 0 at position 0). Parent positions never decrease.
  std::span<const Vertex> bfs_order() const noexcept { return bfs_order_; }
  std::span<const std::uint32_t> bfs_position() const noexcept { return bfs_position_; }
  std::span<const std::uint32_t> bfs_parent() const noexcept { return bfs_parent_; }
  std::span<const Color> bfs_parent_color() const noexcept { return bfs_parent_color_; }

  TreeInput to_input() const;

 private:
  friend ColoredTree validate_tree(TreeInput raw);
  ColoredTree() = default;

  std::uint32_t n_ = 0;
  Color k_ = 1;
  Mode mode_ = Mode::Generic;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> offsets_;
  std::vector<Neighbor> adjacency_;
  std::vector<Vertex> parent_;
  std::vector<std::uint32_t> parent_edge_;
  std::vector<Vertex> bfs_order_;
  std::vector<std::uint32_t> bfs_position_;
  std::vector<std::uint32_t> bfs_parent_;
  std::vector<Color> bfs_parent_color_;
};

// Checks range, simplicity, colors, the edge-count law and connectivity, in
// that order. Throws Error naming the first offending element.
ColoredTree validate_tree(TreeInput raw);

struct RankInfo {
  std::vector<std::uint32_t> rank;
  // strip_sequence[i] holds the vertices of rank i; the last entry is the centers.
  std::vector<std::vector<Vertex>> strip_sequence;
  std::vector<Vertex> centers;  // one or two, ascending
  std::optional<std::uint32_t> central_edge;

  bool bicentral() const noexcept { return centers.size() == 2; }
  std::uint32_t max_rank() const noexcept { return static_cast<std::uint32_t>(strip_sequence.size()) - 1; }
};

// Iterated leaf deletion, linear in n.
RankInfo compute_ranks(const ColoredTree& tree);

}  // namespace eqtree
