#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "eqtree/quotient.hpp"

namespace eqtree {

struct Provenance {
  enum class Kind { QuotientVertex, Subdivision, Cycle };
  Kind kind;
  std::uint32_t owner;     // quotient vertex, or quotient edge index for subdivisions
  std::uint32_t position;  // 0 for quotient vertices, 1-based along the path or cycle otherwise

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

// Simple undirected graph. provenance is empty when the graph did not come
// from reduce_to_graph (or has been stripped).
struct SimpleGraph {
  std::uint32_t nv = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::vector<Provenance> provenance;
};

// Replace {x, y} by a path x - z1 - ... - zs - y; new vertices are appended.
// Throws NotAnEdge.
SimpleGraph subdivide_edge(SimpleGraph g, std::uint32_t x, std::uint32_t y, std::uint32_t s);

// Attach a cycle of length s through v using s-1 new vertices. Throws CycleTooShort.
SimpleGraph join_cycle(SimpleGraph g, std::uint32_t v, std::uint32_t s);

// Quotient vertices keep ids 0..m-1; then come the subdivision vertices of
// each edge in edge order, then the w+1 cycle vertices of each quotient
// vertex. nv = m + sum c(e) + sum (w(v) + 1). Throws LoopPresent.
SimpleGraph reduce_to_graph(const QuotientTree& q);

// Inverse of reduce_to_graph using only the edge list. Vertices of degree
// at least 3 become quotient vertices (ascending); origin records their
// graph ids. k is max(k_hint, largest recovered color, 1).
// Throws NotAReductionImage.
QuotientTree recover_quotient(const SimpleGraph& g, Color k_hint = 0);

}  // namespace eqtree
