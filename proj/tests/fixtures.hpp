#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "eqtree/automorphism.hpp"
#include "eqtree/colored_tree.hpp"
#include "eqtree/quotient.hpp"
#include "eqtree/reduction.hpp"

namespace fixtures {

using namespace eqtree;

inline ColoredTree tree(std::uint32_t n, Color k, std::vector<Edge> edges, Mode mode = Mode::Generic) {
  return validate_tree({n, k, mode, std::move(edges)});
}

inline EquippedColoredTree equipped(std::uint32_t n, Color k, std::vector<Edge> edges, std::vector<Vertex> perm,
                                    Mode mode = Mode::Generic) {
  return validate_automorphism(tree(n, k, std::move(edges), mode), VertexPermutation::from_table(std::move(perm)));
}

// A..H = 0..7; green = 1, blue = 2, red = 3.
inline std::vector<Edge> sample_edges() {
  return {{0, 1, 3}, {0, 2, 1}, {1, 3, 1}, {1, 4, 2}, {2, 5, 2}, {3, 6, 3}, {4, 7, 2}};
}

inline EquippedColoredTree sample_identity() {
  return equipped(8, 3, sample_edges(), {0, 1, 2, 3, 4, 5, 6, 7});
}

// The sample tree read as a quotient with weights 1,1,2,1,1,4,3,1.
inline QuotientTree weighted_sample() {
  QuotientTree q;
  q.m = 8;
  q.k = 3;
  q.weight = {1, 1, 2, 1, 1, 4, 3, 1};
  for (const Edge& e : sample_edges()) q.edges.push_back({e.u, e.v, e.color});
  return q;
}

inline EquippedColoredTree star_rotation() { return equipped(4, 1, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}}, {0, 2, 3, 1}); }

inline EquippedColoredTree path4_swap(Color c01 = 1, Color c12 = 2, Color c23 = 1, Mode mode = Mode::Generic) {
  return equipped(4, 2, {{0, 1, c01}, {1, 2, c12}, {2, 3, c23}}, {3, 2, 1, 0}, mode);
}

inline std::vector<std::pair<std::uint32_t, std::uint32_t>> sorted_edges(const SimpleGraph& g) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> e;
  for (auto [a, b] : g.edges) e.emplace_back(std::min(a, b), std::max(a, b));
  std::sort(e.begin(), e.end());
  return e;
}

inline std::vector<std::uint32_t> identity_map(std::uint32_t m) {
  std::vector<std::uint32_t> id(m);
  for (std::uint32_t i = 0; i < m; ++i) id[i] = i;
  return id;
}

}  // namespace fixtures
