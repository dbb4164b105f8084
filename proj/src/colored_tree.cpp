#include "eqtree/colored_tree.hpp"

#include <algorithm>
#include <string>

#include "eqtree/error.hpp"

namespace eqtree {

std::string_view to_string(Mode mode) noexcept {
  return mode == Mode::MorseSmale ? "morse-smale" : "generic";
}

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorKind::NotSimple: return "NotSimple";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::WrongEdgeCount: return "WrongEdgeCount";
    case ErrorKind::ColorOutOfRange: return "ColorOutOfRange";
    case ErrorKind::NotBijective: return "NotBijective";
    case ErrorKind::AdjacencyBroken: return "AdjacencyBroken";
    case ErrorKind::ColorBroken: return "ColorBroken";
    case ErrorKind::NotAnEdge: return "NotAnEdge";
    case ErrorKind::CentralOrbitNotFixed: return "CentralOrbitNotFixed";
    case ErrorKind::CentralWeightNotOne: return "CentralWeightNotOne";
    case ErrorKind::DivisibilityViolated: return "DivisibilityViolated";
    case ErrorKind::InvalidQuotient: return "InvalidQuotient";
    case ErrorKind::WrongMode: return "WrongMode";
    case ErrorKind::CycleTooShort: return "CycleTooShort";
    case ErrorKind::LoopPresent: return "LoopPresent";
    case ErrorKind::NotAReductionImage: return "NotAReductionImage";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::InfeasibleSpec: return "InfeasibleSpec";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

std::string edge_label(std::size_t i, const Edge& e) {
  return "edges[" + std::to_string(i) + "] = (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ", " +
         std::to_string(e.color) + ")";
}

}  // namespace

ColoredTree validate_tree(TreeInput raw) {
  const std::uint32_t n = raw.n;
  if (n < 1) throw Error(ErrorKind::WrongEdgeCount, "a tree needs at least one vertex");
  if (raw.k < 1) throw Error(ErrorKind::ColorOutOfRange, "k must be at least 1");
  if (raw.mode == Mode::MorseSmale && raw.k != 2)
    throw Error(ErrorKind::ColorOutOfRange, "morse-smale mode requires k = 2, got " + std::to_string(raw.k));

  const auto& edges = raw.edges;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.u >= n || e.v >= n) throw Error(ErrorKind::VertexOutOfRange, edge_label(i, e));
    if (e.u == e.v) throw Error(ErrorKind::NotSimple, edge_label(i, e) + " is a self-loop");
    if (e.color < 1 || e.color > raw.k)
      throw Error(ErrorKind::ColorOutOfRange, edge_label(i, e) + " outside 1.." + std::to_string(raw.k));
  }

  ColoredTree t;
  t.n_ = n;
  t.k_ = raw.k;
  t.mode_ = raw.mode;

  t.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const Edge& e : edges) {
    ++t.offsets_[e.u + 1];
    ++t.offsets_[e.v + 1];
  }
  for (std::uint32_t v = 0; v < n; ++v) t.offsets_[v + 1] += t.offsets_[v];
  t.adjacency_.resize(2 * edges.size());
  {
    std::vector<std::uint32_t> fill(t.offsets_.begin(), t.offsets_.end() - 1);
    for (std::uint32_t i = 0; i < edges.size(); ++i) {
      const Edge& e = edges[i];
      t.adjacency_[fill[e.u]++] = {e.v, e.color, i};
      t.adjacency_[fill[e.v]++] = {e.u, e.color, i};
    }
  }

  // Duplicate detection: stamp each neighbor with the vertex whose list is being scanned.
  {
    std::vector<std::uint32_t> stamp(n, kNoVertex);
    for (Vertex v = 0; v < n; ++v) {
      for (const Neighbor& nb : t.neighbors(v)) {
        if (stamp[nb.vertex] == v) throw Error(ErrorKind::NotSimple, edge_label(nb.edge, edges[nb.edge]) + " duplicates an earlier edge");
        stamp[nb.vertex] = v;
      }
    }
  }

  if (edges.size() != static_cast<std::size_t>(n) - 1)
    throw Error(ErrorKind::WrongEdgeCount,
                std::to_string(edges.size()) + " edges, need " + std::to_string(n - 1));

  t.parent_.assign(n, kNoVertex);
  t.parent_edge_.assign(n, 0);
  t.bfs_position_.assign(n, kNoVertex);
  t.bfs_parent_.assign(n, kNoVertex);
  t.bfs_parent_color_.assign(n, 0);
  auto& queue = t.bfs_order_;
  queue.reserve(n);
  queue.push_back(0);
  t.bfs_position_[0] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex v = queue[head];
    for (const Neighbor& nb : t.neighbors(v)) {
      if (t.bfs_position_[nb.vertex] != kNoVertex) continue;
      const auto at = static_cast<std::uint32_t>(queue.size());
      t.bfs_position_[nb.vertex] = at;
      t.bfs_parent_[at] = static_cast<std::uint32_t>(head);
      t.bfs_parent_color_[at] = nb.color;
      t.parent_[nb.vertex] = v;
      t.parent_edge_[nb.vertex] = nb.edge;
      queue.push_back(nb.vertex);
    }
  }
  if (queue.size() != n) {
    for (Vertex v = 0; v < n; ++v)
      if (t.bfs_position_[v] == kNoVertex)
        throw Error(ErrorKind::Disconnected, "vertex " + std::to_string(v) + " is unreachable from vertex 0");
  }

  t.edges_ = std::move(raw.edges);
  return t;
}

std::optional<std::uint32_t> ColoredTree::edge_between(Vertex a, Vertex b) const noexcept {
  if (a >= n_ || b >= n_) return std::nullopt;
  if (parent_[a] == b) return parent_edge_[a];
  if (parent_[b] == a) return parent_edge_[b];
  return std::nullopt;
}

TreeInput ColoredTree::to_input() const {
  return TreeInput{n_, k_, mode_, edges_};
}

RankInfo compute_ranks(const ColoredTree& tree) {
  const std::uint32_t n = tree.n();
  RankInfo info;
  info.rank.assign(n, 0);

  std::vector<std::uint32_t> degree(n);
  std::vector<Vertex> layer;
  for (Vertex v = 0; v < n; ++v) {
    degree[v] = tree.degree(v);
    if (degree[v] <= 1) layer.push_back(v);
  }

  std::uint32_t remaining = n;
  std::uint32_t level = 0;
  while (remaining > 2) {
    std::vector<Vertex> next;
    for (Vertex v : layer) {
      info.rank[v] = level;
      degree[v] = 0;
    }
    for (Vertex v : layer) {
      for (const Neighbor& nb : tree.neighbors(v)) {
        if (degree[nb.vertex] == 0) continue;
        if (--degree[nb.vertex] == 1) next.push_back(nb.vertex);
      }
    }
    remaining -= static_cast<std::uint32_t>(layer.size());
    info.strip_sequence.emplace_back().reserve(layer.size());
    layer = std::move(next);
    ++level;
  }

  // What is left is one vertex or two adjacent ones.
  std::vector<Vertex> centers = std::move(layer);
  std::sort(centers.begin(), centers.end());
  for (Vertex c : centers) info.rank[c] = level;
  for (Vertex v = 0; v < n; ++v)
    if (info.rank[v] < level) info.strip_sequence[info.rank[v]].push_back(v);
  info.strip_sequence.push_back(centers);
  info.centers = centers;
  if (centers.size() == 2) {
    info.central_edge = tree.edge_between(centers[0], centers[1]);
    ensure(info.central_edge.has_value(), "two centers must be adjacent");
  } else {
    ensure(centers.size() == 1, "a tree has one or two centers");
  }
  return info;
}

}  // namespace eqtree
