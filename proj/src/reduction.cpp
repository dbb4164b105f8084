#include "eqtree/reduction.hpp"

#include <algorithm>
#include <string>

#include "eqtree/error.hpp"

namespace eqtree {

SimpleGraph subdivide_edge(SimpleGraph g, std::uint32_t x, std::uint32_t y, std::uint32_t s) {
  const auto it = std::find_if(g.edges.begin(), g.edges.end(), [&](const auto& e) {
    return (e.first == x && e.second == y) || (e.first == y && e.second == x);
  });
  if (it == g.edges.end())
    throw Error(ErrorKind::NotAnEdge, "(" + std::to_string(x) + ", " + std::to_string(y) + ")");
  g.edges.erase(it);
  std::uint32_t prev = x;
  for (std::uint32_t i = 0; i < s; ++i) {
    const std::uint32_t z = g.nv++;
    g.edges.emplace_back(prev, z);
    prev = z;
  }
  g.edges.emplace_back(prev, y);
  g.provenance.clear();
  return g;
}

SimpleGraph join_cycle(SimpleGraph g, std::uint32_t v, std::uint32_t s) {
  if (s < 3) throw Error(ErrorKind::CycleTooShort, "cycle length " + std::to_string(s) + " < 3");
  std::uint32_t prev = v;
  for (std::uint32_t i = 1; i < s; ++i) {
    const std::uint32_t u = g.nv++;
    g.edges.emplace_back(prev, u);
    prev = u;
  }
  g.edges.emplace_back(prev, v);
  g.provenance.clear();
  return g;
}

SimpleGraph reduce_to_graph(const QuotientTree& q) {
  if (q.loop) throw Error(ErrorKind::LoopPresent, "the reduction is defined for loop-free quotients");
  validate_quotient(q);

  SimpleGraph g;
  g.nv = q.m;
  for (std::uint32_t v = 0; v < q.m; ++v) g.provenance.push_back({Provenance::Kind::QuotientVertex, v, 0});

  for (std::uint32_t i = 0; i < q.edges.size(); ++i) {
    const auto& e = q.edges[i];
    std::uint32_t prev = e.a;
    for (std::uint32_t j = 1; j <= e.color; ++j) {
      const std::uint32_t z = g.nv++;
      g.provenance.push_back({Provenance::Kind::Subdivision, i, j});
      g.edges.emplace_back(prev, z);
      prev = z;
    }
    g.edges.emplace_back(prev, e.b);
  }

  for (std::uint32_t v = 0; v < q.m; ++v) {
    // A cycle of length w + 2 through v needs w + 1 new vertices.
    std::uint32_t prev = v;
    for (std::uint32_t j = 1; j <= q.weight[v] + 1; ++j) {
      const std::uint32_t u = g.nv++;
      g.provenance.push_back({Provenance::Kind::Cycle, v, j});
      g.edges.emplace_back(prev, u);
      prev = u;
    }
    g.edges.emplace_back(prev, v);
  }
  return g;
}

namespace {

[[noreturn]] void not_an_image(const std::string& why) { throw Error(ErrorKind::NotAReductionImage, why); }

}  // namespace

QuotientTree recover_quotient(const SimpleGraph& g, Color k_hint) {
  const std::uint32_t nv = g.nv;
  if (nv < 3) not_an_image("fewer than 3 vertices");

  std::vector<std::uint32_t> offsets(static_cast<std::size_t>(nv) + 1, 0);
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto [a, b] = g.edges[i];
    if (a >= nv || b >= nv) not_an_image("edge " + std::to_string(i) + " has an endpoint out of range");
    if (a == b) not_an_image("edge " + std::to_string(i) + " is a self-loop");
    ++offsets[a + 1];
    ++offsets[b + 1];
  }
  for (std::uint32_t v = 0; v < nv; ++v) offsets[v + 1] += offsets[v];
  struct Arc {
    std::uint32_t to;
    std::uint32_t edge;
  };
  std::vector<Arc> arcs(2 * g.edges.size());
  {
    std::vector<std::uint32_t> fill(offsets.begin(), offsets.end() - 1);
    for (std::uint32_t i = 0; i < g.edges.size(); ++i) {
      const auto [a, b] = g.edges[i];
      arcs[fill[a]++] = {b, i};
      arcs[fill[b]++] = {a, i};
    }
  }
  auto degree = [&](std::uint32_t v) { return offsets[v + 1] - offsets[v]; };

  std::vector<std::uint32_t> stamp(nv, kNoVertex);
  for (std::uint32_t v = 0; v < nv; ++v) {
    if (degree(v) < 2) not_an_image("vertex " + std::to_string(v) + " has degree " + std::to_string(degree(v)));
    for (std::uint32_t a = offsets[v]; a < offsets[v + 1]; ++a) {
      if (stamp[arcs[a].to] == v) not_an_image("duplicate edge at vertex " + std::to_string(v));
      stamp[arcs[a].to] = v;
    }
  }

  std::vector<std::uint32_t> hubs;
  for (std::uint32_t v = 0; v < nv; ++v)
    if (degree(v) >= 3) hubs.push_back(v);

  QuotientTree q;
  if (hubs.empty()) {
    // Connected 2-regular graph: one lone cycle, the m = 1 image.
    std::uint32_t prev = kNoVertex, cur = 0, steps = 0;
    do {
      const Arc& first = arcs[offsets[cur]];
      const Arc& second = arcs[offsets[cur] + 1];
      const std::uint32_t next = first.to != prev ? first.to : second.to;
      prev = cur;
      cur = next;
      ++steps;
    } while (cur != 0 && steps <= nv);
    if (steps != nv) not_an_image("a graph without branch vertices must be a single cycle");
    q.m = 1;
    q.k = std::max<Color>(k_hint, 1);
    q.weight = {nv - 2};
    q.origin = {0};
    validate_quotient(q);
    return q;
  }

  std::vector<std::uint32_t> index_of(nv, kNoVertex);
  for (std::uint32_t i = 0; i < hubs.size(); ++i) index_of[hubs[i]] = i;
  q.m = static_cast<std::uint32_t>(hubs.size());
  q.weight.assign(q.m, 0);
  q.origin = hubs;

  std::vector<char> used(g.edges.size(), 0);
  std::vector<std::uint32_t> paths(q.m, 0);
  Color max_color = 1;
  for (std::uint32_t h : hubs) {
    for (std::uint32_t a = offsets[h]; a < offsets[h + 1]; ++a) {
      if (used[arcs[a].edge]) continue;
      std::uint32_t edge = arcs[a].edge;
      std::uint32_t cur = arcs[a].to;
      std::uint32_t internal = 0;
      used[edge] = 1;
      while (degree(cur) == 2) {
        const Arc& first = arcs[offsets[cur]];
        const Arc& second = arcs[offsets[cur] + 1];
        const Arc& out = first.edge != edge ? first : second;
        if (used[out.edge]) not_an_image("degree-2 chain from vertex " + std::to_string(h) + " revisits an edge");
        ++internal;
        edge = out.edge;
        used[edge] = 1;
        cur = out.to;
      }
      const std::uint32_t from = index_of[h];
      if (cur == h) {
        if (q.weight[from] != 0) not_an_image("vertex " + std::to_string(h) + " carries more than one cycle");
        if (internal < 2) not_an_image("cycle at vertex " + std::to_string(h) + " is too short");
        q.weight[from] = internal - 1;
      } else {
        if (internal == 0)
          not_an_image("branch vertices " + std::to_string(h) + " and " + std::to_string(cur) + " are adjacent");
        q.edges.push_back({from, index_of[cur], internal});
        max_color = std::max(max_color, internal);
        ++paths[from];
        ++paths[index_of[cur]];
      }
    }
  }

  for (std::uint32_t i = 0; i < q.m; ++i) {
    if (q.weight[i] == 0) not_an_image("vertex " + std::to_string(hubs[i]) + " has no attached cycle");
    if (degree(hubs[i]) != paths[i] + 2)
      not_an_image("vertex " + std::to_string(hubs[i]) + " has extra cycles or loose chains");
  }
  if (std::find(used.begin(), used.end(), 0) != used.end())
    not_an_image("some edges are not reachable from a branch vertex");

  q.k = std::max(k_hint, max_color);
  try {
    validate_quotient(q);
  } catch (const Error& err) {
    not_an_image(std::string("decoded quotient is invalid: ") + err.what());
  }
  return q;
}

}  // namespace eqtree
