#include "eqtree/quotient.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "eqtree/error.hpp"

namespace eqtree {

namespace {

std::string qedge_label(std::size_t i, const QuotientEdge& e) {
  return "edges[" + std::to_string(i) + "] = (" + std::to_string(e.a) + ", " + std::to_string(e.b) + ", " +
         std::to_string(e.color) + ")";
}

ColoredTree underlying_tree(const QuotientTree& q) {
  TreeInput in{q.m, q.k, Mode::Generic, {}};
  in.edges.reserve(q.edges.size());
  for (const auto& e : q.edges) in.edges.push_back({e.a, e.b, e.color});
  try {
    return validate_tree(std::move(in));
  } catch (const Error& err) {
    throw Error(ErrorKind::InvalidQuotient, err.what());
  }
}

// Quotient oriented away from its anchor.
struct Rooting {
  std::uint32_t anchor = 0;
  std::vector<std::uint32_t> parent;
  std::vector<Color> parent_color;
  std::vector<std::uint32_t> order;  // BFS order from the anchor
};

std::uint32_t choose_anchor(const QuotientTree& q, const ColoredTree& shape) {
  if (q.loop) return q.loop->vertex;
  for (Vertex c : compute_ranks(shape).centers)
    if (q.weight[c] == 1) return c;
  for (std::uint32_t v = 0; v < q.m; ++v)
    if (q.weight[v] == 1) return v;
  throw Error(ErrorKind::CentralWeightNotOne, "no vertex of weight 1 to anchor the expansion");
}

Rooting checked_rooting(const QuotientTree& q) {
  if (q.m < 1) throw Error(ErrorKind::InvalidQuotient, "quotient needs at least one vertex");
  if (q.weight.size() != q.m)
    throw Error(ErrorKind::InvalidQuotient,
                std::to_string(q.weight.size()) + " weights for " + std::to_string(q.m) + " vertices");
  for (std::uint32_t v = 0; v < q.m; ++v)
    if (q.weight[v] < 1) throw Error(ErrorKind::InvalidQuotient, "weights[" + std::to_string(v) + "] must be positive");
  const ColoredTree shape = underlying_tree(q);

  if (q.loop) {
    const auto& l = *q.loop;
    if (l.vertex >= q.m) throw Error(ErrorKind::InvalidQuotient, "loop vertex " + std::to_string(l.vertex) + " out of range");
    if (l.color < 1 || l.color > q.k)
      throw Error(ErrorKind::InvalidQuotient, "loop color " + std::to_string(l.color) + " outside 1.." + std::to_string(q.k));
    if (q.weight[l.vertex] != 2)
      throw Error(ErrorKind::InvalidQuotient, "loop vertex " + std::to_string(l.vertex) + " must have weight 2");
  }

  for (std::size_t i = 0; i < q.edges.size(); ++i) {
    const auto& e = q.edges[i];
    const Weight lo = std::min(q.weight[e.a], q.weight[e.b]);
    const Weight hi = std::max(q.weight[e.a], q.weight[e.b]);
    if (hi % lo != 0)
      throw Error(ErrorKind::DivisibilityViolated, qedge_label(i, e) + ": weights " + std::to_string(q.weight[e.a]) +
                                                       " and " + std::to_string(q.weight[e.b]));
  }

  Rooting r;
  r.anchor = choose_anchor(q, shape);
  r.parent.assign(q.m, kNoVertex);
  r.parent_color.assign(q.m, 0);
  r.order.reserve(q.m);
  r.order.push_back(r.anchor);
  std::vector<char> seen(q.m, 0);
  seen[r.anchor] = 1;
  for (std::size_t head = 0; head < r.order.size(); ++head) {
    const auto v = r.order[head];
    for (const Neighbor& nb : shape.neighbors(v)) {
      if (seen[nb.vertex]) continue;
      seen[nb.vertex] = 1;
      if (q.weight[nb.vertex] % q.weight[v] != 0)
        throw Error(ErrorKind::DivisibilityViolated,
                    qedge_label(nb.edge, q.edges[nb.edge]) + ": child weight " + std::to_string(q.weight[nb.vertex]) +
                        " is not a multiple of parent weight " + std::to_string(q.weight[v]));
      r.parent[nb.vertex] = v;
      r.parent_color[nb.vertex] = nb.color;
      r.order.push_back(nb.vertex);
    }
  }
  return r;
}

QuotientTree quotient_of(const EquippedColoredTree& et, const RankInfo& ranks, bool dynamics) {
  const ColoredTree& t = et.tree();
  const CenterCase kind = classify(et, ranks);
  if (kind == CenterCase::Swapped && !dynamics)
    throw Error(ErrorKind::CentralOrbitNotFixed, "the central vertices " + std::to_string(ranks.centers[0]) + " and " +
                                                     std::to_string(ranks.centers[1]) + " are exchanged by P");
  const OrbitDecomposition orbits = compute_orbits(et);

  // Counting sort of the orbits by rank, highest first, keeping least-member order.
  const std::uint32_t top = ranks.max_rank();
  std::vector<std::uint32_t> start(static_cast<std::size_t>(top) + 2, 0);
  for (std::uint32_t o = 0; o < orbits.count(); ++o) ++start[top - ranks.rank[orbits.orbit(o)[0]] + 1];
  for (std::uint32_t r = 0; r <= top; ++r) start[r + 1] += start[r];
  std::vector<std::uint32_t> by_rank(orbits.count());
  for (std::uint32_t o = 0; o < orbits.count(); ++o) by_rank[start[top - ranks.rank[orbits.orbit(o)[0]]]++] = o;
  std::vector<std::uint32_t> index_of(orbits.count());
  for (std::uint32_t i = 0; i < by_rank.size(); ++i) index_of[by_rank[i]] = i;

  QuotientTree q;
  q.m = orbits.count();
  q.k = t.k();
  q.weight.resize(q.m);
  q.origin.resize(q.m);
  q.edges.reserve(q.m - 1);

  const Vertex c1 = ranks.centers[0];
  const Vertex c2 = ranks.bicentral() ? ranks.centers[1] : c1;
  for (std::uint32_t i = 0; i < q.m; ++i) {
    const std::uint32_t o = by_rank[i];
    const auto members = orbits.orbit(o);
    q.weight[i] = static_cast<Weight>(members.size());
    q.origin[i] = members[0];

    if (o == orbits.orbit_of[c1]) continue;
    if (o == orbits.orbit_of[c2]) {
      q.edges.push_back({index_of[orbits.orbit_of[c1]], i, t.edges()[*ranks.central_edge].color});
      continue;
    }
    // Every non-central vertex has exactly one higher-rank neighbour.
    std::uint32_t parent_orbit = kNoVertex;
    Color color = 0;
    for (Vertex x : members) {
      for (const Neighbor& nb : t.neighbors(x)) {
        if (ranks.rank[nb.vertex] <= ranks.rank[x]) continue;
        if (parent_orbit == kNoVertex) {
          parent_orbit = orbits.orbit_of[nb.vertex];
          color = nb.color;
        } else {
          ensure(parent_orbit == orbits.orbit_of[nb.vertex], "orbit members must share their parent orbit");
          ensure(color == nb.color, "edges between two orbits must share one color");
        }
      }
    }
    ensure(parent_orbit != kNoVertex, "non-central orbit without a parent");
    q.edges.push_back({index_of[parent_orbit], i, color});
  }

  if (kind == CenterCase::Swapped) q.loop = QuotientLoop{index_of[orbits.orbit_of[c1]], t.edges()[*ranks.central_edge].color};
  return q;
}

}  // namespace

Weight QuotientTree::total_weight() const {
  return std::accumulate(weight.begin(), weight.end(), Weight{0});
}

std::uint32_t expansion_anchor(const QuotientTree& q) { return checked_rooting(q).anchor; }

void validate_quotient(const QuotientTree& q) { (void)checked_rooting(q); }

QuotientTree build_quotient(const EquippedColoredTree& et) { return quotient_of(et, compute_ranks(et.tree()), false); }

QuotientTree build_quotient(const EquippedColoredTree& et, const RankInfo& ranks) { return quotient_of(et, ranks, false); }

QuotientTree build_dynamics_quotient(const EquippedColoredTree& et) {
  return quotient_of(et, compute_ranks(et.tree()), true);
}

std::vector<Vertex> expansion_offsets(const QuotientTree& q) {
  std::vector<Vertex> offset(q.m);
  Vertex next = 0;
  for (std::uint32_t i = 0; i < q.m; ++i) {
    offset[i] = next;
    next += q.weight[i];
  }
  return offset;
}

EquippedColoredTree expand_quotient(const QuotientTree& q, Mode mode) {
  if (q.loop)
    throw Error(ErrorKind::LoopPresent, "quotients with a loop (swapped centers) cannot be expanded");
  const Rooting r = checked_rooting(q);
  const auto offset = expansion_offsets(q);
  const Vertex n = q.total_weight();

  TreeInput in{n, q.k, mode, {}};
  in.edges.reserve(n - 1);
  for (std::uint32_t c : r.order) {
    if (c == r.anchor) continue;
    const std::uint32_t p = r.parent[c];
    for (Weight j = 0; j < q.weight[c]; ++j)
      in.edges.push_back({offset[c] + j, offset[p] + j % q.weight[p], r.parent_color[c]});
  }

  std::vector<Vertex> image(n);
  for (std::uint32_t i = 0; i < q.m; ++i)
    for (Weight j = 0; j < q.weight[i]; ++j) image[offset[i] + j] = offset[i] + (j + 1) % q.weight[i];

  return validate_automorphism(validate_tree(std::move(in)), VertexPermutation::from_table(std::move(image)));
}

bool equal_under(const QuotientTree& a, const QuotientTree& b, std::span<const std::uint32_t> a_to_b) {
  if (a.m != b.m || a.k != b.k || a_to_b.size() != a.m || a.edges.size() != b.edges.size()) return false;
  std::vector<char> hit(b.m, 0);
  for (std::uint32_t v = 0; v < a.m; ++v) {
    const auto w = a_to_b[v];
    if (w >= b.m || hit[w]) return false;
    hit[w] = 1;
    if (a.weight[v] != b.weight[w]) return false;
  }
  if (a.loop.has_value() != b.loop.has_value()) return false;
  if (a.loop && (a_to_b[a.loop->vertex] != b.loop->vertex || a.loop->color != b.loop->color)) return false;

  auto key = [](std::uint32_t x, std::uint32_t y, Color c) {
    return std::tuple{std::min(x, y), std::max(x, y), c};
  };
  std::vector<std::tuple<std::uint32_t, std::uint32_t, Color>> ea, eb;
  for (const auto& e : a.edges) ea.push_back(key(a_to_b[e.a], a_to_b[e.b], e.color));
  for (const auto& e : b.edges) eb.push_back(key(e.a, e.b, e.color));
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  return ea == eb;
}

std::optional<std::vector<std::uint32_t>> correspondence_after_expansion(const QuotientTree& a,
                                                                         const QuotientTree& b) {
  if (a.m != b.m || b.origin.size() != b.m) return std::nullopt;
  const auto offset = expansion_offsets(a);
  std::vector<std::uint32_t> by_origin;
  std::vector<std::pair<Vertex, std::uint32_t>> sorted;
  for (std::uint32_t j = 0; j < b.m; ++j) sorted.emplace_back(b.origin[j], j);
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::uint32_t> map(a.m);
  for (std::uint32_t i = 0; i < a.m; ++i) {
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), std::pair<Vertex, std::uint32_t>{offset[i], 0});
    if (it == sorted.end() || it->first != offset[i]) return std::nullopt;
    map[i] = it->second;
  }
  return map;
}

DynamicsReport ms_report(const EquippedColoredTree& et) {
  const ColoredTree& t = et.tree();
  if (t.mode() != Mode::MorseSmale) throw Error(ErrorKind::WrongMode, "ms_report needs a morse-smale instance");
  const RankInfo ranks = compute_ranks(t);

  DynamicsReport r;
  r.domains = t.n();
  r.saddles = t.n() - 1;
  std::vector<char> visited(t.edges().size(), 0);
  for (std::uint32_t i = 0; i < t.edges().size(); ++i) {
    const Edge& e = t.edges()[i];
    if (e.color == kColorS) ++r.s_saddles;
    else ++r.u_saddles;
    if (visited[i]) continue;
    std::uint32_t period = 0;
    Vertex x = e.u, y = e.v;
    do {
      visited[*t.edge_between(x, y)] = 1;
      x = et.perm()(x);
      y = et.perm()(y);
      ++period;
    } while (!((x == e.u && y == e.v) || (x == e.v && y == e.u)));
    r.saddle_orbits.push_back({e.u, e.v, e.color, period, ranks.central_edge == i});
  }

  if (build_dynamics_quotient(et).loop) {
    for (const auto& s : r.saddle_orbits)
      if (s.central) r.negative_saddle = s;
    ensure(r.negative_saddle.has_value() && r.negative_saddle->period == 1,
           "a loop must come from a period-1 central saddle");
    r.negative_saddles = 1;
  }
  return r;
}

}  // namespace eqtree
