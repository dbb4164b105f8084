#include "eqtree/isomorphism.hpp"

#include <algorithm>
#include <functional>
#include <span>

#include "eqtree/error.hpp"
#include "eqtree/reduction.hpp"

namespace eqtree {

namespace {

enum class ShapeTag : std::uint8_t { Central = 'C', Bicentral = 'B', Rooted = 'R', Loop = 'L' };

// Quotient oriented away from one root, or from the two ends of the central edge.
struct Forest {
  std::vector<Weight> weight;
  std::vector<std::uint32_t> first_child;  // m + 1 offsets
  std::vector<std::uint32_t> child;
  std::vector<Color> child_color;
  std::vector<std::uint32_t> order;  // parents before children
  std::vector<std::uint32_t> roots;
  ShapeTag tag = ShapeTag::Central;
  Color root_color = 0;  // central edge or loop color

  std::uint32_t size() const { return static_cast<std::uint32_t>(weight.size()); }
};

Forest make_forest(const QuotientTree& q, RootPolicy policy) {
  validate_quotient(q);
  TreeInput in{q.m, q.k, Mode::Generic, {}};
  in.edges.reserve(q.edges.size());
  for (const auto& e : q.edges) in.edges.push_back({e.a, e.b, e.color});
  const ColoredTree shape = validate_tree(std::move(in));

  Forest f;
  f.weight = q.weight;
  if (q.loop) {
    f.tag = ShapeTag::Loop;
    f.roots = {q.loop->vertex};
    f.root_color = q.loop->color;
  } else if (policy.kind == RootPolicy::Kind::At) {
    if (policy.vertex >= q.m) throw Error(ErrorKind::InvalidQuotient, "root " + std::to_string(policy.vertex) + " out of range");
    f.tag = ShapeTag::Rooted;
    f.roots = {policy.vertex};
  } else {
    const RankInfo ranks = compute_ranks(shape);
    f.roots = ranks.centers;
    if (ranks.bicentral()) {
      f.tag = ShapeTag::Bicentral;
      f.root_color = shape.edges()[*ranks.central_edge].color;
    }
  }

  const std::uint32_t m = q.m;
  std::vector<std::uint32_t> parent(m, kNoVertex);
  std::vector<Color> color(m, 0);
  std::vector<char> seen(m, 0);
  f.order = f.roots;
  for (auto r : f.roots) seen[r] = 1;
  for (std::size_t head = 0; head < f.order.size(); ++head) {
    const auto v = f.order[head];
    for (const Neighbor& nb : shape.neighbors(v)) {
      if (seen[nb.vertex]) continue;
      seen[nb.vertex] = 1;
      parent[nb.vertex] = v;
      color[nb.vertex] = nb.color;
      f.order.push_back(nb.vertex);
    }
  }
  ensure(f.order.size() == m, "quotient forest must cover every vertex");

  f.first_child.assign(static_cast<std::size_t>(m) + 1, 0);
  for (std::uint32_t v = 0; v < m; ++v)
    if (parent[v] != kNoVertex) ++f.first_child[parent[v] + 1];
  for (std::uint32_t v = 0; v < m; ++v) f.first_child[v + 1] += f.first_child[v];
  f.child.resize(f.first_child[m]);
  f.child_color.resize(f.first_child[m]);
  std::vector<std::uint32_t> fill(f.first_child.begin(), f.first_child.end() - 1);
  for (auto v : f.order)
    if (parent[v] != kNoVertex) {
      f.child[fill[parent[v]]] = v;
      f.child_color[fill[parent[v]]++] = color[v];
    }
  return f;
}

// Encoding tuple of one vertex: weight, then (color, child class) pairs sorted.
void vertex_tuple(const Forest& f, std::uint32_t v, const std::vector<std::uint32_t>& cls,
                  std::vector<std::uint32_t>& out) {
  std::vector<std::pair<Color, std::uint32_t>> pairs;
  pairs.reserve(f.first_child[v + 1] - f.first_child[v]);
  for (auto i = f.first_child[v]; i < f.first_child[v + 1]; ++i) pairs.emplace_back(f.child_color[i], cls[f.child[i]]);
  std::sort(pairs.begin(), pairs.end());
  out.clear();
  out.reserve(1 + 2 * pairs.size());
  out.push_back(f.weight[v]);
  for (const auto& [c, id] : pairs) {
    out.push_back(c);
    out.push_back(id);
  }
}

std::vector<std::uint32_t> root_tuple(const Forest& f, const std::vector<std::uint32_t>& cls) {
  std::vector<std::uint32_t> t{static_cast<std::uint32_t>(f.tag), f.root_color};
  std::vector<std::uint32_t> ids;
  for (auto r : f.roots) ids.push_back(cls[r]);
  std::sort(ids.begin(), ids.end());
  t.insert(t.end(), ids.begin(), ids.end());
  return t;
}

class ByteWriter {
 public:
  void u8(std::uint8_t b) { bytes_.push_back(b); }
  void u32(std::uint32_t x) {
    for (int shift = 24; shift >= 0; shift -= 8) bytes_.push_back(static_cast<std::uint8_t>(x >> shift));
  }
  void tuple(const std::vector<std::uint32_t>& t) {
    u32(static_cast<std::uint32_t>(t.size()));
    for (auto x : t) u32(x);
  }
  void append(const std::vector<std::uint8_t>& b) { bytes_.insert(bytes_.end(), b.begin(), b.end()); }
  std::vector<std::uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
};


}  // namespace

std::string CanonicalCode::hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s;
  s.reserve(2 * bytes.size());
  for (auto b : bytes) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 15]);
  }
  return s;
}

CanonicalCode canon_quotient(const QuotientTree& q, RootPolicy policy) {
  const Forest f = make_forest(q, policy);
  const std::uint32_t m = f.size();

  std::vector<std::uint32_t> height(m, 0);
  std::uint32_t max_height = 0;
  for (auto it = f.order.rbegin(); it != f.order.rend(); ++it) {
    const auto v = *it;
    for (auto i = f.first_child[v]; i < f.first_child[v + 1]; ++i)
      height[v] = std::max(height[v], height[f.child[i]] + 1);
    max_height = std::max(max_height, height[v]);
  }
  std::vector<std::vector<std::uint32_t>> levels(static_cast<std::size_t>(max_height) + 1);
  for (std::uint32_t v = 0; v < m; ++v) levels[height[v]].push_back(v);

  ByteWriter out;
  out.u8(kCodeVersion);
  out.u8('Q');
  out.u8(static_cast<std::uint8_t>(f.tag));
  out.u32(static_cast<std::uint32_t>(levels.size()));

  // Ids are handed out level by level in sorted tuple order, so they only
  // depend on the set of tuples present, never on vertex numbering.
  std::vector<std::uint32_t> cls(m, 0);
  std::uint32_t next_id = 0;
  std::vector<std::pair<std::vector<std::uint32_t>, std::uint32_t>> tuples;
  for (const auto& level : levels) {
    tuples.clear();
    for (auto v : level) {
      std::vector<std::uint32_t> t;
      vertex_tuple(f, v, cls, t);
      tuples.emplace_back(std::move(t), v);
    }
    std::sort(tuples.begin(), tuples.end());
    std::uint32_t distinct = 0;
    for (std::size_t i = 0; i < tuples.size(); ++i)
      if (i == 0 || tuples[i].first != tuples[i - 1].first) ++distinct;
    out.u32(distinct);
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      if (i == 0 || tuples[i].first != tuples[i - 1].first) {
        out.tuple(tuples[i].first);
        ++next_id;
      }
      cls[tuples[i].second] = next_id - 1;
    }
  }
  out.tuple(root_tuple(f, cls));
  return {out.take()};
}

RootedQuotient half_quotient(const RootedHalf& half) {
  const ColoredTree& t = half.half.tree();
  const std::uint32_t n = t.n();
  std::vector<Vertex> parent(n, kNoVertex);
  std::vector<Color> up_color(n, 0);
  std::vector<Vertex> queue{half.root};
  std::vector<char> seen(n, 0);
  seen[half.root] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex v = queue[head];
    for (const Neighbor& nb : t.neighbors(v)) {
      if (seen[nb.vertex]) continue;
      seen[nb.vertex] = 1;
      parent[nb.vertex] = v;
      up_color[nb.vertex] = nb.color;
      queue.push_back(nb.vertex);
    }
  }

  const OrbitDecomposition orbits = compute_orbits(half.half);
  RootedQuotient r;
  r.root = orbits.orbit_of[half.root];
  ensure(orbits.size(r.root) == 1, "P^2 fixes the root of a swapped half");
  QuotientTree& q = r.q;
  q.m = orbits.count();
  q.k = t.k();
  q.weight.resize(q.m);
  q.origin.resize(q.m);
  for (std::uint32_t o = 0; o < q.m; ++o) {
    const auto members = orbits.orbit(o);
    q.weight[o] = static_cast<Weight>(members.size());
    q.origin[o] = members[0];
    if (o == r.root) continue;
    q.edges.push_back({orbits.orbit_of[parent[members[0]]], o, up_color[members[0]]});
  }
  return r;
}

CanonicalCode canon_equipped(const EquippedColoredTree& et) {
  const NormalForm nf = normalize(et);
  ByteWriter out;
  out.u8(kCodeVersion);
  out.u8('E');
  switch (nf.tag) {
    case CenterCase::CentralDoubled:
      out.u8('c');
      out.append(canon_quotient(build_quotient(nf.tree())).bytes);
      break;
    case CenterCase::Fixed:
      out.u8('f');
      out.append(canon_quotient(build_quotient(nf.tree())).bytes);
      break;
    case CenterCase::Swapped: {
      out.u8('s');
      out.u32(nf.half().central_color);
      const RootedQuotient rq = half_quotient(nf.half());
      out.append(canon_quotient(rq.q, RootPolicy::at(rq.root)).bytes);
      break;
    }
  }
  return {out.take()};
}

bool is_witness(const EquippedColoredTree& a, const EquippedColoredTree& b, std::span<const Vertex> xi) {
  const std::uint32_t n = a.n();
  if (b.n() != n || xi.size() != n) return false;
  std::vector<char> hit(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    if (xi[v] >= n || hit[xi[v]]) return false;
    hit[xi[v]] = 1;
  }
  for (const Edge& e : a.tree().edges()) {
    const auto image = b.tree().edge_between(xi[e.u], xi[e.v]);
    if (!image || b.tree().edges()[*image].color != e.color) return false;
  }
  for (Vertex v = 0; v < n; ++v)
    if (xi[a.perm()(v)] != b.perm()(xi[v])) return false;
  return true;
}

std::optional<IsoWitness> iso_brute(const EquippedColoredTree& a, const EquippedColoredTree& b, std::uint32_t limit) {
  const std::uint32_t n = a.n();
  if (b.n() != n) return std::nullopt;
  if (n > limit) throw Error(ErrorKind::TooLarge, "brute force is limited to " + std::to_string(limit) + " vertices");

  const ColoredTree& ta = a.tree();
  const ColoredTree& tb = b.tree();
  std::vector<Vertex> order{0};
  std::vector<Vertex> parent(n, kNoVertex);
  std::vector<Color> up_color(n, 0);
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  for (std::size_t head = 0; head < order.size(); ++head)
    for (const Neighbor& nb : ta.neighbors(order[head]))
      if (!seen[nb.vertex]) {
        seen[nb.vertex] = 1;
        parent[nb.vertex] = order[head];
        up_color[nb.vertex] = nb.color;
        order.push_back(nb.vertex);
      }

  const VertexPermutation inv_a = a.perm().inverse();
  std::vector<Vertex> xi(n, kNoVertex);
  std::vector<char> used(n, 0);

  std::function<bool(std::size_t)> extend = [&](std::size_t idx) -> bool {
    if (idx == n) return is_witness(a, b, xi);
    const Vertex v = order[idx];
    auto try_image = [&](Vertex y) -> bool {
      if (used[y] || ta.degree(v) != tb.degree(y)) return false;
      const Vertex fwd = a.perm()(v);
      if (fwd == v ? b.perm()(y) != y : (xi[fwd] != kNoVertex && xi[fwd] != b.perm()(y))) return false;
      const Vertex back = inv_a(v);
      if (xi[back] != kNoVertex && b.perm()(xi[back]) != y) return false;
      xi[v] = y;
      used[y] = 1;
      if (extend(idx + 1)) return true;
      xi[v] = kNoVertex;
      used[y] = 0;
      return false;
    };
    if (idx == 0) {
      for (Vertex y = 0; y < n; ++y)
        if (try_image(y)) return true;
      return false;
    }
    for (const Neighbor& nb : tb.neighbors(xi[parent[v]]))
      if (nb.color == up_color[v] && try_image(nb.vertex)) return true;
    return false;
  };

  if (!extend(0)) return std::nullopt;
  return IsoWitness{std::move(xi)};
}

bool iso_via_reduction(const QuotientTree& a, const QuotientTree& b) {
  auto recovered_code = [](const QuotientTree& q) {
    SimpleGraph g = reduce_to_graph(q);
    g.provenance.clear();
    return canon_quotient(recover_quotient(g));
  };
  return recovered_code(a) == recovered_code(b);
}

QuotientTree reduction_quotient(const NormalForm& nf) {
  if (nf.tag == CenterCase::Swapped) {
    const RootedHalf& h = nf.half();
    return build_quotient(join_copies(h.half, h.root, h.central_color));
  }
  return build_quotient(nf.tree());
}

bool iso_decide_via_reduction(const EquippedColoredTree& a, const EquippedColoredTree& b) {
  if (a.n() != b.n()) return false;
  const NormalForm na = normalize(a);
  const NormalForm nb = normalize(b);
  if (na.tag != nb.tag) return false;
  if (na.tag == CenterCase::Swapped && na.half().central_color != nb.half().central_color) return false;
  return iso_via_reduction(reduction_quotient(na), reduction_quotient(nb));
}

}  // namespace eqtree
