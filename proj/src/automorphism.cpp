#include "eqtree/automorphism.hpp"

#include <algorithm>
#include <tuple>

#include "eqtree/error.hpp"

namespace eqtree {

namespace {

std::string pair_label(Vertex a, Vertex b) { return "(" + std::to_string(a) + ", " + std::to_string(b) + ")"; }

}  // namespace

VertexPermutation VertexPermutation::from_table(std::vector<Vertex> image) {
  const auto n = image.size();
  std::vector<char> hit(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    const Vertex w = image[v];
    if (w >= n)
      throw Error(ErrorKind::NotBijective, "perm[" + std::to_string(v) + "] = " + std::to_string(w) + " out of range");
    if (hit[w])
      throw Error(ErrorKind::NotBijective, "perm[" + std::to_string(v) + "] = " + std::to_string(w) + " repeats an image");
    hit[w] = 1;
  }
  VertexPermutation p;
  p.image_ = std::move(image);
  return p;
}

VertexPermutation VertexPermutation::identity(std::uint32_t n) {
  VertexPermutation p;
  p.image_.resize(n);
  for (Vertex v = 0; v < n; ++v) p.image_[v] = v;
  return p;
}

VertexPermutation VertexPermutation::inverse() const {
  VertexPermutation p;
  p.image_.resize(image_.size());
  for (Vertex v = 0; v < image_.size(); ++v) p.image_[image_[v]] = v;
  return p;
}

EquippedColoredTree validate_automorphism(ColoredTree tree, VertexPermutation perm) {
  if (perm.size() != tree.n())
    throw Error(ErrorKind::NotBijective,
                "permutation has " + std::to_string(perm.size()) + " entries, tree has " + std::to_string(tree.n()));
  // P maps n-1 edges injectively into a set of n-1 edges, so this one-way
  // check also gives the converse.
  for (const Edge& e : tree.edges()) {
    const Vertex a = perm(e.u);
    const Vertex b = perm(e.v);
    const auto image = tree.edge_between(a, b);
    if (!image)
      throw Error(ErrorKind::AdjacencyBroken,
                  "edge " + pair_label(e.u, e.v) + " maps to non-edge " + pair_label(a, b));
    const Color c = tree.edges()[*image].color;
    if (c != e.color)
      throw Error(ErrorKind::ColorBroken, "edge " + pair_label(e.u, e.v) + " has color " + std::to_string(e.color) +
                                              " but its image " + pair_label(a, b) + " has color " + std::to_string(c));
  }
  return EquippedColoredTree(std::move(tree), std::move(perm));
}

OrbitDecomposition compute_orbits(const VertexPermutation& perm) {
  const std::uint32_t n = perm.size();
  OrbitDecomposition d;
  d.members.reserve(n);
  d.offsets.reserve(n + 1);
  d.orbit_of.assign(n, kNoVertex);
  d.position_of.assign(n, 0);
  d.offsets.push_back(0);
  for (Vertex start = 0; start < n; ++start) {
    if (d.orbit_of[start] != kNoVertex) continue;
    const auto index = d.count();
    std::uint32_t pos = 0;
    Vertex v = start;
    do {
      d.orbit_of[v] = index;
      d.position_of[v] = pos++;
      d.members.push_back(v);
      v = perm(v);
    } while (v != start);
    d.offsets.push_back(static_cast<std::uint32_t>(d.members.size()));
  }
  return d;
}

OrbitDecomposition compute_orbits(const EquippedColoredTree& et) { return compute_orbits(et.perm()); }

std::uint32_t edge_period(const EquippedColoredTree& et, Vertex a, Vertex b) {
  if (!et.tree().edge_between(a, b)) throw Error(ErrorKind::NotAnEdge, pair_label(a, b));
  const auto& P = et.perm();
  std::uint32_t period = 0;
  Vertex x = a, y = b;
  do {
    x = P(x);
    y = P(y);
    ++period;
  } while (!((x == a && y == b) || (x == b && y == a)));
  return period;
}

std::string_view to_string(LawViolation::Kind kind) noexcept {
  switch (kind) {
    case LawViolation::Kind::MixedRankOrbit: return "MixedRankOrbit";
    case LawViolation::Kind::Divisibility: return "Divisibility";
    case LawViolation::Kind::Wiring: return "Wiring";
    case LawViolation::Kind::ColorMismatch: return "ColorMismatch";
    case LawViolation::Kind::CentralOrbit: return "CentralOrbit";
  }
  return "Unknown";
}

LawReport check_structure_laws(const ColoredTree& tree, const VertexPermutation& perm) {
  LawReport report;
  if (perm.size() != tree.n()) {
    report.violations.push_back({LawViolation::Kind::MixedRankOrbit, "permutation size differs from vertex count"});
    return report;
  }
  const RankInfo ranks = compute_ranks(tree);
  const OrbitDecomposition orbits = compute_orbits(perm);
  auto violate = [&](LawViolation::Kind kind, std::string detail) {
    report.violations.push_back({kind, std::move(detail)});
  };

  for (std::uint32_t o = 0; o < orbits.count(); ++o) {
    const auto members = orbits.orbit(o);
    for (Vertex v : members)
      if (ranks.rank[v] != ranks.rank[members[0]]) {
        violate(LawViolation::Kind::MixedRankOrbit,
                "orbit " + std::to_string(o) + " holds vertices " + std::to_string(members[0]) + " and " +
                    std::to_string(v) + " of different rank");
        break;
      }
  }

  if (ranks.bicentral()) {
    const Vertex c1 = ranks.centers[0], c2 = ranks.centers[1];
    const bool fixed = perm(c1) == c1 && perm(c2) == c2;
    const bool swapped = perm(c1) == c2 && perm(c2) == c1;
    if (!fixed && !swapped)
      violate(LawViolation::Kind::CentralOrbit, "central edge " + pair_label(c1, c2) + " is not mapped to itself");
    ++report.orbit_pairs_checked;
  } else if (perm(ranks.centers[0]) != ranks.centers[0]) {
    violate(LawViolation::Kind::CentralOrbit, "center " + std::to_string(ranks.centers[0]) + " is not fixed");
  }

  // Lower-rank neighbours of one vertex: (orbit, position, color), sorted by orbit.
  struct Link {
    std::uint32_t orbit;
    std::uint32_t position;
    Color color;
    bool operator<(const Link& o) const { return std::tie(orbit, position) < std::tie(o.orbit, o.position); }
  };
  auto lower_links = [&](Vertex v, std::vector<Link>& out) {
    out.clear();
    for (const Neighbor& nb : tree.neighbors(v))
      if (ranks.rank[nb.vertex] < ranks.rank[v])
        out.push_back({orbits.orbit_of[nb.vertex], orbits.position_of[nb.vertex], nb.color});
    std::sort(out.begin(), out.end());
  };

  struct Reference {
    std::uint32_t orbit;
    std::uint32_t anchor;
    Color color;
  };
  std::vector<Link> links;
  std::vector<Reference> refs;
  for (std::uint32_t o1 = 0; o1 < orbits.count(); ++o1) {
    const auto upper = orbits.orbit(o1);
    const auto p = static_cast<std::uint32_t>(upper.size());

    lower_links(upper[0], links);
    refs.clear();
    for (std::size_t j = 0; j < links.size(); ++j)
      if (j == 0 || links[j].orbit != links[j - 1].orbit) refs.push_back({links[j].orbit, links[j].position, links[j].color});
    report.orbit_pairs_checked += refs.size();

    std::vector<char> divisible(refs.size(), 1);
    for (std::size_t r = 0; r < refs.size(); ++r) {
      const std::uint32_t q = orbits.size(refs[r].orbit);
      if (q % p != 0) {
        divisible[r] = 0;
        violate(LawViolation::Kind::Divisibility, "orbit of " + std::to_string(upper[0]) + " has size " +
                                                      std::to_string(p) + ", neighbour orbit of " +
                                                      std::to_string(orbits.orbit(refs[r].orbit)[0]) + " has size " +
                                                      std::to_string(q));
      }
    }

    for (std::uint32_t i = 0; i < p; ++i) {
      const Vertex v = upper[i];
      if (i > 0) lower_links(v, links);
      std::size_t groups = 0;
      for (std::size_t j = 0; j < links.size();) {
        std::size_t end = j;
        while (end < links.size() && links[end].orbit == links[j].orbit) ++end;
        ++groups;
        const auto ref = std::lower_bound(refs.begin(), refs.end(), links[j].orbit,
                                          [](const Reference& r, std::uint32_t orbit) { return r.orbit < orbit; });
        if (ref == refs.end() || ref->orbit != links[j].orbit) {
          violate(LawViolation::Kind::Wiring, "vertex " + std::to_string(v) + " has a neighbour orbit that vertex " +
                                                  std::to_string(upper[0]) + " lacks");
        } else {
          const std::uint32_t q = orbits.size(ref->orbit);
          for (std::size_t t = j; t < end; ++t)
            if (links[t].color != ref->color) {
              violate(LawViolation::Kind::ColorMismatch,
                      "edges between orbits of " + std::to_string(upper[0]) + " and " +
                          std::to_string(orbits.orbit(ref->orbit)[0]) + " carry colors " +
                          std::to_string(ref->color) + " and " + std::to_string(links[t].color));
              break;
            }
          if (divisible[static_cast<std::size_t>(ref - refs.begin())]) {
            const std::uint32_t residue = (ref->anchor + i) % p;
            bool pattern = (end - j) == q / p;
            for (std::size_t t = j; t < end && pattern; ++t) pattern = links[t].position % p == residue;
            if (!pattern)
              violate(LawViolation::Kind::Wiring,
                      "neighbours of vertex " + std::to_string(v) + " in the orbit of " +
                          std::to_string(orbits.orbit(ref->orbit)[0]) + " do not follow the w_i, w_{i+p}, ... pattern");
          }
        }
        j = end;
      }
      if (groups < refs.size())
        violate(LawViolation::Kind::Wiring,
                "vertex " + std::to_string(v) + " misses a neighbour orbit of vertex " + std::to_string(upper[0]));
    }
  }
  return report;
}

LawReport check_structure_laws(const EquippedColoredTree& et) { return check_structure_laws(et.tree(), et.perm()); }

std::string_view to_string(CenterCase c) noexcept {
  switch (c) {
    case CenterCase::CentralDoubled: return "central-doubled";
    case CenterCase::Fixed: return "fixed";
    case CenterCase::Swapped: return "swapped";
  }
  return "unknown";
}

CenterCase classify(const EquippedColoredTree& et, const RankInfo& ranks) {
  if (!ranks.bicentral()) return CenterCase::CentralDoubled;
  return et.perm()(ranks.centers[0]) == ranks.centers[0] ? CenterCase::Fixed : CenterCase::Swapped;
}

EquippedColoredTree join_copies(const EquippedColoredTree& et, Vertex v, Color joining_color) {
  const ColoredTree& t = et.tree();
  const std::uint32_t n = t.n();
  TreeInput in{2 * n, t.k(), t.mode(), {}};
  in.edges.reserve(2 * static_cast<std::size_t>(n) - 1);
  for (const Edge& e : t.edges()) in.edges.push_back(e);
  for (const Edge& e : t.edges()) in.edges.push_back({e.u + n, e.v + n, e.color});
  in.edges.push_back({v, v + n, joining_color});

  std::vector<Vertex> image(2 * static_cast<std::size_t>(n));
  for (Vertex x = 0; x < n; ++x) {
    image[x] = et.perm()(x);
    image[x + n] = et.perm()(x) + n;
  }
  return validate_automorphism(validate_tree(std::move(in)), VertexPermutation::from_table(std::move(image)));
}

RootedHalf split_swapped(const EquippedColoredTree& et, const RankInfo& ranks) {
  ensure(ranks.bicentral(), "split_swapped needs a bicentral tree");
  const ColoredTree& t = et.tree();
  const Vertex c1 = ranks.centers[0], c2 = ranks.centers[1];

  std::vector<char> inside(t.n(), 0);
  std::vector<Vertex> stack{c1};
  inside[c1] = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (const Neighbor& nb : t.neighbors(v)) {
      if (inside[nb.vertex] || nb.vertex == c2) continue;
      inside[nb.vertex] = 1;
      stack.push_back(nb.vertex);
    }
  }

  std::vector<Vertex> original;
  std::vector<Vertex> local(t.n(), kNoVertex);
  for (Vertex v = 0; v < t.n(); ++v)
    if (inside[v]) {
      local[v] = static_cast<Vertex>(original.size());
      original.push_back(v);
    }

  const auto m = static_cast<std::uint32_t>(original.size());
  TreeInput in{m, t.k(), t.mode(), {}};
  in.edges.reserve(m - 1);
  for (const Edge& e : t.edges())
    if (inside[e.u] && inside[e.v]) in.edges.push_back({local[e.u], local[e.v], e.color});

  std::vector<Vertex> image(m);
  const auto& P = et.perm();
  for (Vertex x = 0; x < m; ++x) {
    const Vertex sq = P(P(original[x]));
    ensure(inside[sq], "P^2 must preserve the half containing the lesser center");
    image[x] = local[sq];
  }
  return RootedHalf{validate_automorphism(validate_tree(std::move(in)), VertexPermutation::from_table(std::move(image))),
                    local[c1], t.edges()[*ranks.central_edge].color, std::move(original)};
}

NormalForm normalize(const EquippedColoredTree& et) {
  const RankInfo ranks = compute_ranks(et.tree());
  switch (classify(et, ranks)) {
    case CenterCase::CentralDoubled:
      return {CenterCase::CentralDoubled, join_copies(et, ranks.centers[0], 1)};
    case CenterCase::Fixed:
      return {CenterCase::Fixed, et};
    case CenterCase::Swapped:
      break;
  }
  return {CenterCase::Swapped, split_swapped(et, ranks)};
}

}  // namespace eqtree
