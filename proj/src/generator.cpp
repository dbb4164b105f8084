#include "eqtree/generator.hpp"

#include <algorithm>
#include <string>

#include "eqtree/error.hpp"
#include "eqtree/isomorphism.hpp"

namespace eqtree {

namespace {

// Joins two copies of a rooted half; P sends the first copy onto the second
// and brings the second back through the half's own automorphism.
EquippedColoredTree assemble_swapped(const EquippedColoredTree& half, Vertex root, Color central_color) {
  const ColoredTree& t = half.tree();
  const std::uint32_t h = t.n();
  TreeInput in{2 * h, t.k(), t.mode(), {}};
  in.edges.reserve(2 * static_cast<std::size_t>(h) - 1);
  for (const Edge& e : t.edges()) in.edges.push_back(e);
  for (const Edge& e : t.edges()) in.edges.push_back({e.u + h, e.v + h, e.color});
  in.edges.push_back({root, root + h, central_color});
  std::vector<Vertex> image(2 * static_cast<std::size_t>(h));
  for (Vertex x = 0; x < h; ++x) {
    image[x] = x + h;
    image[x + h] = half.perm()(x);
  }
  return validate_automorphism(validate_tree(std::move(in)), VertexPermutation::from_table(std::move(image)));
}

std::vector<std::uint32_t> parents_from(const QuotientTree& q, std::uint32_t root) {
  std::vector<std::vector<std::uint32_t>> adj(q.m);
  for (const auto& e : q.edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  std::vector<std::uint32_t> parent(q.m, kNoVertex);
  std::vector<std::uint32_t> stack{root};
  parent[root] = root;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto w : adj[v])
      if (parent[w] == kNoVertex) {
        parent[w] = v;
        stack.push_back(w);
      }
  }
  return parent;
}

bool reweight_leaf(QuotientTree& q, std::uint32_t root, Rng& rng, std::string& log) {
  const auto parent = parents_from(q, root);
  std::vector<std::uint32_t> degree(q.m, 0);
  for (const auto& e : q.edges) {
    ++degree[e.a];
    ++degree[e.b];
  }
  std::vector<std::uint32_t> leaves;
  for (std::uint32_t v = 0; v < q.m; ++v)
    if (v != root && degree[v] == 1) leaves.push_back(v);
  if (leaves.empty()) return false;
  const auto v = leaves[rng.uniform(0, leaves.size() - 1)];
  const Weight base = q.weight[parent[v]];
  const Weight old = q.weight[v];
  Weight fresh = old;
  for (int tries = 0; tries < 8 && fresh == old; ++tries) fresh = base * static_cast<Weight>(rng.uniform(1, 4));
  if (fresh == old) return false;
  q.weight[v] = fresh;
  log = "reweight quotient vertex " + std::to_string(v) + " from " + std::to_string(old) + " to " + std::to_string(fresh);
  return true;
}

bool reattach_subtree(QuotientTree& q, std::uint32_t root, Rng& rng, std::string& log) {
  if (q.m < 3) return false;
  const auto parent = parents_from(q, root);
  const auto v = static_cast<std::uint32_t>(rng.uniform(0, q.m - 1));
  if (v == root) return false;

  std::vector<char> below(q.m, 0);
  for (std::uint32_t x = 0; x < q.m; ++x) {
    std::uint32_t y = x;
    while (y != root && y != v) y = parent[y];
    below[x] = y == v;
  }
  std::vector<std::uint32_t> targets;
  for (std::uint32_t u = 0; u < q.m; ++u)
    if (!below[u] && u != parent[v] && q.weight[v] % q.weight[u] == 0) targets.push_back(u);
  if (targets.empty()) return false;
  const auto u = targets[rng.uniform(0, targets.size() - 1)];
  for (auto& e : q.edges)
    if ((e.a == v && e.b == parent[v]) || (e.b == v && e.a == parent[v])) {
      e = {u, v, e.color};
      break;
    }
  log = "reattach quotient vertex " + std::to_string(v) + " from " + std::to_string(parent[v]) + " to " + std::to_string(u);
  return true;
}

std::optional<EquippedColoredTree> recolor_edge_orbit(const EquippedColoredTree& et, Rng& rng, std::string& log) {
  const ColoredTree& t = et.tree();
  if (t.k() < 2 || t.n() < 2) return std::nullopt;
  const auto start = static_cast<std::uint32_t>(rng.uniform(0, t.edges().size() - 1));
  const Color old = t.edges()[start].color;
  auto fresh = static_cast<Color>(rng.uniform(1, t.k() - 1));
  if (fresh >= old) ++fresh;

  TreeInput in = t.to_input();
  Vertex x = in.edges[start].u, y = in.edges[start].v;
  std::uint32_t touched = 0;
  do {
    in.edges[*t.edge_between(x, y)].color = fresh;
    ++touched;
    x = et.perm()(x);
    y = et.perm()(y);
  } while (!((x == in.edges[start].u && y == in.edges[start].v) || (x == in.edges[start].v && y == in.edges[start].u)));
  log = "recolor edge orbit of edges[" + std::to_string(start) + "] (" + std::to_string(touched) + " edges) from " +
        std::to_string(old) + " to " + std::to_string(fresh);
  std::vector<Vertex> image(et.perm().image().begin(), et.perm().image().end());
  return validate_automorphism(validate_tree(std::move(in)), VertexPermutation::from_table(std::move(image)));
}

std::optional<EquippedColoredTree> mutate(const EquippedColoredTree& et, Rng& rng, std::string& log) {
  const auto choice = rng.uniform(0, 2);
  if (choice == 0) return recolor_edge_orbit(et, rng, log);

  const RankInfo ranks = compute_ranks(et.tree());
  const bool swapped = classify(et, ranks) == CenterCase::Swapped;
  QuotientTree q;
  std::uint32_t root = 0;
  Color central = 0;
  if (swapped) {
    const RootedHalf half = split_swapped(et, ranks);
    auto rq = half_quotient(half);
    q = std::move(rq.q);
    root = rq.root;
    central = half.central_color;
  } else {
    q = build_quotient(et);
    root = expansion_anchor(q);
  }
  const bool changed = choice == 1 ? reweight_leaf(q, root, rng, log) : reattach_subtree(q, root, rng, log);
  if (!changed) return std::nullopt;
  if (!swapped) return expand_quotient(q, et.tree().mode());
  const EquippedColoredTree half = expand_quotient(q, et.tree().mode());
  return assemble_swapped(half, expansion_offsets(q)[root], central);
}

}  // namespace

QuotientTree random_quotient(std::uint32_t n, Color k, Weight max_orbit, Rng& rng) {
  QuotientTree q;
  q.k = k;
  q.m = 1;
  q.weight = {1};
  std::uint32_t remaining = n - 1;
  while (remaining > 0) {
    const Weight cap = std::min<Weight>(remaining, max_orbit);
    std::uint32_t parent = 0;
    for (int tries = 0; tries < 8; ++tries) {
      const auto cand = static_cast<std::uint32_t>(rng.uniform(0, q.m - 1));
      if (q.weight[cand] <= cap) {
        parent = cand;
        break;
      }
    }
    const Weight mult = static_cast<Weight>(rng.uniform(1, cap / q.weight[parent]));
    const Weight w = q.weight[parent] * mult;
    q.weight.push_back(w);
    q.edges.push_back({parent, q.m, static_cast<Color>(rng.uniform(1, k))});
    ++q.m;
    remaining -= w;
  }
  return q;
}

EquippedColoredTree gen_equipped(const GenSpec& spec) {
  if (spec.n < 1) throw Error(ErrorKind::InfeasibleSpec, "n must be at least 1 (nearest feasible: n = 1)");
  if (spec.k < 1) throw Error(ErrorKind::InfeasibleSpec, "k must be at least 1 (nearest feasible: k = 1)");
  if (spec.max_orbit < 1)
    throw Error(ErrorKind::InfeasibleSpec, "max orbit size must be at least 1 (nearest feasible: 1)");
  if (spec.mode == Mode::MorseSmale && spec.k != 2)
    throw Error(ErrorKind::InfeasibleSpec, "morse-smale instances use k = 2");
  if (!(spec.loop_probability >= 0.0 && spec.loop_probability <= 1.0))
    throw Error(ErrorKind::InfeasibleSpec, "loop probability must lie in [0, 1]");

  Rng rng(spec.seed);
  const bool swapped = spec.n >= 2 && spec.n % 2 == 0 && rng.chance(spec.loop_probability);
  if (swapped) {
    const QuotientTree q = random_quotient(spec.n / 2, spec.k, spec.max_orbit, rng);
    const EquippedColoredTree half = expand_quotient(q, spec.mode);
    const auto central = static_cast<Color>(rng.uniform(1, spec.k));
    return random_relabel(assemble_swapped(half, expansion_offsets(q)[0], central), rng);
  }
  const QuotientTree q = random_quotient(spec.n, spec.k, spec.max_orbit, rng);
  return random_relabel(expand_quotient(q, spec.mode), rng);
}

EquippedColoredTree random_relabel(const EquippedColoredTree& et, Rng& rng) {
  const std::uint32_t n = et.n();
  std::vector<Vertex> rho(n);
  for (Vertex v = 0; v < n; ++v) rho[v] = v;
  rng.shuffle(rho);

  TreeInput in = et.tree().to_input();
  for (Edge& e : in.edges) {
    e = {rho[e.u], rho[e.v], e.color};
    if (rng.uniform(0, 1)) std::swap(e.u, e.v);
  }
  rng.shuffle(in.edges);

  std::vector<Vertex> image(n);
  for (Vertex v = 0; v < n; ++v) image[rho[v]] = rho[et.perm()(v)];
  return validate_automorphism(validate_tree(std::move(in)), VertexPermutation::from_table(std::move(image)));
}

InstancePair make_pair(const EquippedColoredTree& et, PairKind kind, std::uint64_t seed) {
  Rng rng(seed);
  if (kind == PairKind::NonIso) {
    for (int attempt = 0; attempt < 24; ++attempt) {
      std::string log;
      auto mutated = mutate(et, rng, log);
      if (!mutated) continue;
      bool distinct;
      if (mutated->n() != et.n())
        distinct = true;
      else if (et.n() <= kBruteLimit)
        distinct = !iso_brute(et, *mutated).has_value();
      else
        distinct = canon_equipped(et) != canon_equipped(*mutated);
      if (!distinct) continue;
      return {et, random_relabel(*mutated, rng), false, log};
    }
  }
  return {et, random_relabel(et, rng), true, kind == PairKind::Iso ? "relabel" : "none"};
}

}  // namespace eqtree
