#include "doctest.h"
#include "eqtree/error.hpp"
#include "eqtree/generator.hpp"
#include "fixtures.hpp"

using namespace eqtree;
using fixtures::tree;

namespace {

ErrorKind kind_of(TreeInput in) {
  try {
    (void)validate_tree(std::move(in));
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::ParseError;
}

}  // namespace

TEST_CASE("path of three vertices is a valid tree") {
  const auto t = tree(3, 1, {{0, 1, 1}, {1, 2, 1}});
  CHECK(t.n() == 3);
  CHECK(t.degree(1) == 2);
  CHECK(t.edge_between(2, 1) == 1u);
  CHECK_FALSE(t.edge_between(0, 2).has_value());
}

TEST_CASE("tree law violations") {
  CHECK(kind_of({3, 1, Mode::Generic, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}}) == ErrorKind::WrongEdgeCount);
  CHECK(kind_of({3, 1, Mode::Generic, {{0, 1, 1}}}) == ErrorKind::WrongEdgeCount);
  CHECK(kind_of({3, 1, Mode::Generic, {{0, 3, 1}, {1, 2, 1}}}) == ErrorKind::VertexOutOfRange);
  CHECK(kind_of({3, 1, Mode::Generic, {{1, 1, 1}, {1, 2, 1}}}) == ErrorKind::NotSimple);
  CHECK(kind_of({3, 1, Mode::Generic, {{0, 1, 1}, {1, 0, 1}}}) == ErrorKind::NotSimple);
  CHECK(kind_of({3, 1, Mode::Generic, {{0, 1, 2}, {1, 2, 1}}}) == ErrorKind::ColorOutOfRange);
  CHECK(kind_of({3, 1, Mode::Generic, {{0, 1, 0}, {1, 2, 1}}}) == ErrorKind::ColorOutOfRange);
  CHECK(kind_of({4, 1, Mode::Generic, {{0, 1, 1}, {2, 3, 1}, {3, 2, 1}}}) == ErrorKind::NotSimple);
  CHECK(kind_of({4, 1, Mode::Generic, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}}}) == ErrorKind::Disconnected);
  CHECK(kind_of({3, 3, Mode::MorseSmale, {{0, 1, 1}, {1, 2, 1}}}) == ErrorKind::ColorOutOfRange);
  CHECK(kind_of({0, 1, Mode::Generic, {}}) == ErrorKind::WrongEdgeCount);
}

TEST_CASE("error messages name the offending edge") {
  try {
    (void)validate_tree({3, 1, Mode::Generic, {{0, 1, 1}, {1, 2, 5}}});
    FAIL("expected ColorOutOfRange");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("edges[1]") != std::string::npos);
  }
}

TEST_CASE("eight-vertex sample tree has centers A, B") {
  const auto t = tree(8, 3, fixtures::sample_edges());
  const RankInfo r = compute_ranks(t);
  CHECK(r.centers == std::vector<Vertex>{0, 1});
  REQUIRE(r.central_edge.has_value());
  CHECK(*r.central_edge == 0u);
  for (Vertex leaf : {5u, 6u, 7u}) CHECK(r.rank[leaf] == 0);
  CHECK(r.rank[2] == 1);
  CHECK(r.rank[3] == 1);
  CHECK(r.rank[4] == 1);
}

TEST_CASE("ranks of short paths") {
  const RankInfo p3 = compute_ranks(tree(3, 1, {{0, 1, 1}, {1, 2, 1}}));
  CHECK(p3.rank == std::vector<std::uint32_t>{0, 1, 0});
  CHECK(p3.centers == std::vector<Vertex>{1});
  CHECK_FALSE(p3.bicentral());

  const RankInfo p4 = compute_ranks(tree(4, 1, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}}));
  CHECK(p4.rank == std::vector<std::uint32_t>{0, 1, 1, 0});
  CHECK(p4.centers == std::vector<Vertex>{1, 2});
  CHECK(p4.bicentral());
  CHECK(*p4.central_edge == 1u);

  const RankInfo single = compute_ranks(tree(1, 1, {}));
  CHECK(single.centers == std::vector<Vertex>{0});
  CHECK(single.max_rank() == 0);

  const RankInfo pair = compute_ranks(tree(2, 1, {{1, 0, 1}}));
  CHECK(pair.centers == std::vector<Vertex>{0, 1});
  CHECK(pair.rank == std::vector<std::uint32_t>{0, 0});
}

TEST_CASE("strip sequence partitions the vertices and ends with the centers") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto et = gen_equipped({1 + static_cast<std::uint32_t>(seed % 60), 3, 4, seed, 0.3, Mode::Generic});
    const RankInfo r = compute_ranks(et.tree());
    std::vector<int> hits(et.n(), 0);
    for (std::uint32_t level = 0; level < r.strip_sequence.size(); ++level) {
      CHECK(std::is_sorted(r.strip_sequence[level].begin(), r.strip_sequence[level].end()));
      for (Vertex v : r.strip_sequence[level]) {
        ++hits[v];
        CHECK(r.rank[v] == level);
      }
    }
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    CHECK(r.strip_sequence.back() == r.centers);
    CHECK(r.centers.size() <= 2);
    if (r.bicentral()) CHECK(et.tree().edge_between(r.centers[0], r.centers[1]).has_value());
  }
}

TEST_CASE("ranks are invariant under the automorphism") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto et = gen_equipped({2 + static_cast<std::uint32_t>(seed % 80), 2, 4, seed, 0.3, Mode::Generic});
    const RankInfo r = compute_ranks(et.tree());
    for (Vertex v = 0; v < et.n(); ++v) REQUIRE(r.rank[et.perm()(v)] == r.rank[v]);
  }
}

TEST_CASE("breadth-first layout is consistent") {
  const auto et = gen_equipped({300, 3, 4, 11, 0.0, Mode::Generic});
  const ColoredTree& t = et.tree();
  const auto order = t.bfs_order();
  const auto pos = t.bfs_position();
  const auto parent = t.bfs_parent();
  CHECK(order[0] == 0);
  for (std::uint32_t i = 0; i < t.n(); ++i) CHECK(pos[order[i]] == i);
  for (std::uint32_t i = 1; i < t.n(); ++i) {
    CHECK(parent[i] < i);
    if (i > 1) CHECK(parent[i] >= parent[i - 1]);
    const auto e = t.edge_between(order[i], order[parent[i]]);
    REQUIRE(e.has_value());
    CHECK(t.edges()[*e].color == t.bfs_parent_color()[i]);
  }
}
