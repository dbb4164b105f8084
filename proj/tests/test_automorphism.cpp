#include "doctest.h"
#include "eqtree/error.hpp"
#include "eqtree/generator.hpp"
#include "fixtures.hpp"

using namespace eqtree;
using fixtures::equipped;
using fixtures::tree;

TEST_CASE("automorphism validation") {
  CHECK_NOTHROW(equipped(3, 1, {{0, 1, 1}, {1, 2, 1}}, {2, 1, 0}));
  CHECK_NOTHROW(fixtures::star_rotation());

  try {
    (void)equipped(3, 2, {{0, 1, 1}, {1, 2, 2}}, {2, 1, 0});
    FAIL("expected ColorBroken");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ColorBroken);
    CHECK(std::string(e.what()).find("(2, 1)") != std::string::npos);
  }

  auto kind = [](std::vector<Vertex> perm) {
    try {
      (void)equipped(3, 1, {{0, 1, 1}, {1, 2, 1}}, std::move(perm));
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::ParseError;
  };
  CHECK(kind({1, 0, 2}) == ErrorKind::AdjacencyBroken);
  CHECK(kind({0, 0, 2}) == ErrorKind::NotBijective);
  CHECK(kind({0, 1}) == ErrorKind::NotBijective);
  CHECK(kind({0, 1, 3}) == ErrorKind::NotBijective);
}

TEST_CASE("orbit decomposition") {
  const auto id = compute_orbits(VertexPermutation::identity(5));
  CHECK(id.count() == 5);

  const auto star = compute_orbits(fixtures::star_rotation());
  REQUIRE(star.count() == 2);
  CHECK(std::vector<Vertex>(star.orbit(0).begin(), star.orbit(0).end()) == std::vector<Vertex>{0});
  CHECK(std::vector<Vertex>(star.orbit(1).begin(), star.orbit(1).end()) == std::vector<Vertex>{1, 2, 3});

  const auto swap = compute_orbits(fixtures::path4_swap());
  REQUIRE(swap.count() == 2);
  CHECK(std::vector<Vertex>(swap.orbit(0).begin(), swap.orbit(0).end()) == std::vector<Vertex>{0, 3});
  CHECK(std::vector<Vertex>(swap.orbit(1).begin(), swap.orbit(1).end()) == std::vector<Vertex>{1, 2});
}

TEST_CASE("orbit sizes are the least return times") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto et = gen_equipped({1 + static_cast<std::uint32_t>(seed), 3, 6, seed, 0.3, Mode::Generic});
    const auto o = compute_orbits(et);
    for (Vertex v = 0; v < et.n(); ++v) {
      std::uint32_t r = 1;
      for (Vertex x = et.perm()(v); x != v; x = et.perm()(x)) ++r;
      REQUIRE(o.size(o.orbit_of[v]) == r);
      REQUIRE(o.orbit(o.orbit_of[v])[o.position_of[v]] == v);
      const auto members = o.orbit(o.orbit_of[v]);
      REQUIRE(members[0] == *std::min_element(members.begin(), members.end()));
    }
  }
}

TEST_CASE("edge periods") {
  CHECK(edge_period(fixtures::star_rotation(), 0, 1) == 3);
  CHECK(edge_period(fixtures::path4_swap(), 1, 2) == 1);
  CHECK(edge_period(fixtures::path4_swap(), 0, 1) == 2);
  CHECK_THROWS_AS(edge_period(fixtures::star_rotation(), 1, 2), Error);
}

TEST_CASE("edge period equals the weight of the lower-rank endpoint's orbit") {
  const auto et = expand_quotient(fixtures::weighted_sample());
  const RankInfo r = compute_ranks(et.tree());
  const auto o = compute_orbits(et);
  for (const Edge& e : et.tree().edges()) {
    if (r.rank[e.u] == r.rank[e.v]) continue;
    const Vertex low = r.rank[e.u] < r.rank[e.v] ? e.u : e.v;
    CHECK(edge_period(et, e.u, e.v) == o.size(o.orbit_of[low]));
  }
}

TEST_CASE("structure laws hold on the small examples") {
  const LawReport star = check_structure_laws(fixtures::star_rotation());
  CHECK(star.ok());
  CHECK(star.orbit_pairs_checked == 1);
  CHECK(check_structure_laws(fixtures::path4_swap()).ok());
  CHECK(check_structure_laws(fixtures::sample_identity()).ok());
}

TEST_CASE("structure laws flag a map whose orbit sizes do not divide") {
  // 0 - 1, 0 - 2, 1 - 3, 2 - 4, 2 - 5 with (1 2)(3 4 5): orbit sizes 2 above 3.
  const auto t = tree(6, 1, {{0, 1, 1}, {0, 2, 1}, {1, 3, 1}, {2, 4, 1}, {2, 5, 1}});
  const auto perm = VertexPermutation::from_table({0, 2, 1, 4, 5, 3});
  const LawReport r = check_structure_laws(t, perm);
  CHECK_FALSE(r.ok());
  CHECK(std::any_of(r.violations.begin(), r.violations.end(),
                    [](const LawViolation& v) { return v.kind == LawViolation::Kind::Divisibility; }));
}

TEST_CASE("structure laws flag mixed-rank orbits and color mismatches") {
  const auto path = tree(3, 2, {{0, 1, 1}, {1, 2, 2}});
  const LawReport mixed = check_structure_laws(path, VertexPermutation::from_table({1, 0, 2}));
  CHECK(std::any_of(mixed.violations.begin(), mixed.violations.end(),
                    [](const LawViolation& v) { return v.kind == LawViolation::Kind::MixedRankOrbit; }));
  const LawReport colors = check_structure_laws(path, VertexPermutation::from_table({2, 1, 0}));
  CHECK(std::any_of(colors.violations.begin(), colors.violations.end(),
                    [](const LawViolation& v) { return v.kind == LawViolation::Kind::ColorMismatch; }));
}

TEST_CASE("structure laws hold on generated instances") {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto et = gen_equipped({1 + static_cast<std::uint32_t>(seed % 120), 3, 6, seed, 0.3, Mode::Generic});
    const LawReport r = check_structure_laws(et);
    REQUIRE_MESSAGE(r.ok(), "seed " << seed << ": " << r.violations.front().detail);
  }
}

TEST_CASE("normalization cases") {
  const auto p3 = equipped(3, 1, {{0, 1, 1}, {1, 2, 1}}, {0, 1, 2});
  const NormalForm doubled = normalize(p3);
  CHECK(doubled.tag == CenterCase::CentralDoubled);
  const ColoredTree& d = doubled.tree().tree();
  CHECK(d.n() == 6);
  const RankInfo dr = compute_ranks(d);
  REQUIRE(dr.bicentral());
  CHECK(d.edges()[*dr.central_edge].color == 1);
  CHECK(classify(doubled.tree(), dr) == CenterCase::Fixed);

  const auto p4 = equipped(4, 1, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}}, {0, 1, 2, 3});
  const NormalForm fixed = normalize(p4);
  CHECK(fixed.tag == CenterCase::Fixed);
  CHECK(fixed.tree().tree().edges().size() == 3);
  CHECK(fixed.tree().perm() == p4.perm());

  const NormalForm swapped = normalize(fixtures::path4_swap());
  REQUIRE(swapped.tag == CenterCase::Swapped);
  const RootedHalf& h = swapped.half();
  CHECK(h.original == std::vector<Vertex>{0, 1});
  CHECK(h.root == 1);
  CHECK(h.central_color == 2);
  CHECK(h.half.perm() == VertexPermutation::identity(2));
}

TEST_CASE("joining copies keeps P copy-wise") {
  const auto star = fixtures::star_rotation();
  const auto j = join_copies(star, 0, 1);
  CHECK(j.n() == 8);
  CHECK(j.perm()(5) == 6);
  CHECK(j.tree().edges()[*j.tree().edge_between(0, 4)].color == 1);
}
