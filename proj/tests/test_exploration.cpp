#include "ising/exploration.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"

using namespace ising;

namespace {

std::multiset<std::vector<int>> edge_sets(const std::vector<Loop>& loops,
                                          double min_diam = 0.0) {
  std::multiset<std::vector<int>> out;
  for (const Loop& l : loops)
    if (l.diameter >= min_diam) out.insert(l.edge_set);
  return out;
}

// Reference set for the harvest: leftmost level-1 loops by direct
// classification.
std::vector<Loop> direct_level1(const SpinConfiguration& config) {
  LoopCollection all = classify_ising_levels(
      extract_ising_loops(config, Chirality::leftmost), config);
  std::vector<Loop> out;
  for (Loop& l : all.loops)
    if (l.level == 1) out.push_back(l);
  return out;
}

int ring_vertex(const DiscreteDomain& d, QPoint q) {
  int v = d.bimedial().vertex_at(q);
  REQUIRE(v >= 0);
  return v;
}

}  // namespace

TEST_CASE("harvest: all plus terminates with nothing") {
  DiscreteDomain d = build_rectangle(8, 8, 1.0);
  SpinConfiguration c = SpinConfiguration::all_plus(d, SpinBc::plus);
  Rng rng(5);
  ExplorationTrace t =
      harvest_outermost(c, FKParams::self_dual(), 2.0, rng);
  CHECK(t.harvested.empty());
  CHECK(!t.iterations.empty());
}

TEST_CASE("harvest rejects bad inputs") {
  DiscreteDomain d = build_rectangle(4, 4, 1.0);
  SpinConfiguration c = SpinConfiguration::all_plus(d, SpinBc::free_bc);
  Rng rng(5);
  CHECK_THROWS_AS(harvest_outermost(c, FKParams::self_dual(), 2.0, rng),
                  ModelError);
  SpinConfiguration cp = SpinConfiguration::all_plus(d, SpinBc::plus);
  CHECK_THROWS_AS(harvest_outermost(cp, FKParams::self_dual(), 0.5, rng),
                  ModelError);
}

TEST_CASE("harvest: single center minus found for every seed") {
  DiscreteDomain d = build_rectangle(3, 3, 1.0);
  SpinConfiguration c = SpinConfiguration::all_plus(d, SpinBc::plus);
  c.spins[d.vertex_index(QPoint{4, 4})] = -1;
  std::vector<Loop> expect = direct_level1(c);
  REQUIRE(expect.size() == 1);
  for (uint64_t seed = 0; seed < 25; ++seed) {
    Rng rng(seed);
    ExplorationTrace t =
        harvest_outermost(c, FKParams::self_dual(), 2.0, rng);
    REQUIRE(t.harvested.size() == 1);
    CHECK(t.harvested[0].loop.edge_set == expect[0].edge_set);
  }
}

TEST_CASE("harvest equals the direct level-1 set on seeded samples") {
  for (int size : {8, 16}) {
    DiscreteDomain d = build_rectangle(size, size, 1.0);
    double epsilon = 3.0;
    Rng sample_rng(1000 + size);
    for (int trial = 0; trial < 20; ++trial) {
      SpinConfiguration c =
          sample_ising(d, SpinBc::plus, IsingParams::critical(), 40,
                       sample_rng);
      std::vector<Loop> expect = direct_level1(c);
      Rng rng(sample_rng.next_u64());
      ExplorationTrace t =
          harvest_outermost(c, FKParams::self_dual(), epsilon, rng);
      // exact equality above the stopping diameter
      std::vector<Loop> harvested;
      for (const auto& h : t.harvested) harvested.push_back(h.loop);
      CHECK(edge_sets(harvested, epsilon) == edge_sets(expect, epsilon));
      // soundness below it: everything harvested is a level-1 loop
      auto expect_all = edge_sets(expect);
      for (const Loop& l : harvested)
        CHECK(expect_all.count(l.edge_set) == 1);
    }
  }
}

TEST_CASE("harvest trace invariants") {
  DiscreteDomain d = build_rectangle(12, 12, 1.0);
  Rng sample_rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    SpinConfiguration c =
        sample_ising(d, SpinBc::plus, IsingParams::critical(), 40, sample_rng);
    Rng rng(sample_rng.next_u64());
    double epsilon = 2.5;
    ExplorationTrace t =
        harvest_outermost(c, FKParams::self_dual(), epsilon, rng);

    // harvested loops pairwise edge-disjoint
    std::set<int> used;
    for (const auto& h : t.harvested)
      for (int e : h.loop.edge_set) {
        CHECK(!used.count(e));
        used.insert(e);
      }

    // residual regions strictly shrink by at least one mesh unit, and every
    // kept residual has diameter >= epsilon
    for (const auto& iter : t.iterations) {
      for (const auto& r : iter.residual) {
        CHECK(r.diameter <= iter.region.diameter - d.mesh() + 1e-9);
        CHECK(r.diameter >= epsilon);
      }
      for (const auto& r : iter.discarded) CHECK(r.diameter < epsilon);
    }

    // harvest-time separation: a loop harvested later never crosses into an
    // earlier loop's interior, and later iterations' regions exclude the
    // interiors of everything harvested earlier
    for (const auto& h1 : t.harvested)
      for (const auto& h2 : t.harvested) {
        if (h1.harvest_time >= h2.harvest_time) continue;
        for (int v : h2.loop.minus_side)
          CHECK(!winding_odd(h1.loop.points, d.vertices()[v]));
      }
  }
}

TEST_CASE("harvest is deterministic given the seed") {
  DiscreteDomain d = build_rectangle(10, 10, 1.0);
  Rng sample_rng(31415);
  SpinConfiguration c =
      sample_ising(d, SpinBc::plus, IsingParams::critical(), 40, sample_rng);
  Rng r1(999), r2(999);
  ExplorationTrace t1 = harvest_outermost(c, FKParams::self_dual(), 2.0, r1);
  ExplorationTrace t2 = harvest_outermost(c, FKParams::self_dual(), 2.0, r2);
  REQUIRE(t1.iterations.size() == t2.iterations.size());
  REQUIRE(t1.harvested.size() == t2.harvested.size());
  for (size_t k = 0; k < t1.harvested.size(); ++k) {
    CHECK(t1.harvested[k].loop.edge_set == t2.harvested[k].loop.edge_set);
    CHECK(t1.harvested[k].harvest_time == t2.harvested[k].harvest_time);
  }
}

TEST_CASE("exploration path on the 2x2 worked cases") {
  DiscreteDomain d = build_rectangle(2, 2, 1.0);
  int a = ring_vertex(d, {1, 1});
  int b = ring_vertex(d, {7, 7});
  std::vector<int> expect;
  for (QPoint q : std::vector<QPoint>{{1, 1}, {1, 3}, {1, 5}, {1, 7},
                                      {3, 7}, {5, 7}, {7, 7}})
    expect.push_back(ring_vertex(d, q));

  SUBCASE("all interior open: slides along the boundary") {
    FKConfiguration c{&d.graph(), &d, std::vector<char>(d.n_edges(), 1),
                      FKBc::wired};
    ExplorationPath p = fk_exploration_path(c, a, b);
    CHECK(p.vertices == expect);
    // mixed step kinds: boundary slides across open primal corridors
    int boundary_steps = 0;
    for (StepSide s : p.sides) boundary_steps += s == StepSide::boundary;
    CHECK(boundary_steps > 0);
  }
  SUBCASE("all interior closed: traces the boundary interface") {
    FKConfiguration c{&d.graph(), &d, std::vector<char>(d.n_edges(), 1),
                      FKBc::wired};
    for (int e = 0; e < d.n_edges(); ++e)
      if (d.edge_is_interior(e)) c.open_edges[e] = 0;
    ExplorationPath p = fk_exploration_path(c, a, b);
    CHECK(p.vertices == expect);
    for (StepSide s : p.sides) CHECK(s == StepSide::interface);
  }
  SUBCASE("equal endpoints rejected") {
    FKConfiguration c{&d.graph(), &d, std::vector<char>(d.n_edges(), 1),
                      FKBc::wired};
    CHECK_THROWS_AS(fk_exploration_path(c, a, a), ModelError);
  }
}

TEST_CASE("exploration path invariants on random samples") {
  DiscreteDomain d = build_rectangle(6, 6, 1.0);
  const auto& ring = d.bimedial_ring();
  Rng rng(4242);
  for (int trial = 0; trial < 400; ++trial) {
    FKConfiguration c =
        sample_fk(d, FKBc::wired, FKParams::self_dual(), 2 + trial % 4, rng);
    int a = ring[rng.next_below(ring.size())];
    int b = ring[rng.next_below(ring.size())];
    if (a == b) continue;
    ExplorationPath p = fk_exploration_path(c, a, b);
    REQUIRE(p.vertices.front() == a);
    REQUIRE(p.vertices.back() == b);
    std::set<int> seen(p.vertices.begin(), p.vertices.end());
    CHECK(seen.size() == p.vertices.size());  // simple path
    CHECK(p.sides.size() + 1 == p.vertices.size());
    // steps are lattice steps
    for (size_t k = 0; k + 1 < p.vertices.size(); ++k)
      CHECK(qdist2_int(d.bimedial().vertices[p.vertices[k]],
                       d.bimedial().vertices[p.vertices[k + 1]]) == 4);
  }
}

TEST_CASE("special points: pure boundary walks have none") {
  DiscreteDomain d = build_rectangle(2, 2, 1.0);
  FKConfiguration c{&d.graph(), &d, std::vector<char>(d.n_edges(), 1),
                    FKBc::wired};
  int a = ring_vertex(d, {1, 1});
  int b = ring_vertex(d, {7, 7});
  ExplorationPath p = fk_exploration_path(c, a, b);
  SpecialPointSet sp = special_points(p, c, a, b);
  CHECK(sp.points.empty());
}

TEST_CASE("special points: winding and laminarity on random samples") {
  DiscreteDomain d = build_rectangle(8, 8, 1.0);
  const auto& ring = d.bimedial_ring();
  Rng rng(5150);
  int double_points_seen = 0, boundary_points_seen = 0;
  for (int trial = 0; trial < 300; ++trial) {
    FKConfiguration c =
        sample_fk(d, FKBc::wired, FKParams::self_dual(), 2 + trial % 3, rng);
    int a = ring[rng.next_below(ring.size())];
    int b = ring[rng.next_below(ring.size())];
    if (a == b) continue;
    ExplorationPath p = fk_exploration_path(c, a, b);
    SpecialPointSet sp = special_points(p, c, a, b);
    for (const SpecialPoint& x : sp.points) {
      if (x.boundary) {
        boundary_points_seen++;
        continue;
      }
      double_points_seen++;
      // clockwise winding of the pinched subpath
      std::vector<QPoint> poly;
      for (int t = x.partner; t <= x.time; ++t)
        poly.push_back(d.bimedial().vertices[p.vertices[t]]);
      CHECK(signed_area2(poly) < 0);
      // the pinch is one bi-medial step wide
      CHECK(qdist2_int(d.bimedial().vertices[p.vertices[x.partner]],
                       d.bimedial().vertices[p.vertices[x.time]]) == 4);
    }
    // K-laminarity: intervals overlap only by nesting
    for (const SpecialPoint& x : sp.points)
      for (const SpecialPoint& y : sp.points) {
        auto kx = subpath_interval(x), ky = subpath_interval(y);
        bool disjoint = kx.second < ky.first || ky.second < kx.first;
        bool nested = (kx.first <= ky.first && ky.second <= kx.second) ||
                      (ky.first <= kx.first && kx.second <= ky.second);
        CHECK((disjoint || nested));
      }
  }
  // the random ensemble genuinely exercises both kinds
  CHECK(double_points_seen > 50);
  CHECK(boundary_points_seen > 50);
}

TEST_CASE("pinching family: short path collapses to the endpoint") {
  DiscreteDomain d = build_rectangle(2, 2, 1.0);
  FKConfiguration c{&d.graph(), &d, std::vector<char>(d.n_edges(), 1),
                    FKBc::wired};
  int a = ring_vertex(d, {1, 1});
  int b = ring_vertex(d, {3, 1});
  ExplorationPath p = fk_exploration_path(c, a, b);
  SpecialPointSet sp = special_points(p, c, a, b);
  PinchingFamily fam = pinching_family(p, sp, 9.0, c);
  REQUIRE(fam.points.size() == 1);
  CHECK(fam.points[0].boundary);
  CHECK(fam.points[0].time == int(p.vertices.size()) - 1);
  // the single cell is the whole path
  REQUIRE(fam.cells.size() == 1);
  CHECK(fam.cells[0].size() == p.vertices.size() - 1);
}

TEST_CASE("pinching family: cells partition the path's steps") {
  DiscreteDomain d = build_rectangle(10, 10, 1.0);
  const auto& ring = d.bimedial_ring();
  Rng rng(31337);
  for (int trial = 0; trial < 60; ++trial) {
    FKConfiguration c =
        sample_fk(d, FKBc::wired, FKParams::self_dual(), 3, rng);
    int a = ring[rng.next_below(ring.size())];
    int b = ring[rng.next_below(ring.size())];
    if (a == b) continue;
    ExplorationPath p = fk_exploration_path(c, a, b);
    SpecialPointSet sp = special_points(p, c, a, b);
    PinchingFamily fam = pinching_family(p, sp, 4.5, c);
    std::vector<int> seen(p.vertices.size() - 1, 0);
    for (const auto& cell : fam.cells)
      for (int s : cell) seen[s]++;
    for (int cnt : seen) CHECK(cnt == 1);
  }
  CHECK_THROWS_AS(
      pinching_family(ExplorationPath{}, SpecialPointSet{}, 3.0,
                      FKConfiguration{&d.graph(), &d, {}, FKBc::wired}),
      ModelError);
}

TEST_CASE("explore_all on the 2x2 worked cases") {
  DiscreteDomain d = build_rectangle(2, 2, 1.0);
  SUBCASE("all interior closed: the single outermost loop, edge-identical") {
    FKConfiguration c{&d.graph(), &d, std::vector<char>(d.n_edges(), 1),
                      FKBc::wired};
    for (int e = 0; e < d.n_edges(); ++e)
      if (d.edge_is_interior(e)) c.open_edges[e] = 0;
    LoopCollection found = explore_all_fk_level1(c, 1.5);
    LoopCollection direct = classify_fk_levels(extract_fk_loops(c));
    std::vector<Loop> direct1;
    for (Loop& l : direct.loops)
      if (l.level == 1) direct1.push_back(l);
    REQUIRE(direct1.size() == 1);
    auto found_big = edge_sets(found.loops, 1.5);
    REQUIRE(found_big.size() == 1);
    CHECK(*found_big.begin() == direct1[0].edge_set);
  }
  SUBCASE("all interior open: nothing of macroscopic diameter") {
    FKConfiguration c{&d.graph(), &d, std::vector<char>(d.n_edges(), 1),
                      FKBc::wired};
    LoopCollection found = explore_all_fk_level1(c, 1.5);
    CHECK(edge_sets(found.loops, 1.5).empty());
  }
}

TEST_CASE("explore_all equals the direct level-1 set on seeded samples") {
  for (int size : {6, 10}) {
    DiscreteDomain d = build_rectangle(size, size, 1.0);
    double epsilon = 2.5;
    Rng rng(808 + size);
    for (int trial = 0; trial < 25; ++trial) {
      FKConfiguration c =
          sample_fk(d, FKBc::wired, FKParams::self_dual(), 5, rng);
      LoopCollection found = explore_all_fk_level1(c, epsilon);
      LoopCollection direct = classify_fk_levels(extract_fk_loops(c));
      std::vector<Loop> direct1;
      for (Loop& l : direct.loops)
        if (l.level == 1) direct1.push_back(l);
      CHECK(edge_sets(found.loops, epsilon) == edge_sets(direct1, epsilon));
      // everything found is a genuine level-1 loop
      auto all1 = edge_sets(direct1);
      for (const Loop& l : found.loops) CHECK(all1.count(l.edge_set) == 1);
    }
  }
}

TEST_CASE("dobrushin interface on the 2x2 worked cases") {
  DiscreteDomain d = build_rectangle(2, 2, 1.0);
  // free arc = the boundary edge from (0,0) to (1,0); circuit position 0 is
  // located by searching the boundary edge list
  int free_pos = -1;
  for (size_t k = 0; k < d.boundary_edges().size(); ++k) {
    int e = d.boundary_edges()[k];
    auto [x, y] = d.graph().edges[e];
    QPoint px = d.vertices()[x], py = d.vertices()[y];
    if ((px == QPoint{0, 0} && py == QPoint{4, 0}) ||
        (px == QPoint{4, 0} && py == QPoint{0, 0}))
      free_pos = int(k);
  }
  REQUIRE(free_pos >= 0);
  int n = int(d.boundary_edges().size());
  std::pair<int, int> free_arc{free_pos, (free_pos + 1) % n};
  std::pair<int, int> wired_arc{(free_pos + 1) % n, free_pos};

  SUBCASE("all open: hugs the free arc") {
    std::vector<char> open(d.n_edges(), 1);
    auto path = dobrushin_interface(d, wired_arc, free_arc, open);
    std::vector<int> expect;
    for (QPoint q : std::vector<QPoint>{{1, 1}, {1, 3}, {3, 3}, {3, 1}})
      expect.push_back(ring_vertex(d, q));
    CHECK(path == expect);
  }
  SUBCASE("all closed: hugs the wired arc") {
    std::vector<char> open(d.n_edges(), 0);
    auto path = dobrushin_interface(d, wired_arc, free_arc, open);
    REQUIRE(path.size() == 12);
    CHECK(path.front() == ring_vertex(d, {1, 1}));
    CHECK(path.back() == ring_vertex(d, {3, 1}));
    // every vertex lies on the boundary ring
    std::set<int> ring_set(d.bimedial_ring().begin(), d.bimedial_ring().end());
    for (int v : path) CHECK(ring_set.count(v) == 1);
  }
  SUBCASE("degenerate arcs rejected") {
    std::vector<char> open(d.n_edges(), 1);
    CHECK_THROWS_AS(
        dobrushin_interface(d, {0, 0}, {0, 0}, open), ModelError);
  }
}

TEST_CASE("dobrushin endpoints are the arc junctions on random samples") {
  DiscreteDomain d = build_rectangle(4, 4, 1.0);
  int n = int(d.boundary_edges().size());
  Rng rng(616);
  for (int trial = 0; trial < 300; ++trial) {
    FKConfiguration c =
        sample_fk(d, FKBc::wired, FKParams::self_dual(), 2, rng);
    int start = int(rng.next_below(n));
    int len = 1 + int(rng.next_below(n - 1));
    std::pair<int, int> free_arc{start, (start + len) % n};
    std::pair<int, int> wired_arc{(start + len) % n, start};
    auto path =
        dobrushin_interface(d, wired_arc, free_arc, c.open_edges);
    CHECK(path.size() >= 2);
    std::set<int> seen(path.begin(), path.end());
    CHECK(seen.size() == path.size());
  }
}
