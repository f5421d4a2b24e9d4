#include "ising/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "ising/rng.hpp"

using namespace ising;

TEST_CASE("rectangle counts") {
  DiscreteDomain d1 = build_rectangle(1, 1, 1.0);
  CHECK(d1.n_faces() == 1);
  CHECK(d1.n_vertices() == 4);
  CHECK(d1.n_edges() == 4);
  CHECK(d1.boundary_edges().size() == 4);

  DiscreteDomain d2 = build_rectangle(2, 2, 1.0);
  CHECK(d2.n_faces() == 4);
  CHECK(d2.n_vertices() == 9);
  CHECK(d2.n_edges() == 12);

  DiscreteDomain d3 = build_rectangle(3, 2, 0.5);
  // (w+1)(h+1) vertices, w(h+1)+h(w+1) edges
  CHECK(d3.n_faces() == 6);
  CHECK(d3.n_vertices() == 12);
  CHECK(d3.n_edges() == 17);
}

TEST_CASE("rectangle rejects bad arguments") {
  CHECK_THROWS_AS(build_rectangle(0, 3, 1.0), LatticeError);
  CHECK_THROWS_AS(build_rectangle(3, -1, 1.0), LatticeError);
  CHECK_THROWS_AS(build_rectangle(3, 3, 0.0), LatticeError);
}

TEST_CASE("euler relation V - E + F = 1 on assorted domains") {
  auto check_euler = [](const DiscreteDomain& d) {
    CHECK(d.n_vertices() - d.n_edges() + d.n_faces() == 1);
  };
  check_euler(build_rectangle(1, 1, 1.0));
  check_euler(build_rectangle(5, 3, 1.0));
  check_euler(build_rectangle(7, 7, 0.25));
  check_euler(discretize_shape(Shape::disk(0, 0, 3.2), 1.0));
  check_euler(discretize_shape(Shape::ellipse(0, 0, 4.3, 2.6), 1.0));
}

TEST_CASE("disk discretization keeps squares with all corners inside") {
  // Independent oracle: enumerate candidate faces of [-3,3]^2 directly.
  auto inside = [](double x, double y) { return x * x + y * y <= 4.0; };
  std::set<std::pair<int, int>> expect;
  for (int i = -3; i < 3; ++i)
    for (int j = -3; j < 3; ++j) {
      bool ok = true;
      for (int dx = 0; dx <= 1; ++dx)
        for (int dy = 0; dy <= 1; ++dy) ok = ok && inside(i + dx, j + dy);
      if (ok) expect.insert({i, j});
    }
  // Radius 2 admits only the central 2x2 block: any square touching
  // (+-2, +-1) corners fails x^2+y^2 <= 4.
  CHECK(expect.size() == 4);
  DiscreteDomain d = discretize_shape(Shape::disk(0, 0, 2.0), 1.0);
  REQUIRE(d.n_faces() == int(expect.size()));
  for (const Face& f : d.faces()) CHECK(expect.count({f.i, f.j}) == 1);

  // Radius sqrt(5) admits the 12-face plus shape.
  DiscreteDomain dplus =
      discretize_shape(Shape::disk(0, 0, std::sqrt(5.0)), 1.0);
  CHECK(dplus.n_faces() == 12);
  CHECK(dplus.face_index(1, 0) >= 0);   // arm
  CHECK(dplus.face_index(1, 1) < 0);    // corner stays out
  CHECK(dplus.face_index(-2, -1) >= 0);
}

TEST_CASE("rectangle shape tiles exactly") {
  DiscreteDomain a = discretize_shape(Shape::rectangle(0, 0, 3, 2), 1.0);
  DiscreteDomain b = build_rectangle(3, 2, 1.0);
  REQUIRE(a.n_faces() == b.n_faces());
  CHECK(std::equal(a.faces().begin(), a.faces().end(), b.faces().begin(),
                   [](const Face& x, const Face& y) {
                     return x.i == y.i && x.j == y.j;
                   }));
}

TEST_CASE("tiny disk discretization is rejected") {
  CHECK_THROWS_AS(discretize_shape(Shape::disk(0, 0, 0.4), 1.0), LatticeError);
}

TEST_CASE("dual graph counts") {
  CHECK(build_rectangle(1, 1, 1.0).dual().edges.empty());
  DiscreteDomain d2 = build_rectangle(2, 2, 1.0);
  CHECK(d2.dual().edges.size() == 4);
  CHECK(d2.dual_graph_view().n_vertices == 4);
  DiscreteDomain d32 = build_rectangle(3, 2, 1.0);
  CHECK(d32.dual().edges.size() == 7);
  CHECK(d32.dual_graph_view().n_vertices == 6);
}

TEST_CASE("bimedial graph structure") {
  DiscreteDomain d1 = build_rectangle(1, 1, 1.0);
  CHECK(d1.bimedial().vertices.size() == 4);
  CHECK(d1.bimedial().edges.size() == 4);  // a single 4-edge loop
  for (const BimedialEdge& e : d1.bimedial().edges)
    CHECK(e.cross == BimedialCross::none);
  CHECK(d1.bimedial_ring().size() == 4);

  DiscreteDomain d = build_rectangle(3, 2, 1.0);
  CHECK(d.bimedial().vertices.size() == size_t(4 * d.n_faces()));
  for (int v = 0; v < int(d.bimedial().vertices.size()); ++v)
    CHECK(d.bimedial().adj[v].size() <= 4);

  // Each interior primal edge is crossed by exactly two bimedial edges (one
  // on each side at quarter offsets), and likewise each dual edge; every
  // bimedial edge crosses at most one of them.
  std::vector<int> primal_crossings(d.n_edges(), 0);
  std::vector<int> dual_crossings(d.dual().edges.size(), 0);
  for (const BimedialEdge& e : d.bimedial().edges) {
    if (e.cross == BimedialCross::primal) primal_crossings[e.crossed]++;
    if (e.cross == BimedialCross::dual) dual_crossings[e.crossed]++;
  }
  for (int e = 0; e < d.n_edges(); ++e)
    CHECK(primal_crossings[e] == (d.edge_is_interior(e) ? 2 : 0));
  for (int k = 0; k < int(d.dual().edges.size()); ++k)
    CHECK(dual_crossings[k] == 2);
}

TEST_CASE("boundary circuit is a counterclockwise simple cycle") {
  for (auto& d : {build_rectangle(4, 3, 1.0),
                  discretize_shape(Shape::disk(0, 0, 3.7), 1.0)}) {
    const auto& verts = d.boundary_vertices();
    const auto& edges = d.boundary_edges();
    REQUIRE(verts.size() == edges.size());
    std::set<int> unique_v(verts.begin(), verts.end());
    CHECK(unique_v.size() == verts.size());
    std::vector<QPoint> poly;
    for (int v : verts) poly.push_back(d.vertices()[v]);
    CHECK(signed_area2(poly) > 0);
    // consecutive vertices joined by the listed edge
    for (size_t k = 0; k < verts.size(); ++k) {
      auto [a, b] = d.graph().edges[edges[k]];
      int v0 = verts[k], v1 = verts[(k + 1) % verts.size()];
      CHECK(((a == v0 && b == v1) || (a == v1 && b == v0)));
    }
  }
}

TEST_CASE("derivations are deterministic") {
  DiscreteDomain a = discretize_shape(Shape::disk(0.3, -0.2, 4.1), 0.5);
  DiscreteDomain b = discretize_shape(Shape::disk(0.3, -0.2, 4.1), 0.5);
  CHECK(a.n_faces() == b.n_faces());
  CHECK(a.graph().edges == b.graph().edges);
  CHECK(a.boundary_vertices() == b.boundary_vertices());
  CHECK(a.bimedial().vertices.size() == b.bimedial().vertices.size());
  for (size_t k = 0; k < a.bimedial().vertices.size(); ++k)
    CHECK(a.bimedial().vertices[k] == b.bimedial().vertices[k]);
}

TEST_CASE("refined discretization stays Hausdorff-close for convex shapes") {
  Shape s = Shape::disk(0.15, 0.1, 3.0);
  for (double mesh : {1.0, 0.5}) {
    DiscreteDomain coarse = discretize_shape(s, mesh);
    DiscreteDomain fine = discretize_shape(s, mesh / 2);
    auto circuit_points = [](const DiscreteDomain& d) {
      std::vector<std::pair<double, double>> pts;
      for (int v : d.boundary_vertices()) {
        QPoint p = d.vertices()[v];
        pts.push_back({p.x * d.mesh() / 4, p.y * d.mesh() / 4});
      }
      return pts;
    };
    auto pa = circuit_points(coarse), pb = circuit_points(fine);
    double hausdorff = 0;
    auto one_sided = [](const auto& from, const auto& to) {
      double worst = 0;
      for (auto& p : from) {
        double best = 1e300;
        for (auto& q : to) {
          double dx = p.first - q.first, dy = p.second - q.second;
          best = std::min(best, std::sqrt(dx * dx + dy * dy));
        }
        worst = std::max(worst, best);
      }
      return worst;
    };
    hausdorff = std::max(one_sided(pa, pb), one_sided(pb, pa));
    CHECK(hausdorff <= 2 * mesh + 1e-12);
  }
}

TEST_CASE("shape spec parsing") {
  Shape r = parse_shape("rect:8x8");
  CHECK(r.kind == Shape::Kind::rectangle);
  CHECK(r.p[2] == 8.0);
  Shape dk = parse_shape("disk:0,0,2.5");
  CHECK(dk.kind == Shape::Kind::disk);
  CHECK_THROWS_AS(parse_shape("blob:1,2"), LatticeError);
}
