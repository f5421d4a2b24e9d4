#include "ising/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <set>

namespace ising {

namespace {

int64_t face_key(int32_t i, int32_t j) {
  return (int64_t(i) << 32) ^ uint32_t(j);
}

std::string format_mesh(double mesh) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", mesh);
  return buf;
}

int32_t floor_div4(int32_t a) {
  return a >= 0 ? a / 4 : -((-a + 3) / 4);
}

}  // namespace

Graph make_path_graph(int n_vertices) {
  Graph g;
  g.n_vertices = n_vertices;
  for (int i = 0; i + 1 < n_vertices; ++i) g.edges.push_back({i, i + 1});
  g.is_boundary_vertex.assign(n_vertices, 0);
  if (n_vertices > 0) {
    g.is_boundary_vertex.front() = 1;
    g.is_boundary_vertex.back() = 1;
  }
  g.build_adjacency();
  return g;
}

DiscreteDomain::DiscreteDomain(std::vector<Face> faces, double mesh,
                               std::string mesh_text)
    : faces_(std::move(faces)),
      mesh_(mesh),
      mesh_text_(mesh_text.empty() ? format_mesh(mesh) : std::move(mesh_text)) {
  if (mesh_ <= 0) throw LatticeError("mesh must be positive");
  if (faces_.empty()) throw LatticeError("domain has no faces");
  std::sort(faces_.begin(), faces_.end());
  faces_.erase(std::unique(faces_.begin(), faces_.end()), faces_.end());
  for (int k = 0; k < int(faces_.size()); ++k)
    face_index_[face_key(faces_[k].i, faces_[k].j)] = k;
  validate();
  build_edges_and_vertices();
  build_boundary_circuit();
  build_dual();
  build_bimedial();
}

int DiscreteDomain::face_index(int32_t i, int32_t j) const {
  auto it = face_index_.find(face_key(i, j));
  return it == face_index_.end() ? -1 : it->second;
}

int DiscreteDomain::vertex_index(const QPoint& p) const {
  auto it = vertex_index_.find(p);
  return it == vertex_index_.end() ? -1 : it->second;
}

void DiscreteDomain::validate() const {
  // Face-adjacency connectivity.
  std::vector<char> seen(faces_.size(), 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  size_t reached = 1;
  while (!queue.empty()) {
    int f = queue.front();
    queue.pop_front();
    const Face& c = faces_[f];
    const int32_t di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
    for (int d = 0; d < 4; ++d) {
      int g = face_index(c.i + di[d], c.j + dj[d]);
      if (g >= 0 && !seen[g]) {
        seen[g] = 1;
        reached++;
        queue.push_back(g);
      }
    }
  }
  if (reached != faces_.size())
    throw LatticeError("domain faces are not connected");

  // Simple connectivity: the complement of the face set (within a bounding
  // box padded by one cell) must all be reachable from outside.
  int32_t i0 = faces_.front().i, i1 = i0, j0 = faces_.front().j, j1 = j0;
  for (const Face& f : faces_) {
    i0 = std::min(i0, f.i);
    i1 = std::max(i1, f.i);
    j0 = std::min(j0, f.j);
    j1 = std::max(j1, f.j);
  }
  i0 -= 1; j0 -= 1; i1 += 1; j1 += 1;
  int w = i1 - i0 + 1, h = j1 - j0 + 1;
  auto cell = [&](int32_t i, int32_t j) { return (j - j0) * w + (i - i0); };
  std::vector<char> mark(size_t(w) * h, 0);
  std::deque<std::pair<int32_t, int32_t>> bfs{{i0, j0}};
  mark[cell(i0, j0)] = 1;
  size_t outside = 1;
  while (!bfs.empty()) {
    auto [ci, cj] = bfs.front();
    bfs.pop_front();
    const int32_t di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
    for (int d = 0; d < 4; ++d) {
      int32_t ni = ci + di[d], nj = cj + dj[d];
      if (ni < i0 || ni > i1 || nj < j0 || nj > j1) continue;
      if (mark[cell(ni, nj)] || face_index(ni, nj) >= 0) continue;
      mark[cell(ni, nj)] = 1;
      outside++;
      bfs.push_back({ni, nj});
    }
  }
  if (outside + faces_.size() != size_t(w) * h)
    throw LatticeError("domain is not simply connected");
}

void DiscreteDomain::build_edges_and_vertices() {
  std::set<QPoint> vset;
  for (const Face& f : faces_) {
    for (int dx = 0; dx <= 1; ++dx)
      for (int dy = 0; dy <= 1; ++dy)
        vset.insert(QPoint{4 * (f.i + dx), 4 * (f.j + dy)});
  }
  vertices_.assign(vset.begin(), vset.end());
  for (int k = 0; k < int(vertices_.size()); ++k)
    vertex_index_[vertices_[k]] = k;

  std::set<std::pair<int, int>> eset;
  for (const Face& f : faces_) {
    QPoint c00{4 * f.i, 4 * f.j}, c10{4 * (f.i + 1), 4 * f.j};
    QPoint c01{4 * f.i, 4 * (f.j + 1)}, c11{4 * (f.i + 1), 4 * (f.j + 1)};
    auto add = [&](QPoint a, QPoint b) {
      int va = vertex_index(a), vb = vertex_index(b);
      eset.insert({std::min(va, vb), std::max(va, vb)});
    };
    add(c00, c10);
    add(c00, c01);
    add(c10, c11);
    add(c01, c11);
  }
  graph_.n_vertices = int(vertices_.size());
  graph_.edges.assign(eset.begin(), eset.end());
  graph_.build_adjacency();

  edge_interior_.assign(graph_.edges.size(), 0);
  edge_boundary_.assign(graph_.edges.size(), 0);
  edge_faces_.assign(graph_.edges.size(), {-1, -1});
  for (int e = 0; e < int(graph_.edges.size()); ++e) {
    QPoint a = vertices_[graph_.edges[e].first];
    QPoint b = vertices_[graph_.edges[e].second];
    int fa, fb;
    if (a.y == b.y) {  // horizontal edge: faces above / below
      int32_t i = floor_div4(std::min(a.x, b.x)), j = floor_div4(a.y);
      fa = face_index(i, j);
      fb = face_index(i, j - 1);
    } else {  // vertical edge: faces right / left
      int32_t i = floor_div4(a.x), j = floor_div4(std::min(a.y, b.y));
      fa = face_index(i, j);
      fb = face_index(i - 1, j);
    }
    edge_faces_[e] = {fa, fb};
    int count = (fa >= 0) + (fb >= 0);
    edge_interior_[e] = count == 2;
    edge_boundary_[e] = count == 1;
  }
}

QPoint DiscreteDomain::edge_midpoint(int e) const {
  QPoint a = vertices_[graph_.edges[e].first];
  QPoint b = vertices_[graph_.edges[e].second];
  return {(a.x + b.x) / 2, (a.y + b.y) / 2};
}

void DiscreteDomain::build_boundary_circuit() {
  graph_.is_boundary_vertex.assign(graph_.n_vertices, 0);
  std::vector<std::vector<int>> bnd_adj(graph_.n_vertices);
  int first_edge = -1;
  for (int e = 0; e < int(graph_.edges.size()); ++e) {
    if (!edge_boundary_[e]) continue;
    auto [a, b] = graph_.edges[e];
    bnd_adj[a].push_back(e);
    bnd_adj[b].push_back(e);
    graph_.is_boundary_vertex[a] = 1;
    graph_.is_boundary_vertex[b] = 1;
    if (first_edge < 0) first_edge = e;
  }
  for (int v = 0; v < graph_.n_vertices; ++v) {
    if (!bnd_adj[v].empty() && bnd_adj[v].size() != 2)
      throw LatticeError("boundary circuit is not a simple cycle");
  }
  int v0 = graph_.edges[first_edge].first;
  int v = v0, e = first_edge;
  do {
    bnd_vertices_.push_back(v);
    bnd_edges_.push_back(e);
    int next = graph_.edges[e].first == v ? graph_.edges[e].second
                                          : graph_.edges[e].first;
    int e2 = bnd_adj[next][0] == e ? bnd_adj[next][1] : bnd_adj[next][0];
    v = next;
    e = e2;
  } while (v != v0);
  size_t n_bnd_edges = 0;
  for (char c : edge_boundary_) n_bnd_edges += c;
  if (bnd_vertices_.size() != n_bnd_edges)
    throw LatticeError("boundary circuit does not close over all edges");
  graph_.is_circuit_edge.assign(edge_boundary_.begin(), edge_boundary_.end());
  std::vector<QPoint> poly;
  poly.reserve(bnd_vertices_.size());
  for (int vi : bnd_vertices_) poly.push_back(vertices_[vi]);
  if (signed_area2(poly) < 0) {
    // reverse to counterclockwise; keep vertex k -> vertex k+1 via edge k
    std::reverse(bnd_vertices_.begin(), bnd_vertices_.end());
    std::reverse(bnd_edges_.begin(), bnd_edges_.end());
    std::rotate(bnd_edges_.begin(), bnd_edges_.end() - 1, bnd_edges_.end());
  }
}

void DiscreteDomain::build_dual() {
  dual_.dual_edge_of_primal.assign(graph_.edges.size(), -1);
  for (int e = 0; e < int(graph_.edges.size()); ++e) {
    if (!edge_interior_[e]) continue;
    auto [fa, fb] = edge_faces_[e];
    dual_.dual_edge_of_primal[e] = int(dual_.edges.size());
    dual_.edges.push_back({std::min(fa, fb), std::max(fa, fb)});
    dual_.primal_edge.push_back(e);
  }
  dual_graph_view_.n_vertices = int(faces_.size());
  dual_graph_view_.edges = dual_.edges;
  dual_graph_view_.is_boundary_vertex.assign(faces_.size(), 0);
  dual_graph_view_.build_adjacency();
}

void DiscreteDomain::build_bimedial() {
  for (const Face& f : faces_) {
    for (int dy = 0; dy <= 1; ++dy)
      for (int dx = 0; dx <= 1; ++dx) {
        QPoint p{4 * f.i + 1 + 2 * dx, 4 * f.j + 1 + 2 * dy};
        bimedial_.index.emplace(p, 0);
      }
  }
  bimedial_.vertices.clear();
  for (auto& [p, idx] : bimedial_.index) bimedial_.vertices.push_back(p);
  std::sort(bimedial_.vertices.begin(), bimedial_.vertices.end());
  for (int k = 0; k < int(bimedial_.vertices.size()); ++k)
    bimedial_.index[bimedial_.vertices[k]] = k;

  auto primal_edge_at = [&](QPoint a, QPoint b) {
    int va = vertex_index(a), vb = vertex_index(b);
    if (va < 0 || vb < 0) return -1;
    auto key = std::make_pair(std::min(va, vb), std::max(va, vb));
    auto it = std::lower_bound(graph_.edges.begin(), graph_.edges.end(), key);
    if (it == graph_.edges.end() || *it != key) return -1;
    return int(it - graph_.edges.begin());
  };
  auto mod4 = [](int32_t a) { return ((a % 4) + 4) % 4; };

  for (int a = 0; a < int(bimedial_.vertices.size()); ++a) {
    QPoint p = bimedial_.vertices[a];
    for (QPoint d : {QPoint{2, 0}, QPoint{0, 2}}) {
      QPoint q = p + d;
      int b = bimedial_.vertex_at(q);
      if (b < 0) continue;
      BimedialEdge edge;
      edge.a = std::min(a, b);
      edge.b = std::max(a, b);
      QPoint mid{(p.x + q.x) / 2, (p.y + q.y) / 2};
      bool horizontal = d.x != 0;
      int32_t line = horizontal ? mid.x : mid.y;
      if (mod4(line) == 0) {
        // crosses a primal edge (always interior: both endpoints in-domain)
        QPoint va, vb;
        if (horizontal) {
          int32_t j = floor_div4(p.y);
          va = {mid.x, 4 * j};
          vb = {mid.x, 4 * (j + 1)};
        } else {
          int32_t i = floor_div4(p.x);
          va = {4 * i, mid.y};
          vb = {4 * (i + 1), mid.y};
        }
        int pe = primal_edge_at(va, vb);
        if (pe < 0 || !edge_interior_[pe])
          throw LatticeError("bimedial edge crosses a non-interior primal edge");
        edge.cross = BimedialCross::primal;
        edge.crossed = pe;
      } else {
        // crosses the slot of a dual edge; the dual edge exists iff both
        // flanking faces are in the domain
        QPoint pm;  // midpoint of the dual edge slot = center of a primal edge
        if (horizontal) {
          int32_t ylo = p.y - (mod4(p.y) == 3 ? 1 : 3);
          pm = {mid.x, ylo + 2};
        } else {
          int32_t xlo = p.x - (mod4(p.x) == 3 ? 1 : 3);
          pm = {xlo + 2, mid.y};
        }
        QPoint va, vb;  // primal partner of the dual edge
        if (horizontal) {
          va = {pm.x - 2, pm.y};
          vb = {pm.x + 2, pm.y};
        } else {
          va = {pm.x, pm.y - 2};
          vb = {pm.x, pm.y + 2};
        }
        int pe = primal_edge_at(va, vb);
        if (pe < 0)
          throw LatticeError("dual slot without a primal partner edge");
        if (dual_.dual_edge_of_primal[pe] >= 0) {
          edge.cross = BimedialCross::dual;
          edge.crossed = dual_.dual_edge_of_primal[pe];
        } else {
          edge.cross = BimedialCross::none;
          edge.crossed = pe;  // the boundary edge this slot runs along
        }
      }
      bimedial_.edges.push_back(edge);
    }
  }
  std::sort(bimedial_.edges.begin(), bimedial_.edges.end(),
            [](const BimedialEdge& x, const BimedialEdge& y) {
              return x.a != y.a ? x.a < y.a : x.b < y.b;
            });
  bimedial_.adj.assign(bimedial_.vertices.size(), {});
  for (int e = 0; e < int(bimedial_.edges.size()); ++e) {
    bimedial_.adj[bimedial_.edges[e].a].push_back({bimedial_.edges[e].b, e});
    bimedial_.adj[bimedial_.edges[e].b].push_back({bimedial_.edges[e].a, e});
  }

  // Bi-medial boundary ring: trace the outer face counterclockwise starting
  // from the row-major smallest vertex heading east (exterior on the right).
  // The start is a true corner (south and west neighbors missing), so the
  // walk passes it exactly once.
  QPoint start_pos = bimedial_.vertices[0];
  QPoint dir{2, 0};
  QPoint pos = start_pos;
  std::vector<int> ring;
  int guard = 8 * int(bimedial_.vertices.size()) + 8;
  do {
    ring.push_back(bimedial_.vertex_at(pos));
    // rightmost-first turning order keeps the exterior on the right
    QPoint options[4] = {rotate_cw(dir), dir, rotate_ccw(dir),
                         QPoint{-dir.x, -dir.y}};
    for (const QPoint& nd : options) {
      if (bimedial_.vertex_at(pos + nd) >= 0) {
        dir = nd;
        pos = pos + nd;
        break;
      }
    }
  } while (!(pos == start_pos) && --guard > 0);
  if (guard <= 0) throw LatticeError("bimedial ring trace did not close");
  bimedial_ring_ = ring;
}

DiscreteDomain build_rectangle(int width_cells, int height_cells, double mesh,
                               std::string mesh_text) {
  if (width_cells < 1 || height_cells < 1)
    throw LatticeError("rectangle dimensions must be at least 1");
  std::vector<Face> faces;
  faces.reserve(size_t(width_cells) * height_cells);
  for (int32_t j = 0; j < height_cells; ++j)
    for (int32_t i = 0; i < width_cells; ++i) faces.push_back({i, j});
  return DiscreteDomain(std::move(faces), mesh, std::move(mesh_text));
}

Shape Shape::rectangle(double x0, double y0, double x1, double y1) {
  Shape s;
  s.kind = Kind::rectangle;
  s.p = {x0, y0, x1, y1};
  return s;
}
Shape Shape::disk(double cx, double cy, double r) {
  Shape s;
  s.kind = Kind::disk;
  s.p = {cx, cy, r, 0};
  return s;
}
Shape Shape::ellipse(double cx, double cy, double rx, double ry) {
  Shape s;
  s.kind = Kind::ellipse;
  s.p = {cx, cy, rx, ry};
  return s;
}
Shape Shape::simple_polygon(std::vector<std::pair<double, double>> pts) {
  Shape s;
  s.kind = Kind::polygon;
  s.polygon = std::move(pts);
  return s;
}

bool Shape::contains(double x, double y) const {
  switch (kind) {
    case Kind::rectangle:
      return x >= p[0] && x <= p[2] && y >= p[1] && y <= p[3];
    case Kind::disk: {
      double dx = x - p[0], dy = y - p[1];
      return dx * dx + dy * dy <= p[2] * p[2];
    }
    case Kind::ellipse: {
      double dx = (x - p[0]) / p[2], dy = (y - p[1]) / p[3];
      return dx * dx + dy * dy <= 1.0;
    }
    case Kind::polygon: {
      // even-odd rule; points on an edge count as inside
      size_t n = polygon.size();
      bool inside = false;
      for (size_t i = 0, j = n - 1; i < n; j = i++) {
        double xi = polygon[i].first, yi = polygon[i].second;
        double xj = polygon[j].first, yj = polygon[j].second;
        // on-segment check
        double cross = (xj - xi) * (y - yi) - (yj - yi) * (x - xi);
        if (std::abs(cross) < 1e-12 && x >= std::min(xi, xj) - 1e-12 &&
            x <= std::max(xi, xj) + 1e-12 && y >= std::min(yi, yj) - 1e-12 &&
            y <= std::max(yi, yj) + 1e-12)
          return true;
        if ((yi > y) != (yj > y)) {
          double t = (y - yi) / (yj - yi);
          if (x < xi + t * (xj - xi)) inside = !inside;
        }
      }
      return inside;
    }
  }
  return false;
}

void Shape::bounds(double& x0, double& y0, double& x1, double& y1) const {
  switch (kind) {
    case Kind::rectangle:
      x0 = p[0]; y0 = p[1]; x1 = p[2]; y1 = p[3];
      return;
    case Kind::disk:
      x0 = p[0] - p[2]; y0 = p[1] - p[2]; x1 = p[0] + p[2]; y1 = p[1] + p[2];
      return;
    case Kind::ellipse:
      x0 = p[0] - p[2]; y0 = p[1] - p[3]; x1 = p[0] + p[2]; y1 = p[1] + p[3];
      return;
    case Kind::polygon: {
      x0 = y0 = 1e300;
      x1 = y1 = -1e300;
      for (auto& [x, y] : polygon) {
        x0 = std::min(x0, x); x1 = std::max(x1, x);
        y0 = std::min(y0, y); y1 = std::max(y1, y);
      }
      return;
    }
  }
}

DiscreteDomain discretize_shape(const Shape& shape, double mesh,
                                std::string mesh_text) {
  if (mesh <= 0) throw LatticeError("mesh must be positive");
  double x0, y0, x1, y1;
  shape.bounds(x0, y0, x1, y1);
  int32_t i0 = int32_t(std::floor(x0 / mesh)) - 1;
  int32_t i1 = int32_t(std::ceil(x1 / mesh)) + 1;
  int32_t j0 = int32_t(std::floor(y0 / mesh)) - 1;
  int32_t j1 = int32_t(std::ceil(y1 / mesh)) + 1;
  std::vector<Face> kept;
  for (int32_t j = j0; j <= j1; ++j) {
    for (int32_t i = i0; i <= i1; ++i) {
      bool ok = true;
      for (int dx = 0; dx <= 1 && ok; ++dx)
        for (int dy = 0; dy <= 1 && ok; ++dy)
          ok = shape.contains((i + dx) * mesh, (j + dy) * mesh);
      if (ok) kept.push_back({i, j});
    }
  }
  if (kept.empty())
    throw LatticeError("shape discretization is empty at this mesh");

  // largest connected component; ties resolved toward the row-major
  // smallest face so results are deterministic
  std::sort(kept.begin(), kept.end());
  std::set<Face> pool(kept.begin(), kept.end());
  std::vector<Face> best;
  while (!pool.empty()) {
    std::vector<Face> comp;
    std::deque<Face> bfs{*pool.begin()};
    pool.erase(pool.begin());
    while (!bfs.empty()) {
      Face f = bfs.front();
      bfs.pop_front();
      comp.push_back(f);
      const int32_t di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
      for (int d = 0; d < 4; ++d) {
        Face g{f.i + di[d], f.j + dj[d]};
        auto it = pool.find(g);
        if (it != pool.end()) {
          pool.erase(it);
          bfs.push_back(g);
        }
      }
    }
    if (comp.size() > best.size()) best = std::move(comp);
  }
  return DiscreteDomain(std::move(best), mesh, std::move(mesh_text));
}

Shape parse_shape(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw LatticeError("shape spec must look like kind:params");
  std::string kind = spec.substr(0, colon);
  std::string rest = spec.substr(colon + 1);
  auto split = [](const std::string& s, char sep) {
    std::vector<double> out;
    size_t pos = 0;
    while (pos <= s.size()) {
      size_t next = s.find(sep, pos);
      if (next == std::string::npos) next = s.size();
      out.push_back(std::stod(s.substr(pos, next - pos)));
      pos = next + 1;
    }
    return out;
  };
  if (kind == "rect") {
    auto x = rest.find('x');
    if (x != std::string::npos && rest.find(',') == std::string::npos) {
      double w = std::stod(rest.substr(0, x));
      double h = std::stod(rest.substr(x + 1));
      return Shape::rectangle(0, 0, w, h);
    }
    auto v = split(rest, ',');
    if (v.size() != 4) throw LatticeError("rect wants x0,y0,x1,y1 or WxH");
    return Shape::rectangle(v[0], v[1], v[2], v[3]);
  }
  if (kind == "disk") {
    auto v = split(rest, ',');
    if (v.size() != 3) throw LatticeError("disk wants cx,cy,r");
    return Shape::disk(v[0], v[1], v[2]);
  }
  if (kind == "ellipse") {
    auto v = split(rest, ',');
    if (v.size() != 4) throw LatticeError("ellipse wants cx,cy,rx,ry");
    return Shape::ellipse(v[0], v[1], v[2], v[3]);
  }
  throw LatticeError("unknown shape kind: " + kind);
}

}  // namespace ising
