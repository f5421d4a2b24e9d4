#include "ising/loops.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <map>

namespace ising {

namespace {

QPoint unit4(QPoint d) {
  return {d.x == 0 ? 0 : (d.x > 0 ? 4 : -4), d.y == 0 ? 0 : (d.y > 0 ? 4 : -4)};
}

void finalize_loop(Loop& loop, double mesh) {
  loop.orientation = signed_area2(loop.points) > 0
                         ? Orientation::counterclockwise
                         : Orientation::clockwise;
  std::sort(loop.edge_set.begin(), loop.edge_set.end());
  std::sort(loop.plus_side.begin(), loop.plus_side.end());
  loop.plus_side.erase(std::unique(loop.plus_side.begin(), loop.plus_side.end()),
                       loop.plus_side.end());
  std::sort(loop.minus_side.begin(), loop.minus_side.end());
  loop.minus_side.erase(
      std::unique(loop.minus_side.begin(), loop.minus_side.end()),
      loop.minus_side.end());
  loop.diameter = point_set_diameter(loop.points, mesh);
}

}  // namespace

// Ising loops ----------------------------------------------------------------

LoopCollection extract_ising_loops(const SpinConfiguration& config,
                                   Chirality chirality) {
  if (!config.domain)
    throw ModelError("loop extraction needs a domain-backed configuration");
  if (chirality == Chirality::plain)
    throw ModelError("pick leftmost or rightmost extraction");
  const DiscreteDomain& d = *config.domain;
  const Graph& g = d.graph();

  // Directed interface edges on the dual graph: one per disagreeing interior
  // primal edge, oriented with the + spin on the left.
  struct DirEdge {
    QPoint tail, head;
    int primal_edge;
    int plus_vertex, minus_vertex;
  };
  std::vector<DirEdge> edges;
  std::unordered_map<QPoint, std::vector<int>, QPointHash> out_at, in_at;
  for (int e = 0; e < d.n_edges(); ++e) {
    if (!d.edge_is_interior(e)) continue;
    auto [a, b] = g.edges[e];
    if (config.spins[a] == config.spins[b]) continue;
    int plus_v = config.spins[a] > 0 ? a : b;
    int minus_v = config.spins[a] > 0 ? b : a;
    auto [fa, fb] = d.edge_faces(e);
    QPoint pa = d.dual_vertex_point(fa), pb = d.dual_vertex_point(fb);
    QPoint dir =
        rotate_cw(unit4(d.vertices()[plus_v] - d.vertices()[minus_v]));
    DirEdge de;
    de.primal_edge = e;
    de.plus_vertex = plus_v;
    de.minus_vertex = minus_v;
    if (pb - pa == dir) {
      de.tail = pa;
      de.head = pb;
    } else {
      de.tail = pb;
      de.head = pa;
    }
    int id = int(edges.size());
    edges.push_back(de);
    out_at[de.tail].push_back(id);
    in_at[de.head].push_back(id);
  }

  // Pair incoming with outgoing edges at every dual vertex. Leftmost turns
  // around the minus corner (right turn first); rightmost around the plus
  // corner (left turn first).
  std::vector<int> successor(edges.size(), -1);
  std::vector<char> out_used(edges.size(), 0);
  for (auto& [v, ins] : in_at) {
    auto it = out_at.find(v);
    if (it == out_at.end()) continue;
    std::vector<int>& outs = it->second;
    // parity invariant: interface degree at a dual vertex is even for
    // interior faces; odd counts occur only at free-bc boundary faces
    for (int in_id : ins) {
      QPoint din = unit4(edges[in_id].head - edges[in_id].tail);
      std::array<QPoint, 3> pref;
      if (chirality == Chirality::leftmost)
        pref = {rotate_cw(din), din, rotate_ccw(din)};
      else
        pref = {rotate_ccw(din), din, rotate_cw(din)};
      for (const QPoint& want : pref) {
        int found = -1;
        for (int out_id : outs) {
          if (out_used[out_id]) continue;
          if (unit4(edges[out_id].head - edges[out_id].tail) == want) {
            found = out_id;
            break;
          }
        }
        if (found >= 0) {
          successor[in_id] = found;
          out_used[found] = 1;
          break;
        }
      }
    }
  }

  LoopCollection result;
  result.kind = LoopKind::ising;
  result.chirality = chirality;
  result.mesh = d.mesh();
  std::vector<char> visited(edges.size(), 0);
  for (int start = 0; start < int(edges.size()); ++start) {
    if (visited[start]) continue;
    std::vector<int> walk;
    int cur = start;
    bool cycle = false;
    while (cur >= 0 && !visited[cur]) {
      visited[cur] = 1;
      walk.push_back(cur);
      cur = successor[cur];
      if (cur == start) {
        cycle = true;
        break;
      }
    }
    if (!cycle) continue;  // boundary-ending arc (free bc); not a loop
    Loop loop;
    loop.kind = LoopKind::ising;
    loop.chirality = chirality;
    for (int id : walk) {
      const DirEdge& de = edges[id];
      loop.points.push_back(de.tail);
      loop.edge_set.push_back(de.primal_edge);
      loop.plus_side.push_back(de.plus_vertex);
      loop.minus_side.push_back(de.minus_vertex);
    }
    finalize_loop(loop, d.mesh());
    // interior representative: the minus side for clockwise loops (+ spins
    // outside), the plus side for counterclockwise ones
    int rep = loop.orientation == Orientation::clockwise
                  ? edges[walk.front()].minus_vertex
                  : edges[walk.front()].plus_vertex;
    loop.inside_point = d.vertices()[rep];
    result.loops.push_back(std::move(loop));
  }
  return result;
}

// Containment index ----------------------------------------------------------

ContainmentIndex::ContainmentIndex(const std::vector<Loop>& loops) {
  for (int id = 0; id < int(loops.size()); ++id) {
    const auto& pts = loops[id].points;
    size_t n = pts.size();
    for (size_t k = 0; k < n; ++k) {
      QPoint a = pts[k], b = pts[(k + 1) % n];
      if (a.x != b.x) continue;
      int ylo = std::min(a.y, b.y), yhi = std::max(a.y, b.y);
      for (int y = ylo + 1; y < yhi; ++y) {
        if (y & 1) continue;  // queries sit on even quarter-coordinates
        rows_[y].push_back({a.x, id});
      }
    }
  }
  for (auto& [y, row] : rows_)
    std::sort(row.begin(), row.end(),
              [](const Entry& a, const Entry& b) { return a.x < b.x; });
}

std::vector<int> ContainmentIndex::enclosing(const QPoint& p) const {
  std::vector<int> ids;
  auto it = rows_.find(p.y);
  if (it == rows_.end()) return ids;
  for (const Entry& e : it->second) {
    if (e.x >= p.x) break;
    ids.push_back(e.id);
  }
  std::sort(ids.begin(), ids.end());
  std::vector<int> odd;
  for (size_t k = 0; k < ids.size();) {
    size_t j = k;
    while (j < ids.size() && ids[j] == ids[k]) ++j;
    if ((j - k) & 1) odd.push_back(ids[k]);
    k = j;
  }
  return odd;
}

int ContainmentIndex::count_enclosing(const QPoint& p) const {
  return int(enclosing(p).size());
}

LoopCollection classify_ising_levels(LoopCollection collection,
                                     const SpinConfiguration& config) {
  if (!config.domain) throw ModelError("classification needs a domain");
  if (collection.kind != LoopKind::ising)
    throw ModelError("collection/config mismatch: expected ising loops");
  ContainmentIndex index(collection.loops);
  for (Loop& loop : collection.loops)
    loop.level = index.count_enclosing(loop.inside_point);
  return collection;
}

LoopCollection classify_fk_levels(LoopCollection collection) {
  ContainmentIndex index(collection.loops);
  for (Loop& loop : collection.loops)
    loop.level = index.count_enclosing(loop.inside_point);
  return collection;
}

// FK loops -------------------------------------------------------------------

void bimedial_edge_sides(const DiscreteDomain& d, const BimedialEdge& be,
                         QPoint& primal_side, QPoint& dual_side) {
  QPoint pa = d.bimedial().vertices[be.a];
  QPoint pb = d.bimedial().vertices[be.b];
  QPoint mid{(pa.x + pb.x) / 2, (pa.y + pb.y) / 2};
  switch (be.cross) {
    case BimedialCross::primal: {
      auto [u, v] = d.graph().edges[be.crossed];
      QPoint zu = d.vertices()[u], zv = d.vertices()[v];
      primal_side = qdist2_int(zu, mid) < qdist2_int(zv, mid) ? zu : zv;
      dual_side = d.edge_midpoint(be.crossed);
      break;
    }
    case BimedialCross::dual: {
      int pe = d.dual().primal_edge[be.crossed];
      auto [fa, fb] = d.dual().edges[be.crossed];
      QPoint wa = d.dual_vertex_point(fa), wb = d.dual_vertex_point(fb);
      dual_side = qdist2_int(wa, mid) < qdist2_int(wb, mid) ? wa : wb;
      primal_side = d.edge_midpoint(pe);
      break;
    }
    case BimedialCross::none: {
      primal_side = d.edge_midpoint(be.crossed);
      dual_side = {2 * mid.x - primal_side.x, 2 * mid.y - primal_side.y};
      break;
    }
  }
}

FkInterfaceData fk_interface_data(const DiscreteDomain& d,
                                  const std::vector<char>& edge_open,
                                  const std::vector<char>& none_rule) {
  const BimedialGraph& bm = d.bimedial();
  int n_edges = int(bm.edges.size());
  FkInterfaceData data;
  data.iface.assign(n_edges, 0);
  data.tail.assign(n_edges, -1);
  data.head.assign(n_edges, -1);
  data.out_edge.assign(bm.vertices.size(), -1);
  data.in_edge.assign(bm.vertices.size(), -1);

  auto is_interface = [&](int k) {
    const BimedialEdge& be = bm.edges[k];
    switch (be.cross) {
      case BimedialCross::primal:
        return !edge_open[be.crossed];
      case BimedialCross::dual:
        return bool(edge_open[d.dual().primal_edge[be.crossed]]);
      case BimedialCross::none:
        return none_rule.empty() ? true : bool(none_rule[be.crossed]);
    }
    return false;
  };

  for (int k = 0; k < n_edges; ++k) {
    if (!is_interface(k)) continue;
    data.iface[k] = 1;
    const BimedialEdge& be = bm.edges[k];
    QPoint pa = bm.vertices[be.a], pb = bm.vertices[be.b];
    QPoint mid{(pa.x + pb.x) / 2, (pa.y + pb.y) / 2};
    QPoint primal_side, dual_side;
    bimedial_edge_sides(d, be, primal_side, dual_side);
    QPoint dir = rotate_cw(primal_side - mid);  // primal on the left
    if ((pb.x - pa.x) * dir.x + (pb.y - pa.y) * dir.y > 0) {
      data.tail[k] = be.a;
      data.head[k] = be.b;
    } else {
      data.tail[k] = be.b;
      data.head[k] = be.a;
    }
    if (data.out_edge[data.tail[k]] != -1 || data.in_edge[data.head[k]] != -1)
      throw ModelError("interface degree above two at a bimedial vertex");
    data.out_edge[data.tail[k]] = k;
    data.in_edge[data.head[k]] = k;
  }
  return data;
}

Loop loop_from_fk_walk(const DiscreteDomain& d, const FkInterfaceData& data,
                       const std::vector<int>& walk, double mesh) {
  Loop loop;
  loop.kind = LoopKind::fk;
  for (int k : walk) {
    loop.points.push_back(d.bimedial().vertices[data.tail[k]]);
    loop.edge_set.push_back(k);
  }
  finalize_loop(loop, mesh);
  QPoint primal_side, dual_side;
  bimedial_edge_sides(d, d.bimedial().edges[walk.front()], primal_side,
                      dual_side);
  loop.inside_point = loop.orientation == Orientation::counterclockwise
                          ? primal_side
                          : dual_side;
  return loop;
}

LoopCollection trace_fk_interface(const DiscreteDomain& d,
                                  const std::vector<char>& edge_open,
                                  const std::vector<char>& none_rule,
                                  double mesh) {
  FkInterfaceData data = fk_interface_data(d, edge_open, none_rule);
  int n_edges = int(d.bimedial().edges.size());

  LoopCollection result;
  result.kind = LoopKind::fk;
  result.mesh = mesh;
  std::vector<char> visited(n_edges, 0);
  for (int start = 0; start < n_edges; ++start) {
    if (!data.iface[start] || visited[start]) continue;
    std::vector<int> walk;
    int cur = start;
    bool cycle = false;
    while (cur >= 0 && !visited[cur]) {
      visited[cur] = 1;
      walk.push_back(cur);
      cur = data.out_edge[data.head[cur]];
      if (cur == start) {
        cycle = true;
        break;
      }
    }
    if (!cycle) continue;  // free-bc boundary arc
    result.loops.push_back(loop_from_fk_walk(d, data, walk, mesh));
  }
  return result;
}

LoopCollection extract_fk_loops(const FKConfiguration& config) {
  if (!config.domain)
    throw ModelError("FK loop extraction needs a domain-backed configuration");
  const DiscreteDomain& d = *config.domain;
  if (config.on_dual)
    throw ModelError("extract_fk_loops expects a primal configuration");

  std::vector<char> edge_open(config.open_edges.begin(),
                              config.open_edges.end());
  std::vector<char> none_rule;
  if (config.bc == FKBc::wired) {
    none_rule.assign(d.n_edges(), 1);
  } else if (config.bc == FKBc::free_bc) {
    none_rule.assign(d.n_edges(), 0);
  } else {
    none_rule.assign(d.n_edges(), 0);
    const auto& circuit_edges = d.boundary_edges();
    int n = int(circuit_edges.size());
    for (const BoundaryArc& arc : config.arcs) {
      if (arc.sign != +1) continue;
      for (int k = arc.from; k != arc.to; k = (k + 1) % n)
        none_rule[circuit_edges[k]] = 1;
    }
  }
  LoopCollection out = trace_fk_interface(d, edge_open, none_rule, d.mesh());

  // annotate the primal-side cluster of each loop
  UnionFind uf = clusters(config);
  for (Loop& loop : out.loops) {
    const BimedialEdge& be = d.bimedial().edges[loop.edge_set.front()];
    int v = -1;
    switch (be.cross) {
      case BimedialCross::primal: {
        // the crossed edge is closed, so its endpoints may sit in different
        // clusters; take the near (primal-side) one
        QPoint pa = d.bimedial().vertices[be.a];
        QPoint pb = d.bimedial().vertices[be.b];
        QPoint mid{(pa.x + pb.x) / 2, (pa.y + pb.y) / 2};
        auto [u, w] = d.graph().edges[be.crossed];
        v = qdist2_int(d.vertices()[u], mid) < qdist2_int(d.vertices()[w], mid)
                ? u
                : w;
        break;
      }
      case BimedialCross::dual:
        v = d.graph().edges[d.dual().primal_edge[be.crossed]].first;
        break;
      case BimedialCross::none:
        v = d.graph().edges[be.crossed].first;
        break;
    }
    loop.primal_cluster = uf.find(v);
  }
  return out;
}

std::vector<CutOutDomain> cut_out_domains(const FKConfiguration& config) {
  if (config.bc != FKBc::wired)
    throw ModelError("cut_out_domains requires wired boundary conditions");
  const DiscreteDomain& d = *config.domain;
  LoopCollection loops = classify_fk_levels(extract_fk_loops(config));

  std::vector<const Loop*> level1;
  for (const Loop& l : loops.loops)
    if (l.level == 1) level1.push_back(&l);

  std::vector<Loop> l1_copy;
  l1_copy.reserve(level1.size());
  for (auto* l : level1) l1_copy.push_back(*l);
  ContainmentIndex index(l1_copy);

  std::vector<CutOutDomain> out(level1.size());
  for (size_t k = 0; k < level1.size(); ++k) out[k].loop = *level1[k];

  std::vector<int> owner(d.n_vertices(), -1);
  for (int v = 0; v < d.n_vertices(); ++v) {
    auto ids = index.enclosing(d.vertices()[v]);
    if (ids.empty()) continue;
    // level-1 loops are mutually non-nested, so at most one can enclose
    owner[v] = ids.front();
    out[ids.front()].vertices.push_back(v);
  }
  for (int f = 0; f < d.n_faces(); ++f) {
    const Face& face = d.faces()[f];
    int o = -1;
    bool all = true;
    for (int dx = 0; dx <= 1 && all; ++dx)
      for (int dy = 0; dy <= 1 && all; ++dy) {
        int v = d.vertex_index(QPoint{4 * (face.i + dx), 4 * (face.j + dy)});
        if (v < 0 || owner[v] < 0 || (o >= 0 && owner[v] != o))
          all = false;
        else
          o = owner[v];
      }
    if (all && o >= 0) out[o].faces.push_back(f);
  }
  for (CutOutDomain& c : out) c.degenerate = c.vertices.empty();
  return out;
}

bool containment(const Loop& loop, const QPoint& target) {
  if (on_loop(loop.points, target))
    throw ModelError(
        "containment target lies on the loop; perturb by a quarter mesh");
  return winding_odd(loop.points, target);
}

bool containment(const Loop& loop, const Loop& target) {
  for (const QPoint& p : target.points)
    if (!containment(loop, p)) return false;
  return true;
}

}  // namespace ising
