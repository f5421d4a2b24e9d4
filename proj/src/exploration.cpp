#include "ising/exploration.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <set>
#include <unordered_map>

namespace ising {

namespace {

int primal_side_vertex(const DiscreteDomain& d, const BimedialEdge& be) {
  switch (be.cross) {
    case BimedialCross::primal: {
      QPoint pa = d.bimedial().vertices[be.a];
      QPoint pb = d.bimedial().vertices[be.b];
      QPoint mid{(pa.x + pb.x) / 2, (pa.y + pb.y) / 2};
      auto [u, w] = d.graph().edges[be.crossed];
      return qdist2_int(d.vertices()[u], mid) <
                     qdist2_int(d.vertices()[w], mid)
                 ? u
                 : w;
    }
    case BimedialCross::dual:
      return d.graph().edges[d.dual().primal_edge[be.crossed]].first;
    case BimedialCross::none:
      return d.graph().edges[be.crossed].first;
  }
  return -1;
}

double region_diameter(const std::vector<int>& vertex_ids,
                       const DiscreteDomain& d) {
  std::vector<QPoint> pts;
  pts.reserve(vertex_ids.size());
  for (int v : vertex_ids) pts.push_back(d.vertices()[v]);
  return point_set_diameter(pts, d.mesh());
}

}  // namespace

// ---------------------------------------------------------------------------
// harvest_outermost

ExplorationTrace harvest_outermost(const SpinConfiguration& config,
                                   const FKParams& params, double epsilon,
                                   Rng& rng) {
  if (config.bc != SpinBc::plus)
    throw ModelError("harvest_outermost requires + boundary conditions");
  if (!config.domain) throw ModelError("harvest needs a domain");
  const DiscreteDomain& d = *config.domain;
  if (epsilon <= d.mesh())
    throw ModelError("epsilon must exceed the mesh size");

  // The fixed spins' leftmost loops; the exploration selects from these but
  // never looks at their levels.
  LoopCollection all_loops = extract_ising_loops(config, Chirality::leftmost);
  int n_loops = int(all_loops.loops.size());
  std::vector<char> harvested_mark(n_loops, 0);

  ExplorationTrace trace;
  trace.epsilon = epsilon;
  trace.seed = rng.state();

  // Work queue of + bc regions, breadth-first so harvest_time is the
  // recursion depth.
  struct PendingRegion {
    std::vector<int> vertices;
    int depth;
  };
  std::deque<PendingRegion> queue;
  {
    std::vector<int> all(d.n_vertices());
    for (int v = 0; v < d.n_vertices(); ++v) all[v] = v;
    queue.push_back({std::move(all), 1});
  }
  uint64_t branch = 0;

  while (!queue.empty()) {
    PendingRegion pending = std::move(queue.front());
    queue.pop_front();
    Rng branch_rng = rng.split(branch++);

    ExplorationIteration iter;
    iter.region.vertices = pending.vertices;
    iter.region.diameter = region_diameter(pending.vertices, d);
    std::vector<char> in_region(d.n_vertices(), 0);
    for (int v : pending.vertices) in_region[v] = 1;

    // Edwards-Sokal resample inside the region; everything outside counts as
    // part of the wired surroundings.
    std::vector<char> edge_open(d.n_edges(), 1);
    for (int e = 0; e < d.n_edges(); ++e) {
      auto [x, y] = d.graph().edges[e];
      if (!in_region[x] || !in_region[y]) continue;
      edge_open[e] = (config.spins[x] == config.spins[y]) &&
                     (branch_rng.next_double() < params.p);
    }
    iter.fk_open_edges = edge_open;

    // FK loops of the resampled state; level 1 = outermost.
    LoopCollection fk_loops = classify_fk_levels(
        trace_fk_interface(d, edge_open, {}, d.mesh()));
    std::vector<Loop*> level1;
    for (Loop& l : fk_loops.loops)
      if (l.level == 1) level1.push_back(&l);

    // Enclosed region vertices per level-1 loop.
    std::vector<Loop> level1_copy;
    for (Loop* l : level1) level1_copy.push_back(*l);
    ContainmentIndex index(level1_copy);
    std::vector<std::vector<int>> enclosed(level1.size());
    std::vector<int> owner(d.n_vertices(), -1);
    for (int v : pending.vertices) {
      auto ids = index.enclosing(d.vertices()[v]);
      if (ids.empty()) continue;
      owner[v] = ids.front();
      enclosed[ids.front()].push_back(v);
    }

    // Cut-out domains (degenerate ones recorded only when they belong to the
    // region's territory; the exploration skips them).
    std::vector<int> harvested_here;
    for (size_t k = 0; k < level1.size(); ++k) {
      if (enclosed[k].empty()) {
        QPoint ip = level1[k]->inside_point;
        if (ip.x % 4 == 2 && ip.y % 4 == 2) {
          int f = d.face_index((ip.x - 2) / 4, (ip.y - 2) / 4);
          bool in = f >= 0;
          if (in)
            for (int dx = 0; dx <= 1 && in; ++dx)
              for (int dy = 0; dy <= 1 && in; ++dy) {
                const Face& fc = d.faces()[f];
                int v = d.vertex_index(
                    QPoint{4 * (fc.i + dx), 4 * (fc.j + dy)});
                in = v >= 0 && in_region[v];
              }
          if (in) {
            CutOutDomain deg;
            deg.loop = *level1[k];
            deg.degenerate = true;
            iter.cutouts.push_back(std::move(deg));
            iter.fk_level1_loops.push_back(*level1[k]);
          }
        }
        continue;
      }
      CutOutDomain cut;
      cut.loop = *level1[k];
      cut.vertices = enclosed[k];
      cut.degenerate = false;
      iter.fk_level1_loops.push_back(*level1[k]);

      // Boundary circuit of the cut-out: + vertices hugging it from outside.
      std::vector<char> in_cut(d.n_vertices(), 0);
      for (int v : cut.vertices) in_cut[v] = 1;
      std::set<int> circuit;
      for (int v : cut.vertices)
        for (auto [nbr, e] : d.graph().adj[v])
          if (!in_cut[nbr]) circuit.insert(nbr);

      // Harvest: leftmost loops whose minus cluster sits in this cut-out and
      // whose + side touches the circuit.
      for (int li = 0; li < n_loops; ++li) {
        if (harvested_mark[li]) continue;
        const Loop& loop = all_loops.loops[li];
        bool inside = !loop.minus_side.empty();
        for (int v : loop.minus_side) inside = inside && in_cut[v];
        if (!inside) continue;
        bool touches = false;
        for (int v : loop.plus_side) touches = touches || circuit.count(v);
        if (!touches) continue;
        harvested_mark[li] = 1;
        HarvestedLoop h;
        h.loop = loop;
        h.harvest_time = pending.depth;
        h.cutout_id = int(iter.cutouts.size());
        iter.harvested.push_back(h);
        trace.harvested.push_back(h);
        harvested_here.push_back(li);
      }
      iter.cutouts.push_back(std::move(cut));
    }

    // Unharvested loops of this region must sit inside some cut-out
    // (Edwards-Sokal coupling keeps Ising loops on open dual edges), so the
    // leftovers outside all cut-outs need no further exploration.
    for (int li = 0; li < n_loops; ++li) {
      if (harvested_mark[li])
        continue;
      const Loop& loop = all_loops.loops[li];
      bool relevant = !loop.minus_side.empty();
      for (int v : loop.minus_side) relevant = relevant && in_region[v];
      if (!relevant) continue;
      for (int v : loop.minus_side)
        if (owner[v] < 0)
          throw ModelError(
              "coupled invariant violated: loop escaped every cut-out");
    }

    // Residual regions: per cut-out, the vertices outside the loops
    // harvested there, component by component.
    std::vector<Loop> harvested_loops_here;
    for (int li : harvested_here)
      harvested_loops_here.push_back(all_loops.loops[li]);
    ContainmentIndex harvested_index(harvested_loops_here);
    for (const CutOutDomain& cut : iter.cutouts) {
      if (cut.degenerate) continue;
      std::vector<char> leftover(d.n_vertices(), 0);
      for (int v : cut.vertices)
        leftover[v] = harvested_index.enclosing(d.vertices()[v]).empty();
      // connected components of the leftover vertex set
      std::vector<char> seen(d.n_vertices(), 0);
      for (int v : cut.vertices) {
        if (!leftover[v] || seen[v]) continue;
        std::vector<int> comp{v};
        seen[v] = 1;
        for (size_t h = 0; h < comp.size(); ++h)
          for (auto [nbr, e] : d.graph().adj[comp[h]])
            if (leftover[nbr] && !seen[nbr]) {
              seen[nbr] = 1;
              comp.push_back(nbr);
            }
        std::sort(comp.begin(), comp.end());
        ExplorationRegion region;
        region.diameter = region_diameter(comp, d);
        region.vertices = std::move(comp);
        if (region.diameter >= epsilon) {
          queue.push_back({region.vertices, pending.depth + 1});
          iter.residual.push_back(std::move(region));
        } else {
          iter.discarded.push_back(std::move(region));
        }
      }
    }
    trace.iterations.push_back(std::move(iter));
  }
  return trace;
}

// ---------------------------------------------------------------------------
// fk_exploration_path

namespace {

struct PathContext {
  const DiscreteDomain* d;
  FkInterfaceData data;
  std::vector<char> b_legal;       // per bimedial edge
  std::vector<int> cw_next;        // per bimedial vertex; -1 off the ring
  std::vector<char> visited;
};

// Directed reachability over the walkable structure: interface edges plus
// clockwise ring slides, avoiding visited vertices.
bool reachable(const PathContext& ctx, int from, int target) {
  if (from == target) return true;
  std::vector<char> seen(ctx.d->bimedial().vertices.size(), 0);
  std::vector<int> queue{from};
  seen[from] = 1;
  while (!queue.empty()) {
    int v = queue.back();
    queue.pop_back();
    int moves[2] = {-1, -1};
    int e = ctx.data.out_edge[v];
    if (e >= 0 && ctx.b_legal[e]) moves[0] = ctx.data.head[e];
    moves[1] = ctx.cw_next[v];
    for (int w : moves) {
      if (w < 0 || seen[w] || ctx.visited[w]) continue;
      if (w == target) return true;
      seen[w] = 1;
      queue.push_back(w);
    }
  }
  return false;
}

PathContext make_path_context(const FKConfiguration& config) {
  if (!config.domain) throw ModelError("exploration path needs a domain");
  if (config.bc != FKBc::wired)
    throw ModelError("exploration path requires wired boundary conditions");
  const DiscreteDomain& d = *config.domain;
  PathContext ctx;
  ctx.d = &d;
  std::vector<char> edge_open(config.open_edges.begin(),
                              config.open_edges.end());
  ctx.data = fk_interface_data(d, edge_open, {});

  FKConfiguration wired = config;
  apply_bc(wired);
  UnionFind uf = clusters(wired);
  int b_root = -1;
  for (int v = 0; v < d.n_vertices(); ++v)
    if (d.graph().is_boundary_vertex[v]) {
      b_root = uf.find(v);
      break;
    }
  ctx.b_legal.assign(d.bimedial().edges.size(), 0);
  for (int k = 0; k < int(d.bimedial().edges.size()); ++k) {
    if (!ctx.data.iface[k]) continue;
    int v = primal_side_vertex(d, d.bimedial().edges[k]);
    ctx.b_legal[k] = uf.find(v) == b_root;
  }

  const std::vector<int>& ring = d.bimedial_ring();
  ctx.cw_next.assign(d.bimedial().vertices.size(), -1);
  for (size_t i = 0; i < ring.size(); ++i)
    ctx.cw_next[ring[i]] = ring[(i + ring.size() - 1) % ring.size()];
  ctx.visited.assign(d.bimedial().vertices.size(), 0);
  return ctx;
}

}  // namespace

ExplorationPath fk_exploration_path(const FKConfiguration& config, int a,
                                    int b) {
  if (a == b) throw ModelError("exploration endpoints must differ");
  PathContext ctx = make_path_context(config);
  const DiscreteDomain& d = *config.domain;
  const std::vector<int>& ring = d.bimedial_ring();
  int pos_a = -1;
  for (size_t i = 0; i < ring.size(); ++i)
    if (ring[i] == a) pos_a = int(i);
  if (pos_a < 0 || ctx.cw_next[b] < 0)
    throw ModelError("endpoints must lie on the bi-medial boundary ring");

  ExplorationPath path;
  path.vertices.push_back(a);
  ctx.visited[a] = 1;
  // incoming direction of a clockwise walker arriving at a
  QPoint dir = d.bimedial().vertices[a] -
               d.bimedial().vertices[ring[(pos_a + 1) % ring.size()]];
  int v = a;
  int guard = 4 * int(d.bimedial().vertices.size()) + 8;
  while (v != b && --guard > 0) {
    // candidate moves, rightmost turn first (dual kept on the right)
    std::array<QPoint, 3> prefs = {rotate_cw(dir), dir, rotate_ccw(dir)};
    int chosen = -1;
    StepSide chosen_side = StepSide::boundary;
    bool overridden = false;
    for (size_t c = 0; c < prefs.size(); ++c) {
      QPoint np = d.bimedial().vertices[v] + prefs[c];
      int w = d.bimedial().vertex_at(np);
      if (w < 0 || ctx.visited[w]) continue;
      StepSide side;
      int e = ctx.data.out_edge[v];
      if (e >= 0 && ctx.b_legal[e] && ctx.data.head[e] == w)
        side = StepSide::interface;
      else if (ctx.cw_next[v] == w)
        side = StepSide::boundary;
      else
        continue;
      ctx.visited[w] = 1;  // tentatively, so the BFS cannot route through v
      bool ok = (w == b) || reachable(ctx, w, b);
      ctx.visited[w] = 0;
      if (ok) {
        chosen = w;
        chosen_side = side;
        if (c > 0) {
          // check whether an earlier (more rightward) candidate existed but
          // failed only on feasibility
          for (size_t c2 = 0; c2 < c; ++c2) {
            QPoint np2 = d.bimedial().vertices[v] + prefs[c2];
            int w2 = d.bimedial().vertex_at(np2);
            if (w2 < 0 || ctx.visited[w2]) continue;
            int e2 = ctx.data.out_edge[v];
            bool legal2 = (e2 >= 0 && ctx.b_legal[e2] &&
                           ctx.data.head[e2] == w2) ||
                          ctx.cw_next[v] == w2;
            if (legal2) overridden = true;
          }
        }
        break;
      }
    }
    if (chosen < 0)
      throw ModelError("exploration path lost reachability of its endpoint");
    if (overridden) path.lookahead_overrides++;
    dir = d.bimedial().vertices[chosen] - d.bimedial().vertices[v];
    ctx.visited[chosen] = 1;
    path.vertices.push_back(chosen);
    path.sides.push_back(chosen_side);
    v = chosen;
  }
  if (guard <= 0) throw ModelError("exploration path did not terminate");
  return path;
}

// ---------------------------------------------------------------------------
// special points

std::pair<int, int> subpath_interval(const SpecialPoint& x) {
  return {x.boundary ? 0 : x.partner, x.time};
}

SpecialPointSet special_points(const ExplorationPath& path,
                               const FKConfiguration& config, int a, int b) {
  const DiscreteDomain& d = *config.domain;
  const auto& bm = d.bimedial();
  const std::vector<int>& ring = d.bimedial_ring();
  int n = int(path.vertices.size());

  // counterclockwise open arc from a to b on the ring
  std::vector<char> on_arc(bm.vertices.size(), 0);
  {
    int pos_a = -1, pos_b = -1;
    for (size_t i = 0; i < ring.size(); ++i) {
      if (ring[i] == a) pos_a = int(i);
      if (ring[i] == b) pos_b = int(i);
    }
    if (pos_a < 0 || pos_b < 0)
      throw ModelError("path endpoints must lie on the boundary ring");
    for (int i = (pos_a + 1) % int(ring.size()); i != pos_b;
         i = (i + 1) % int(ring.size()))
      on_arc[ring[i]] = 1;
  }

  std::unordered_map<int, int> time_of;  // vertex -> path time
  for (int t = 0; t < n; ++t) time_of[path.vertices[t]] = t;

  SpecialPointSet out;
  const QPoint steps[4] = {{2, 0}, {-2, 0}, {0, 2}, {0, -2}};
  for (int t = 1; t < n; ++t) {
    QPoint p = bm.vertices[path.vertices[t]];
    // boundary approach: on the ccw arc or one bi-medial step from it
    bool near_arc = on_arc[path.vertices[t]];
    for (const QPoint& s : steps) {
      int w = bm.vertex_at(p + s);
      if (w >= 0 && on_arc[w]) near_arc = true;
    }
    if (near_arc) {
      SpecialPoint sp;
      sp.boundary = true;
      sp.time = t;
      sp.partner = 0;
      out.points.push_back(sp);
    }
    // clockwise double points: one bi-medial step from the path's past
    std::vector<int> partners;
    for (const QPoint& s : steps) {
      int w = bm.vertex_at(p + s);
      if (w < 0) continue;
      auto it = time_of.find(w);
      if (it == time_of.end() || it->second >= t - 1) continue;
      partners.push_back(it->second);
    }
    std::sort(partners.rbegin(), partners.rend());  // tightest loop first
    for (int tp : partners) {
      std::vector<QPoint> poly;
      poly.reserve(t - tp + 1);
      for (int k = tp; k <= t; ++k)
        poly.push_back(bm.vertices[path.vertices[k]]);
      if (signed_area2(poly) < 0) {  // winds clockwise
        SpecialPoint sp;
        sp.boundary = false;
        sp.time = t;
        sp.partner = tp;
        out.points.push_back(sp);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// pinching family

namespace {

double subpath_diameter(const ExplorationPath& path, const DiscreteDomain& d,
                        int from, int to) {
  std::vector<QPoint> pts;
  pts.reserve(to - from + 1);
  for (int t = from; t <= to; ++t)
    pts.push_back(d.bimedial().vertices[path.vertices[t]]);
  return point_set_diameter(pts, d.mesh());
}

double interval_difference_diameter(const ExplorationPath& path,
                                    const DiscreteDomain& d,
                                    std::pair<int, int> inner,
                                    std::pair<int, int> outer) {
  std::vector<QPoint> pts;
  for (int t = outer.first; t <= inner.first; ++t)
    pts.push_back(d.bimedial().vertices[path.vertices[t]]);
  for (int t = inner.second; t <= outer.second; ++t)
    pts.push_back(d.bimedial().vertices[path.vertices[t]]);
  return point_set_diameter(pts, d.mesh());
}

}  // namespace

PinchingFamily pinching_family(const ExplorationPath& path,
                               const SpecialPointSet& specials, double epsilon,
                               const FKConfiguration& config) {
  const DiscreteDomain& d = *config.domain;
  if (epsilon <= 4 * d.mesh())
    throw ModelError("pinching family needs epsilon > 4 * mesh");
  int n = int(path.vertices.size());

  // waypoints: successive first exits from epsilon/4 balls
  std::vector<int> waypoints{0};
  while (true) {
    int last = waypoints.back();
    if (subpath_diameter(path, d, last, n - 1) <= epsilon / 4) break;
    QPoint c = d.bimedial().vertices[path.vertices[last]];
    int t = last + 1;
    while (t < n &&
           qdist(c, d.bimedial().vertices[path.vertices[t]], d.mesh()) <=
               epsilon / 4)
      ++t;
    if (t >= n) break;
    waypoints.push_back(t);
  }

  // specials ordered by time, then smaller subpath first
  std::vector<SpecialPoint> ordered = specials.points;
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const SpecialPoint& x, const SpecialPoint& y) {
                     if (x.time != y.time) return x.time < y.time;
                     return subpath_interval(x).first >
                            subpath_interval(y).first;
                   });

  auto k_contains = [](std::pair<int, int> k, int t) {
    return k.first <= t && t <= k.second;
  };
  auto k_strictly_inside = [](std::pair<int, int> inner,
                              std::pair<int, int> outer) {
    return outer.first <= inner.first && inner.second <= outer.second &&
           !(inner == outer);
  };

  PinchingFamily fam;
  std::set<std::pair<int, int>> taken;  // (time, partner) dedupe
  auto add_point = [&](const SpecialPoint& sp) {
    auto key = std::make_pair(sp.time, sp.boundary ? -1 : sp.partner);
    if (taken.insert(key).second) fam.points.push_back(sp);
  };

  for (int w : waypoints) {
    // x^0: first special after the waypoint whose subpath contains it and
    // has diameter at least epsilon/2
    const SpecialPoint* cur = nullptr;
    for (const SpecialPoint& sp : ordered) {
      if (sp.time <= w) continue;
      auto k = subpath_interval(sp);
      if (!k_contains(k, w)) continue;
      if (subpath_diameter(path, d, k.first, k.second) < epsilon / 2)
        continue;
      cur = &sp;
      break;
    }
    if (!cur) continue;
    add_point(*cur);
    // chain: successive strictly-larger subpaths growing by >= epsilon/2
    while (true) {
      auto kc = subpath_interval(*cur);
      const SpecialPoint* next = nullptr;
      for (const SpecialPoint& sp : ordered) {
        if (sp.time <= cur->time) continue;
        auto k = subpath_interval(sp);
        if (!k_strictly_inside(kc, k)) continue;
        if (interval_difference_diameter(path, d, kc, k) < epsilon / 2)
          continue;
        next = &sp;
        break;
      }
      if (!next) break;
      add_point(*next);
      cur = next;
    }
  }
  // the endpoint b always belongs to the family
  SpecialPoint bpoint;
  bpoint.boundary = true;
  bpoint.time = n - 1;
  bpoint.partner = 0;
  add_point(bpoint);

  // cells: every path step belongs to the smallest containing subpath
  fam.cells.assign(fam.points.size(), {});
  for (int s = 0; s + 1 < n; ++s) {
    int best = -1;
    int best_len = n + 1;
    for (size_t k = 0; k < fam.points.size(); ++k) {
      auto kv = subpath_interval(fam.points[k]);
      if (kv.first <= s && s + 1 <= kv.second) {
        int len = kv.second - kv.first;
        if (len < best_len) {
          best_len = len;
          best = int(k);
        }
      }
    }
    if (best >= 0) fam.cells[best].push_back(s);
  }
  return fam;
}

// ---------------------------------------------------------------------------
// explore_all_fk_level1

namespace {

// Outer-face cycle of an induced bimedial vertex subset, counterclockwise.
std::vector<int> pocket_ring(const DiscreteDomain& d,
                             const std::vector<char>& in_pocket) {
  const auto& bm = d.bimedial();
  int start = -1;
  for (int v = 0; v < int(bm.vertices.size()); ++v)
    if (in_pocket[v]) {
      if (start < 0 || bm.vertices[v] < bm.vertices[start]) start = v;
    }
  if (start < 0) return {};
  auto at = [&](QPoint p) {
    int v = bm.vertex_at(p);
    return (v >= 0 && in_pocket[v]) ? v : -1;
  };
  QPoint pos = bm.vertices[start];
  QPoint dir{2, 0};
  std::vector<int> ring;
  int guard = 8 * int(bm.vertices.size()) + 8;
  do {
    ring.push_back(bm.vertex_at(pos));
    QPoint options[4] = {rotate_cw(dir), dir, rotate_ccw(dir),
                         QPoint{-dir.x, -dir.y}};
    bool moved = false;
    for (const QPoint& nd : options) {
      if (at(pos + nd) >= 0) {
        dir = nd;
        pos = pos + nd;
        moved = true;
        break;
      }
    }
    if (!moved) break;  // isolated vertex pocket
  } while (!(pos == bm.vertices[start]) && --guard > 0);
  if (guard <= 0) throw ModelError("pocket ring trace did not close");
  return ring;
}

struct PocketWalkResult {
  std::vector<int> path;                // bimedial vertices a..b
  std::vector<char> step_interface;    // per step
};

// The exploration walk restricted to a pocket: interface moves (B-legal)
// plus clockwise slides along the pocket's own frontier ring.
PocketWalkResult pocket_exploration(const DiscreteDomain& d,
                                    const FkInterfaceData& data,
                                    const std::vector<char>& b_legal,
                                    const std::vector<char>& in_pocket,
                                    const std::vector<int>& ring, int a,
                                    int b) {
  const auto& bm = d.bimedial();
  std::vector<int> cw_next(bm.vertices.size(), -1);
  for (size_t i = 0; i < ring.size(); ++i)
    cw_next[ring[i]] = ring[(i + ring.size() - 1) % ring.size()];
  std::vector<char> visited(bm.vertices.size(), 0);

  auto reachable = [&](int from, int target) {
    if (from == target) return true;
    std::vector<char> seen(bm.vertices.size(), 0);
    std::vector<int> queue{from};
    seen[from] = 1;
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      int moves[2] = {-1, -1};
      int e = data.out_edge[v];
      if (e >= 0 && b_legal[e] && in_pocket[data.head[e]])
        moves[0] = data.head[e];
      moves[1] = cw_next[v];
      for (int w : moves) {
        if (w < 0 || seen[w] || visited[w]) continue;
        if (w == target) return true;
        seen[w] = 1;
        queue.push_back(w);
      }
    }
    return false;
  };

  int pos_a = -1;
  for (size_t i = 0; i < ring.size(); ++i)
    if (ring[i] == a) pos_a = int(i);
  PocketWalkResult out;
  out.path.push_back(a);
  visited[a] = 1;
  QPoint dir =
      bm.vertices[a] - bm.vertices[ring[(pos_a + 1) % ring.size()]];
  int v = a;
  int guard = 4 * int(bm.vertices.size()) + 8;
  while (v != b && --guard > 0) {
    std::array<QPoint, 3> prefs = {rotate_cw(dir), dir, rotate_ccw(dir)};
    int chosen = -1;
    bool iface_step = false;
    for (const QPoint& nd : prefs) {
      int w = bm.vertex_at(bm.vertices[v] + nd);
      if (w < 0 || !in_pocket[w] || visited[w]) continue;
      bool is_iface = false;
      int e = data.out_edge[v];
      if (e >= 0 && b_legal[e] && data.head[e] == w)
        is_iface = true;
      else if (cw_next[v] != w)
        continue;
      visited[w] = 1;
      bool ok = (w == b) || reachable(w, b);
      visited[w] = 0;
      if (ok) {
        chosen = w;
        iface_step = is_iface;
        break;
      }
    }
    if (chosen < 0)
      throw ModelError("pocket exploration lost its endpoint");
    dir = bm.vertices[chosen] - bm.vertices[v];
    visited[chosen] = 1;
    out.path.push_back(chosen);
    out.step_interface.push_back(iface_step);
    v = chosen;
  }
  if (guard <= 0) throw ModelError("pocket exploration did not terminate");
  return out;
}

}  // namespace

LoopCollection explore_all_fk_level1(const FKConfiguration& config,
                                     double epsilon) {
  if (!config.domain) throw ModelError("explore_all needs a domain");
  if (config.bc != FKBc::wired)
    throw ModelError("explore_all requires wired boundary conditions");
  const DiscreteDomain& d = *config.domain;
  if (epsilon <= d.mesh())
    throw ModelError("epsilon must exceed the mesh size");
  const auto& bm = d.bimedial();

  FKConfiguration wired = config;
  apply_bc(wired);
  std::vector<char> edge_open(wired.open_edges.begin(),
                              wired.open_edges.end());
  FkInterfaceData data = fk_interface_data(d, edge_open, {});
  UnionFind uf = clusters(wired);
  int b_root = -1;
  for (int v = 0; v < d.n_vertices(); ++v)
    if (d.graph().is_boundary_vertex[v]) {
      b_root = uf.find(v);
      break;
    }
  std::vector<char> b_legal(bm.edges.size(), 0);
  for (int k = 0; k < int(bm.edges.size()); ++k)
    if (data.iface[k])
      b_legal[k] =
          uf.find(primal_side_vertex(d, bm.edges[k])) == b_root;

  LoopCollection result;
  result.kind = LoopKind::fk;
  result.mesh = d.mesh();
  std::vector<char> loop_edge_seen(bm.edges.size(), 0);

  auto bm_diameter = [&](const std::vector<int>& verts) {
    std::vector<QPoint> pts;
    pts.reserve(verts.size());
    for (int v : verts) pts.push_back(bm.vertices[v]);
    return point_set_diameter(pts, d.mesh());
  };

  std::deque<std::vector<char>> pockets;
  {
    std::vector<char> all(bm.vertices.size(), 1);
    pockets.push_back(std::move(all));
  }

  while (!pockets.empty()) {
    std::vector<char> in_pocket = std::move(pockets.front());
    pockets.pop_front();
    std::vector<int> ring = pocket_ring(d, in_pocket);
    if (ring.size() < 2) continue;

    // endpoints: the two most distant ring vertices
    int a = ring[0], b = ring[1];
    int64_t best = -1;
    for (size_t i = 0; i < ring.size(); ++i)
      for (size_t j = i + 1; j < ring.size(); ++j) {
        int64_t d2 =
            qdist2_int(bm.vertices[ring[i]], bm.vertices[ring[j]]);
        if (d2 > best) {
          best = d2;
          a = ring[i];
          b = ring[j];
        }
      }

    PocketWalkResult walk =
        pocket_exploration(d, data, b_legal, in_pocket, ring, a, b);
    std::vector<char> on_path(bm.vertices.size(), 0);
    for (int v : walk.path) on_path[v] = 1;

    // close every loop the path touched: walk the global interface from
    // each untaken outgoing interface edge at a path vertex
    std::vector<Loop> found_here;
    std::vector<char> taken_step(bm.edges.size(), 0);
    for (size_t s = 0; s + 1 < walk.path.size(); ++s) {
      if (!walk.step_interface[s]) continue;
      int e = data.out_edge[walk.path[s]];
      if (e >= 0) taken_step[e] = 1;
    }
    for (int v : walk.path) {
      int e0 = data.out_edge[v];
      if (e0 < 0 || !b_legal[e0] || loop_edge_seen[e0]) continue;
      // walk the full interface cycle through e0
      std::vector<int> cycle;
      int e = e0;
      bool closed = false;
      int guard = int(bm.edges.size()) + 4;
      while (e >= 0 && --guard > 0) {
        cycle.push_back(e);
        e = data.out_edge[data.head[e]];
        if (e == e0) {
          closed = true;
          break;
        }
      }
      if (!closed)
        throw ModelError("interface walk from the path did not close");
      for (int k : cycle) loop_edge_seen[k] = 1;
      found_here.push_back(loop_from_fk_walk(d, data, cycle, d.mesh()));
    }
    // discovered loops wall off the pocket like the path does
    for (const Loop& l : found_here)
      for (const QPoint& p : l.points) {
        int w = bm.vertex_at(p);
        if (w >= 0) on_path[w] = 1;
      }
    for (Loop& l : found_here) result.loops.push_back(l);

    // components of the pocket minus the path and the closed loops
    std::vector<char> seen(bm.vertices.size(), 0);
    for (int v = 0; v < int(bm.vertices.size()); ++v) {
      if (!in_pocket[v] || on_path[v] || seen[v]) continue;
      std::vector<int> comp{v};
      seen[v] = 1;
      for (size_t h = 0; h < comp.size(); ++h) {
        QPoint p = bm.vertices[comp[h]];
        for (QPoint s : {QPoint{2, 0}, QPoint{-2, 0}, QPoint{0, 2},
                         QPoint{0, -2}}) {
          int w = bm.vertex_at(p + s);
          if (w < 0 || !in_pocket[w] || on_path[w] || seen[w]) continue;
          seen[w] = 1;
          comp.push_back(w);
        }
      }
      if (bm_diameter(comp) < epsilon) continue;
      // wired components lie outside every discovered loop; free ones
      // (cut-out interiors) are skipped
      bool inside = false;
      for (const Loop& l : result.loops)
        if (winding_odd(l.points, bm.vertices[comp.front()])) {
          inside = true;
          break;
        }
      if (inside) continue;
      std::vector<char> mask(bm.vertices.size(), 0);
      for (int w : comp) mask[w] = 1;
      pockets.push_back(std::move(mask));
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// dobrushin interface

std::vector<int> dobrushin_interface(const DiscreteDomain& region,
                                     std::pair<int, int> wired_arc,
                                     std::pair<int, int> free_arc,
                                     const std::vector<char>& open_edges) {
  int n = int(region.boundary_edges().size());
  auto arc_len = [&](std::pair<int, int> arc) {
    return ((arc.second - arc.first) % n + n) % n;
  };
  int lw = arc_len(wired_arc), lf = arc_len(free_arc);
  if (lw == 0 || lf == 0)
    throw ModelError("both boundary arcs must be nonempty");
  if (lw + lf != n || free_arc.first != wired_arc.second ||
      wired_arc.first != free_arc.second)
    throw ModelError("arcs must partition the boundary circuit");

  std::vector<char> none_rule(region.n_edges(), 0);
  std::vector<char> eo(open_edges.begin(), open_edges.end());
  for (int k = wired_arc.first; k != wired_arc.second; k = (k + 1) % n) {
    int e = region.boundary_edges()[k];
    none_rule[e] = 1;
    eo[e] = 1;  // wired arc edges conditioned open
  }
  FkInterfaceData data = fk_interface_data(region, eo, none_rule);

  // the interface is a union of loops plus one open path between the two
  // junction vertices (in-degree/out-degree mismatch of exactly one)
  int start = -1, end = -1;
  for (int v = 0; v < int(region.bimedial().vertices.size()); ++v) {
    bool has_out = data.out_edge[v] >= 0;
    bool has_in = data.in_edge[v] >= 0;
    if (has_out && !has_in) {
      if (start >= 0) throw ModelError("multiple interface sources");
      start = v;
    }
    if (has_in && !has_out) {
      if (end >= 0) throw ModelError("multiple interface sinks");
      end = v;
    }
  }
  if (start < 0 || end < 0)
    throw ModelError("no junction vertices; arcs degenerate");

  std::vector<int> path{start};
  int v = start;
  int guard = int(region.bimedial().edges.size()) + 4;
  while (v != end && --guard > 0) {
    int e = data.out_edge[v];
    if (e < 0) throw ModelError("dobrushin interface broke mid-path");
    v = data.head[e];
    path.push_back(v);
  }
  if (guard <= 0) throw ModelError("dobrushin interface did not terminate");
  return path;
}

}  // namespace ising
