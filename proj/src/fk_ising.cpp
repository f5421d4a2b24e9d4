#include "ising/fk_ising.hpp"

#include <algorithm>

namespace ising {

namespace {

bool wired_forced(const Graph& g, int edge) {
  return g.is_circuit_edge[edge] != 0;
}

int8_t bc_sign(SpinBc bc) { return bc == SpinBc::minus ? -1 : +1; }

}  // namespace

SpinConfiguration SpinConfiguration::all_plus(const DiscreteDomain& d,
                                              SpinBc bc) {
  SpinConfiguration c;
  c.graph = &d.graph();
  c.domain = &d;
  c.bc = bc;
  c.spins.assign(d.n_vertices(), +1);
  return c;
}

SpinConfiguration SpinConfiguration::make(const DiscreteDomain& d, SpinBc bc,
                                          std::vector<int8_t> spins) {
  SpinConfiguration c;
  c.graph = &d.graph();
  c.domain = &d;
  c.bc = bc;
  c.spins = std::move(spins);
  if (int(c.spins.size()) != d.n_vertices())
    throw ModelError("spin vector size does not match domain");
  apply_bc(c);
  return c;
}

std::vector<int> free_edges(const Graph& g, FKBc bc) {
  std::vector<int> out;
  for (int e = 0; e < int(g.edges.size()); ++e) {
    if (bc == FKBc::wired && wired_forced(g, e)) continue;
    out.push_back(e);
  }
  return out;
}

std::vector<int> free_vertices(const Graph& g, SpinBc bc) {
  std::vector<int> out;
  for (int v = 0; v < g.n_vertices; ++v) {
    if ((bc == SpinBc::plus || bc == SpinBc::minus) && g.is_boundary_vertex[v])
      continue;
    out.push_back(v);
  }
  return out;
}

void apply_bc(SpinConfiguration& c) {
  const Graph& g = *c.graph;
  if (c.bc == SpinBc::plus || c.bc == SpinBc::minus) {
    for (int v = 0; v < g.n_vertices; ++v)
      if (g.is_boundary_vertex[v]) c.spins[v] = bc_sign(c.bc);
  } else if (c.bc == SpinBc::mixed) {
    if (!c.domain) throw ModelError("mixed bc needs a domain");
    const auto& circuit = c.domain->boundary_vertices();
    int n = int(circuit.size());
    for (const BoundaryArc& arc : c.arcs) {
      for (int k = arc.from; k != arc.to; k = (k + 1) % n)
        c.spins[circuit[k]] = arc.sign;
    }
  }
}

void apply_bc(FKConfiguration& c) {
  if (c.bc != FKBc::wired) return;
  const Graph& g = *c.graph;
  for (int e = 0; e < int(g.edges.size()); ++e)
    if (wired_forced(g, e)) c.open_edges[e] = 1;
}

int64_t energy(const SpinConfiguration& c) {
  int64_t sum = 0;
  const Graph& g = *c.graph;
  for (auto [a, b] : g.edges) sum += int(c.spins[a]) * int(c.spins[b]);
  return -sum;
}

UnionFind clusters(const FKConfiguration& c) {
  const Graph& g = *c.graph;
  UnionFind uf(g.n_vertices);
  if (c.bc == FKBc::wired) {
    int first = -1;
    for (int v = 0; v < g.n_vertices; ++v) {
      if (!g.is_boundary_vertex[v]) continue;
      if (first < 0)
        first = v;
      else
        uf.unite(first, v);
    }
  } else if (c.bc == FKBc::mixed) {
    if (!c.domain) throw ModelError("mixed bc needs a domain");
    const auto& circuit = c.domain->boundary_vertices();
    int n = int(circuit.size());
    for (const BoundaryArc& arc : c.arcs) {
      if (arc.sign != +1) continue;  // only the wired arc is merged
      int prev = -1;
      for (int k = arc.from; k != arc.to; k = (k + 1) % n) {
        if (prev >= 0) uf.unite(circuit[prev], circuit[k]);
        prev = k;
      }
    }
  }
  for (int e = 0; e < int(g.edges.size()); ++e)
    if (c.open_edges[e]) uf.unite(g.edges[e].first, g.edges[e].second);
  return uf;
}

double fk_log_weight(const FKConfiguration& c, const FKParams& params) {
  const Graph& g = *c.graph;
  int64_t o = 0, cl = 0;
  for (int e : free_edges(g, c.bc)) {
    if (c.open_edges[e])
      o++;
    else
      cl++;
  }
  UnionFind uf = clusters(c);
  double k = double(uf.component_count());
  return o * std::log(params.p) + cl * std::log1p(-params.p) +
         k * std::log(params.q);
}

FKConfiguration dual_configuration(const FKConfiguration& c) {
  if (!c.domain) throw ModelError("dual_configuration needs a domain");
  const DiscreteDomain& d = *c.domain;
  if (!c.on_dual) {
    if (c.bc != FKBc::wired)
      throw ModelError(
          "dual_configuration requires wired boundary conditions");
    FKConfiguration out;
    out.graph = &d.dual_graph_view();
    out.domain = &d;
    out.bc = FKBc::free_bc;
    out.on_dual = true;
    out.open_edges.assign(d.dual().edges.size(), 0);
    for (size_t k = 0; k < d.dual().edges.size(); ++k)
      out.open_edges[k] = !c.open_edges[d.dual().primal_edge[k]];
    return out;
  }
  // inverse map: free configuration on the dual graph -> wired primal
  if (c.bc != FKBc::free_bc)
    throw ModelError("dual-graph configuration must carry free bc");
  FKConfiguration out;
  out.graph = &d.graph();
  out.domain = &d;
  out.bc = FKBc::wired;
  out.open_edges.assign(d.n_edges(), 0);
  for (size_t k = 0; k < d.dual().edges.size(); ++k)
    out.open_edges[d.dual().primal_edge[k]] = !c.open_edges[k];
  apply_bc(out);
  return out;
}

namespace {

// One Swendsen-Wang sweep on the bond state: cluster coins, then re-open
// agreeing edges. forced_sign pins the boundary cluster's coin (used when the
// chain targets +/- spin boundary conditions); 0 means no forcing.
void sw_sweep(const Graph& g, FKConfiguration& fk, double p, int8_t forced_sign,
              std::vector<int8_t>& spins, Rng& rng) {
  UnionFind uf = clusters(fk);
  spins.assign(g.n_vertices, 0);
  int boundary_root = -1;
  if (fk.bc == FKBc::wired) {
    for (int v = 0; v < g.n_vertices; ++v)
      if (g.is_boundary_vertex[v]) {
        boundary_root = uf.find(v);
        break;
      }
  }
  // Coins drawn in ascending root order for determinism.
  std::vector<int8_t> coin(g.n_vertices, 0);
  for (int v = 0; v < g.n_vertices; ++v) {
    int r = uf.find(v);
    if (coin[r] == 0) {
      coin[r] = rng.next_bool() ? +1 : -1;
      if (r == boundary_root && forced_sign != 0) coin[r] = forced_sign;
    }
    spins[v] = coin[r];
  }
  for (int e : free_edges(g, fk.bc)) {
    auto [a, b] = g.edges[e];
    fk.open_edges[e] = (spins[a] == spins[b]) && (rng.next_double() < p);
  }
}

}  // namespace

void sw_step(FKConfiguration& fk, const FKParams& params, Rng& rng) {
  std::vector<int8_t> scratch;
  sw_sweep(*fk.graph, fk, params.p, 0, scratch, rng);
}

void ising_gibbs_step(SpinConfiguration& s, const IsingParams& params,
                      Rng& rng) {
  FKBc fk_bc = (s.bc == SpinBc::plus || s.bc == SpinBc::minus)
                   ? FKBc::wired
                   : FKBc::free_bc;
  FKConfiguration fk =
      fk_from_ising(s, FKParams::from_beta(params.beta), fk_bc, rng);
  SpinConfiguration next = ising_from_fk(fk, s.bc, rng);
  s.spins = std::move(next.spins);
}

FKConfiguration sample_fk(const Graph& g, FKBc bc, const FKParams& params,
                          int steps, Rng& rng) {
  if (params.q != 2.0)
    throw ModelError("sample_fk supports q = 2 only (FK-Ising)");
  if (steps < 1) throw ModelError("steps must be at least 1");
  if (bc == FKBc::mixed) throw ModelError("sample_fk: mixed bc not supported");
  FKConfiguration fk;
  fk.graph = &g;
  fk.bc = bc;
  fk.open_edges.assign(g.edges.size(), 1);
  apply_bc(fk);
  std::vector<int8_t> scratch;
  for (int s = 0; s < steps; ++s) sw_sweep(g, fk, params.p, 0, scratch, rng);
  return fk;
}

FKConfiguration sample_fk(const DiscreteDomain& domain, FKBc bc,
                          const FKParams& params, int steps, Rng& rng) {
  FKConfiguration fk = sample_fk(domain.graph(), bc, params, steps, rng);
  fk.domain = &domain;
  return fk;
}

SpinConfiguration ising_from_fk(const FKConfiguration& c, SpinBc target_bc,
                                Rng& rng) {
  const Graph& g = *c.graph;
  if ((target_bc == SpinBc::plus || target_bc == SpinBc::minus) &&
      c.bc != FKBc::wired)
    throw ModelError("+/- spin bc requires a wired FK configuration");
  SpinConfiguration out;
  out.graph = c.graph;
  out.domain = c.domain;
  out.bc = target_bc;
  out.spins.assign(g.n_vertices, 0);
  UnionFind uf = clusters(c);
  int boundary_root = -1;
  if (c.bc == FKBc::wired) {
    for (int v = 0; v < g.n_vertices; ++v)
      if (g.is_boundary_vertex[v]) {
        boundary_root = uf.find(v);
        break;
      }
  }
  std::vector<int8_t> coin(g.n_vertices, 0);
  for (int v = 0; v < g.n_vertices; ++v) {
    int r = uf.find(v);
    if (coin[r] == 0) {
      coin[r] = rng.next_bool() ? +1 : -1;
      if (r == boundary_root &&
          (target_bc == SpinBc::plus || target_bc == SpinBc::minus))
        coin[r] = bc_sign(target_bc);
    }
    out.spins[v] = coin[r];
  }
  return out;
}

FKConfiguration fk_from_ising(const SpinConfiguration& c,
                              const FKParams& params, FKBc target_bc,
                              Rng& rng) {
  const Graph& g = *c.graph;
  if (target_bc == FKBc::wired) {
    int8_t sign = 0;
    for (int v = 0; v < g.n_vertices; ++v) {
      if (!g.is_boundary_vertex[v]) continue;
      if (sign == 0)
        sign = c.spins[v];
      else if (c.spins[v] != sign)
        throw ModelError("wired FK target requires constant boundary spins");
    }
  }
  FKConfiguration out;
  out.graph = c.graph;
  out.domain = c.domain;
  out.bc = target_bc;
  out.open_edges.assign(g.edges.size(), 0);
  for (int e : free_edges(g, target_bc)) {
    auto [a, b] = g.edges[e];
    out.open_edges[e] =
        (c.spins[a] == c.spins[b]) && (rng.next_double() < params.p);
  }
  apply_bc(out);
  return out;
}

SpinConfiguration sample_ising(const Graph& g, SpinBc bc,
                               const IsingParams& params, int steps, Rng& rng) {
  if (steps < 1) throw ModelError("steps must be at least 1");
  if (bc == SpinBc::mixed)
    throw ModelError("sample_ising: mixed bc not supported");
  FKBc fk_bc =
      (bc == SpinBc::plus || bc == SpinBc::minus) ? FKBc::wired : FKBc::free_bc;
  int8_t forced = (bc == SpinBc::free_bc) ? 0 : bc_sign(bc);
  FKConfiguration fk;
  fk.graph = &g;
  fk.bc = fk_bc;
  fk.open_edges.assign(g.edges.size(), 1);
  apply_bc(fk);
  double p = FKParams::from_beta(params.beta).p;
  std::vector<int8_t> spins;
  for (int s = 0; s < steps; ++s) sw_sweep(g, fk, p, forced, spins, rng);
  SpinConfiguration out;
  out.graph = &g;
  out.bc = bc;
  out.spins = spins;
  apply_bc(out);  // boundary forced even if the last sweep's coin disagreed
  return out;
}

SpinConfiguration sample_ising(const DiscreteDomain& domain, SpinBc bc,
                               const IsingParams& params, int steps, Rng& rng) {
  SpinConfiguration c = sample_ising(domain.graph(), bc, params, steps, rng);
  c.domain = &domain;
  return c;
}

ExactTable enumerate_exact(const Graph& g, Model model, int bc_tag,
                           double beta_or_p) {
  ExactTable table;
  std::vector<double> logw;
  if (model == Model::ising) {
    SpinBc bc = SpinBc(bc_tag);
    table.dof = free_vertices(g, bc);
    if (table.dof.size() > 20) throw ModelError("state space above 2^20");
    size_t n_states = size_t(1) << table.dof.size();
    logw.resize(n_states);
    std::vector<int8_t> spins(g.n_vertices, bc == SpinBc::minus ? -1 : +1);
    double beta = beta_or_p;
    for (size_t s = 0; s < n_states; ++s) {
      for (size_t k = 0; k < table.dof.size(); ++k)
        spins[table.dof[k]] = (s >> k) & 1 ? +1 : -1;
      int64_t sum = 0;
      for (auto [a, b] : g.edges) sum += int(spins[a]) * int(spins[b]);
      logw[s] = beta * double(sum);  // exp(-beta H), H = -sum
    }
  } else {
    FKBc bc = FKBc(bc_tag);
    table.dof = free_edges(g, bc);
    if (table.dof.size() > 20) throw ModelError("state space above 2^20");
    size_t n_states = size_t(1) << table.dof.size();
    logw.resize(n_states);
    double p = beta_or_p;
    FKConfiguration c;
    c.graph = &g;
    c.bc = bc;
    c.open_edges.assign(g.edges.size(), 0);
    apply_bc(c);
    for (size_t s = 0; s < n_states; ++s) {
      int64_t o = 0;
      for (size_t k = 0; k < table.dof.size(); ++k) {
        c.open_edges[table.dof[k]] = (s >> k) & 1;
        o += (s >> k) & 1;
      }
      int64_t cl = int64_t(table.dof.size()) - o;
      UnionFind uf = clusters(c);
      logw[s] = o * std::log(p) + cl * std::log1p(-p) +
                double(uf.component_count()) * std::log(2.0);
    }
  }
  // normalize via log-sum-exp
  double mx = logw[0];
  for (double v : logw) mx = std::max(mx, v);
  double z = 0;
  for (double v : logw) z += std::exp(v - mx);
  table.prob.resize(logw.size());
  for (size_t s = 0; s < logw.size(); ++s)
    table.prob[s] = std::exp(logw[s] - mx) / z;
  return table;
}

uint32_t state_index(const ExactTable& t, const SpinConfiguration& c) {
  uint32_t s = 0;
  for (size_t k = 0; k < t.dof.size(); ++k)
    if (c.spins[t.dof[k]] > 0) s |= uint32_t(1) << k;
  return s;
}

uint32_t state_index(const ExactTable& t, const FKConfiguration& c) {
  uint32_t s = 0;
  for (size_t k = 0; k < t.dof.size(); ++k)
    if (c.open_edges[t.dof[k]]) s |= uint32_t(1) << k;
  return s;
}

}  // namespace ising
