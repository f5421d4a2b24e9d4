#ifndef ISING_FK_ISING_HPP
#define ISING_FK_ISING_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ising/lattice.hpp"
#include "ising/rng.hpp"
#include "ising/union_find.hpp"

namespace ising {

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IsingParams {
  double beta;
  // beta_c = 0.5 * ln(sqrt(2) + 1)
  static double beta_c() { return 0.5 * std::log(std::sqrt(2.0) + 1.0); }
  static IsingParams critical() { return {beta_c()}; }
};

struct FKParams {
  double p;
  double q = 2.0;
  // p_sd = sqrt(q) / (1 + sqrt(q)) at q = 2
  static double p_sd() { return std::sqrt(2.0) / (1.0 + std::sqrt(2.0)); }
  static FKParams self_dual() { return {p_sd(), 2.0}; }
  static FKParams from_beta(double beta) {
    return {1.0 - std::exp(-2.0 * beta), 2.0};
  }
};

enum class SpinBc : uint8_t { free_bc, plus, minus, mixed };
enum class FKBc : uint8_t { wired, free_bc, mixed };

// A labelled boundary arc: half-open range [from, to) of positions along the
// domain's boundary circuit (vertex positions for spins, edge positions for
// bonds), wrapping cyclically.
struct BoundaryArc {
  int from = 0;
  int to = 0;
  int8_t sign = +1;  // spin label, or +1 = wired / -1 = free for FK arcs
};

struct SpinConfiguration {
  const Graph* graph = nullptr;
  const DiscreteDomain* domain = nullptr;  // null for bare graphs
  std::vector<int8_t> spins;               // +1 / -1 per vertex
  SpinBc bc = SpinBc::free_bc;
  std::vector<BoundaryArc> arcs;           // for bc == mixed

  static SpinConfiguration all_plus(const DiscreteDomain& d, SpinBc bc);
  static SpinConfiguration make(const DiscreteDomain& d, SpinBc bc,
                                std::vector<int8_t> spins);
};

struct FKConfiguration {
  const Graph* graph = nullptr;
  const DiscreteDomain* domain = nullptr;
  std::vector<char> open_edges;            // per edge of *graph
  FKBc bc = FKBc::free_bc;
  bool on_dual = false;                    // lives on domain->dual_graph_view()
  std::vector<BoundaryArc> arcs;           // for bc == mixed
};

// Degrees of freedom -------------------------------------------------------

// Edges that are not forced by the boundary condition: wired bc holds the
// boundary circuit edges open; all interior edges (including chords between
// two boundary vertices) stay free.
std::vector<int> free_edges(const Graph& g, FKBc bc);

// Vertices whose spins are not forced by the boundary condition.
std::vector<int> free_vertices(const Graph& g, SpinBc bc);

// Enforce forced state (boundary spins, wired edges) on a configuration.
void apply_bc(SpinConfiguration& c);
void apply_bc(FKConfiguration& c);

// Core operations ----------------------------------------------------------

int64_t energy(const SpinConfiguration& c);

// Union-find over open-edge connectivity; wired bc pre-merges all boundary
// vertices. Isolated vertices count as singleton clusters.
UnionFind clusters(const FKConfiguration& c);

// o ln p + c ln(1-p) + k ln q, with o and c counted over free edges.
double fk_log_weight(const FKConfiguration& c, const FKParams& params);

// Planar duality: wired primal <-> free dual (the inverse map is applied when
// given a free configuration living on the dual graph). Rejects free primal
// input.
FKConfiguration dual_configuration(const FKConfiguration& c);

// Swendsen-Wang alternation preserving the FK measure. Deterministic for a
// given (seed, steps). q must equal 2.
FKConfiguration sample_fk(const DiscreteDomain& domain, FKBc bc,
                          const FKParams& params, int steps, Rng& rng);
FKConfiguration sample_fk(const Graph& g, FKBc bc, const FKParams& params,
                          int steps, Rng& rng);

// Advance an existing chain by one sweep (cluster coins + edge resampling).
void sw_step(FKConfiguration& fk, const FKParams& params, Rng& rng);
// One Gibbs alternation on spins, in place.
void ising_gibbs_step(SpinConfiguration& s, const IsingParams& params,
                      Rng& rng);

// Edwards-Sokal coupling, both directions.
SpinConfiguration ising_from_fk(const FKConfiguration& c, SpinBc target_bc,
                                Rng& rng);
FKConfiguration fk_from_ising(const SpinConfiguration& c,
                              const FKParams& params, FKBc target_bc,
                              Rng& rng);

// Spin-state Gibbs chain: alternate fk_from_ising / ising_from_fk.
SpinConfiguration sample_ising(const DiscreteDomain& domain, SpinBc bc,
                               const IsingParams& params, int steps, Rng& rng);
SpinConfiguration sample_ising(const Graph& g, SpinBc bc,
                               const IsingParams& params, int steps, Rng& rng);

// Exact enumeration oracle --------------------------------------------------

enum class Model : uint8_t { ising, fk };

struct ExactTable {
  // dof[k] is the vertex (ising) or edge (fk) toggled by bit k of a state.
  std::vector<int> dof;
  std::vector<double> prob;  // normalized, size 2^dof.size()
};

// Brute-force Boltzmann / random-cluster weights over all states. Rejects
// state spaces above 2^20.
ExactTable enumerate_exact(const Graph& g, Model model, int bc_tag,
                           double beta_or_p);

inline ExactTable enumerate_exact_ising(const Graph& g, SpinBc bc,
                                        const IsingParams& p) {
  return enumerate_exact(g, Model::ising, int(bc), p.beta);
}
inline ExactTable enumerate_exact_fk(const Graph& g, FKBc bc,
                                     const FKParams& p) {
  return enumerate_exact(g, Model::fk, int(bc), p.p);
}

// State index of a configuration within an ExactTable.
uint32_t state_index(const ExactTable& t, const SpinConfiguration& c);
uint32_t state_index(const ExactTable& t, const FKConfiguration& c);

}  // namespace ising

#endif
