#ifndef ISING_EXPLORATION_HPP
#define ISING_EXPLORATION_HPP

#include <cstdint>
#include <vector>

#include "ising/loops.hpp"
#include "ising/rng.hpp"

namespace ising {

// Recursive harvest of outermost Ising loops ---------------------------------

struct HarvestedLoop {
  Loop loop;
  int harvest_time = 0;  // iteration index, 1-based
  int cutout_id = -1;    // index into the iteration's cut-out list
};

struct ExplorationRegion {
  std::vector<int> vertices;  // primal vertex ids, sorted
  double diameter = 0.0;      // physical units
};

struct ExplorationIteration {
  ExplorationRegion region;
  std::vector<char> fk_open_edges;     // resampled bond state, per domain edge
  std::vector<Loop> fk_level1_loops;
  std::vector<CutOutDomain> cutouts;
  std::vector<HarvestedLoop> harvested;
  std::vector<ExplorationRegion> residual;   // recursed next iteration
  std::vector<ExplorationRegion> discarded;  // below the stopping diameter
};

struct ExplorationTrace {
  double epsilon = 0.0;
  uint64_t seed = 0;
  std::vector<ExplorationIteration> iterations;
  std::vector<HarvestedLoop> harvested;  // union over iterations
};

// Lemma-5.1-style recursive two-stage exploration: holding the spins fixed,
// repeatedly resample an Edwards-Sokal coupled FK state on each + region,
// take its outermost FK loops and cut-out domains, harvest every leftmost
// Ising loop touching a cut-out boundary circuit, and recurse into the
// regions left over inside the cut-outs until every residual region has
// diameter below epsilon. Requires + boundary conditions and epsilon > mesh.
ExplorationTrace harvest_outermost(const SpinConfiguration& config,
                                   const FKParams& params, double epsilon,
                                   Rng& rng);

// FK exploration path (wired boundary conditions) -----------------------------

enum class StepSide : uint8_t {
  interface,  // primal boundary cluster left, dual cluster right
  boundary    // sliding along the bi-medial boundary ring
};

struct ExplorationPath {
  std::vector<int> vertices;       // bimedial vertex ids, a ... b
  std::vector<StepSide> sides;     // one per step (vertices.size() - 1)
  int lookahead_overrides = 0;     // times feasibility vetoed the greedy turn
};

// Deterministic trace from a to b on the bi-medial graph: a simple path that
// keeps the primal boundary cluster on its left and a dual cluster on its
// right whenever possible (feasibility of still reaching b decides "possible").
ExplorationPath fk_exploration_path(const FKConfiguration& config, int a,
                                    int b);

// Special points of an exploration path ---------------------------------------

struct SpecialPoint {
  bool boundary = false;  // P_B (else P_D, a clockwise double point)
  int time = 0;           // index into path.vertices
  int partner = 0;        // P_D: earlier time t' the path pinches against;
                          // P_B: 0 (K runs from the start)
};

struct SpecialPointSet {
  std::vector<SpecialPoint> points;  // ordered by (time, partner desc)
};

// K(x) as a closed time interval [from, to] of path indices.
std::pair<int, int> subpath_interval(const SpecialPoint& x);

SpecialPointSet special_points(const ExplorationPath& path,
                               const FKConfiguration& config, int a, int b);

// epsilon-pinching family ------------------------------------------------------

struct PinchingFamily {
  std::vector<SpecialPoint> points;    // includes the endpoint b (as P_B at
                                       // the final time)
  std::vector<std::vector<int>> cells;  // P(x): path step indices per point
};

PinchingFamily pinching_family(const ExplorationPath& path,
                               const SpecialPointSet& specials, double epsilon,
                               const FKConfiguration& config);

// Recursive discovery of all level-1 FK loops ---------------------------------

// Discovers every level-1 FK loop of diameter >= epsilon by chordal
// explorations: trace gamma between far-apart boundary points, close each
// macroscopic mixed component's loop with the interface walked through it,
// then recurse into macroscopic wired pockets. Output loops are edge-sets on
// the domain's bimedial graph, identical to extract_fk_loops' level-1 loops.
LoopCollection explore_all_fk_level1(const FKConfiguration& config,
                                     double epsilon);

// Dobrushin interface ----------------------------------------------------------

// For a sub-domain whose boundary circuit is split into one wired and one
// free arc (half-open edge-position ranges), traces the unique bi-medial
// interface between the two arc junctions, keeping the wired-side primal
// cluster on its left. Arcs must both be nonempty.
std::vector<int> dobrushin_interface(const DiscreteDomain& region,
                                     std::pair<int, int> wired_arc,
                                     std::pair<int, int> free_arc,
                                     const std::vector<char>& open_edges);

}  // namespace ising

#endif
