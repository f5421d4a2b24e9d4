#ifndef ISING_LOOPS_HPP
#define ISING_LOOPS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ising/fk_ising.hpp"
#include "ising/geometry.hpp"
#include "ising/lattice.hpp"

namespace ising {

enum class LoopKind : uint8_t { ising, fk };
enum class Chirality : uint8_t { leftmost, rightmost, plain };
enum class Orientation : uint8_t { clockwise, counterclockwise };

struct Loop {
  LoopKind kind = LoopKind::ising;
  Chirality chirality = Chirality::plain;
  Orientation orientation = Orientation::clockwise;
  int level = 0;  // 0 = unset
  // Cyclic vertex sequence in quarter coordinates (closing edge implicit).
  std::vector<QPoint> points;

  // Canonical edge identity: the interior primal edges crossed by an Ising
  // loop, or the bimedial edge indices of an FK loop. Sorted.
  std::vector<int> edge_set;

  // Ising annotations: vertices adjacent along each side.
  std::vector<int> plus_side;   // sorted unique vertex ids (+ on the left)
  std::vector<int> minus_side;  // sorted unique vertex ids (- on the right)

  // FK annotations.
  int primal_cluster = -1;  // union-find root of the primal side

  // A lattice point strictly inside the loop (integer or half-integer
  // sublattice, never on a loop), usable for winding queries.
  QPoint inside_point{0, 0};

  double diameter = 0.0;  // Euclidean, physical units
};

struct LoopCollection {
  LoopKind kind = LoopKind::ising;
  Chirality chirality = Chirality::plain;
  double mesh = 1.0;
  std::vector<Loop> loops;
  std::string provenance;
};

// Ising interface loops ------------------------------------------------------

// Decomposes the +/- interface on the dual graph into edge-disjoint loops.
// At spin-checkerboard corners the connection turns around the minus corner
// for leftmost extraction and around the plus corner for rightmost. With
// free boundary conditions, interface arcs that end on the boundary are not
// loops and are dropped.
LoopCollection extract_ising_loops(const SpinConfiguration& config,
                                   Chirality chirality);

// Assigns levels by depth in the geometric containment forest (level 1 =
// maximal loops). Containment is exact winding-number nesting.
LoopCollection classify_ising_levels(LoopCollection collection,
                                     const SpinConfiguration& config);

// FK interface loops ---------------------------------------------------------

// Interface edges are the bimedial edges that cross neither a primal open
// edge nor a dual open edge; under wired bc the missing dual slots along the
// boundary count as closed (interfaces hug the boundary cluster), under free
// bc as open.
LoopCollection extract_fk_loops(const FKConfiguration& config);

LoopCollection classify_fk_levels(LoopCollection collection);

// Generalized tracer used by extract_fk_loops, the exploration module, and
// region resampling: edge_open has one entry per primal edge of the domain
// (boundary edges included); none-crossing bimedial edges are interface iff
// the none_rule entry of their boundary edge is 1 (size = n primal edges, or
// empty meaning all 1 = wired).
LoopCollection trace_fk_interface(const DiscreteDomain& domain,
                                  const std::vector<char>& edge_open,
                                  const std::vector<char>& none_rule,
                                  double mesh);

// The directed interface structure itself. Every bimedial vertex carries at
// most one outgoing and one incoming interface edge (primal side on the
// left), so loops and Dobrushin paths follow unique successors.
struct FkInterfaceData {
  std::vector<char> iface;  // per bimedial edge
  std::vector<int> tail, head;  // directed endpoints; -1 for non-interface
  std::vector<int> out_edge, in_edge;  // per bimedial vertex; -1 if none
};
FkInterfaceData fk_interface_data(const DiscreteDomain& domain,
                                  const std::vector<char>& edge_open,
                                  const std::vector<char>& none_rule);

// Side geometry of a bimedial interface edge: the nearest primal-material
// point and dual-material point (both on even quarter-coordinates).
void bimedial_edge_sides(const DiscreteDomain& d, const BimedialEdge& be,
                         QPoint& primal_side, QPoint& dual_side);

// Assemble a Loop from an ordered walk of directed interface edge ids.
Loop loop_from_fk_walk(const DiscreteDomain& d, const FkInterfaceData& data,
                       const std::vector<int>& walk, double mesh);

// Cut-out domains ------------------------------------------------------------

struct CutOutDomain {
  Loop loop;                  // enclosing level-1 FK loop
  std::vector<int> vertices;  // primal vertices strictly inside, sorted
  std::vector<int> faces;     // faces with all four corners inside, sorted
  bool degenerate = false;    // no enclosed primal vertices
};

// Requires wired bc. One entry per level-1 FK loop; degenerate cut-outs are
// retained and flagged.
std::vector<CutOutDomain> cut_out_domains(const FKConfiguration& config);

// Containment ----------------------------------------------------------------

// Odd winding number of target around loop. Throws if the target lies
// exactly on the loop (perturb by a quarter mesh first).
bool containment(const Loop& loop, const QPoint& target);
// True iff every vertex of target has odd winding w.r.t. loop.
bool containment(const Loop& loop, const Loop& target);

// Batched point-in-loop queries over a whole collection (used for level
// classification and cut-out extraction).
class ContainmentIndex {
 public:
  explicit ContainmentIndex(const std::vector<Loop>& loops);
  // ids of loops strictly containing p (p must avoid all loops).
  std::vector<int> enclosing(const QPoint& p) const;
  int count_enclosing(const QPoint& p) const;

 private:
  struct Entry {
    int32_t x;
    int32_t id;
  };
  // vertical segment crossings per y row
  std::unordered_map<int32_t, std::vector<Entry>> rows_;
};

}  // namespace ising

#endif
