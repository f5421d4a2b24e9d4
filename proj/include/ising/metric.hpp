#ifndef ISING_METRIC_HPP
#define ISING_METRIC_HPP

#include <utility>
#include <vector>

#include "ising/loops.hpp"

namespace ising {

// Oriented loop as a cyclic polyline in physical coordinates. A single point
// is a trivial (point) loop.
struct PolylineLoop {
  std::vector<std::pair<double, double>> points;
};

PolylineLoop to_polyline(const Loop& loop, double mesh);

// d_Gamma: sup-norm distance up to orientation-respecting reparametrization,
// computed as the cyclic discrete Frechet distance minimized over
// starting-offset alignment.
double loop_distance(const PolylineLoop& a, const PolylineLoop& b);

double loop_diameter(const PolylineLoop& a);

struct MatchingResult {
  double value = 0.0;
  std::vector<std::pair<int, int>> matching;  // (index in A, index in B)
  std::vector<int> unmatched_a;
  std::vector<int> unmatched_b;
};

// d_X: exact optimum over partial matchings of
//   max( max matched d_Gamma, max unmatched diameter ),
// via threshold feasibility (bottleneck bipartite matching). Deterministic:
// ties resolve to the smallest threshold and the first-found witness.
MatchingResult collection_distance(const std::vector<PolylineLoop>& a,
                                   const std::vector<PolylineLoop>& b);

}  // namespace ising

#endif
