#ifndef ISING_STATS_HPP
#define ISING_STATS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ising/exploration.hpp"
#include "ising/loops.hpp"

namespace ising {

struct EstimatorReport {
  std::string name;
  std::map<std::string, double> parameters;
  uint64_t seed = 0;
  double estimate = 0.0;
  double standard_error = 0.0;
  std::vector<double> samples;  // per-sample records

  std::string to_csv() const;  // one row per sample plus a summary row
};

// P(E_delta(eta, epsilon, I)): a weak minus-spin cluster links the
// eta-neighborhood of the boundary arc to the complement of its
// epsilon-neighborhood. arc = half-open range of boundary circuit vertex
// positions ({0, n} = the whole boundary). sampler draws one + bc spin
// configuration per call.
struct BoundaryGapParams {
  double eta;
  double epsilon;
  std::pair<int, int> arc;
  int samples;
};
EstimatorReport boundary_gap_probability(
    const DiscreteDomain& domain, const BoundaryGapParams& params,
    const std::function<SpinConfiguration(Rng&)>& sampler, uint64_t seed);

// Event evaluator shared with the enumeration cross-check.
bool boundary_gap_event(const SpinConfiguration& config, double eta,
                        double epsilon, std::pair<int, int> arc);

// Closeness of leftmost and rightmost extractions ------------------------------

struct ClosenessPair {
  int rightmost_loop = -1;           // index into the rightmost collection
  std::vector<int> leftmost_loops;   // indices into the leftmost collection
  double max_component_diameter = 0.0;
};

struct ClosenessReport {
  std::vector<ClosenessPair> pairs;
  double max_component_diameter = 0.0;
  int violations = 0;  // macroscopic rightmost loops with no leftmost partner
};

// Pairs each rightmost level-1 loop of diameter >= epsilon with the leftmost
// level-1 loops sharing its minus region and measures the connected
// components of the symmetric difference of their edge sets.
ClosenessReport leftmost_rightmost_closeness(const SpinConfiguration& config,
                                             double epsilon);

// Loop-size spectrum ------------------------------------------------------------

struct LoopSizeSpectrum {
  std::vector<double> diameters;           // sorted descending
  std::vector<double> thresholds;          // dyadic
  std::vector<int> count_at_least;         // per threshold
  std::map<int, int> count_by_level;
};
LoopSizeSpectrum loop_size_spectrum(const LoopCollection& collection);

// Box-counting dimension ---------------------------------------------------------

struct BoxCountEstimate {
  std::vector<double> scales;
  std::vector<int> counts;
  double slope = 0.0;  // least squares of log N vs log(1/s)
};
// Requires loop.diameter >= 16 * mesh and scales spanning >= 2 octaves
// within [mesh, diameter/4]; pass empty scales to use dyadic defaults.
BoxCountEstimate box_counting_dimension(const Loop& loop, double mesh,
                                        std::vector<double> scales = {});
BoxCountEstimate box_counting_dimension(
    const std::vector<std::pair<double, double>>& polyline,
    std::vector<double> scales);

// Spatial Markov property check ---------------------------------------------------

struct MarkovCheckReport {
  int conditioning_events = 0;
  bool enough_events = false;      // >= 1000 occurrences of the pattern
  double max_z = 0.0;              // worst per-state z-score vs enumeration
  double independence_max_z = 0.0; // two cut-outs: joint vs product marginals
  bool pass = false;
};

// Samples wired FK configurations, conditions on a fixed pattern of
// non-degenerate level-1 loops, and compares the conditional law inside the
// cut-outs with free-bc enumeration (and, with two cut-outs, checks
// independence). The pattern is realized by forcing `pattern_closed` edges
// closed on a reference configuration.
MarkovCheckReport markov_property_check(const DiscreteDomain& domain,
                                        const std::vector<int>& pattern_closed,
                                        int samples, uint64_t seed);

// Shared small-sample helpers ------------------------------------------------------

// Exact binomial standard error for a proportion.
double binomial_se(double phat, int n);
// z-score of observed count k against Binomial(n, p).
double binomial_z(int64_t k, int64_t n, double p);

}  // namespace ising

#endif
