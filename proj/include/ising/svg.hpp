#ifndef ISING_SVG_HPP
#define ISING_SVG_HPP

#include <string>

#include "ising/loops.hpp"

namespace ising {

// Deterministic SVG renders: domain grid, spins or bonds when given, and
// loops colored by level.
std::string render_svg(const DiscreteDomain& domain,
                       const SpinConfiguration* spins,
                       const FKConfiguration* bonds,
                       const LoopCollection* loops);

}  // namespace ising

#endif
