#ifndef ISING_SERIALIZE_HPP
#define ISING_SERIALIZE_HPP

#include <memory>
#include <string>

#include "ising/exploration.hpp"
#include "ising/loops.hpp"
#include "ising/metric.hpp"

namespace ising {

struct SerializeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// FNV-1a 64-bit content hash, hex-encoded; stable across platforms.
std::string content_hash(const std::string& bytes);

// Domain: {"mesh": "<decimal string>", "faces": [[i,j], ...]}
std::string domain_to_json(const DiscreteDomain& d);
std::shared_ptr<DiscreteDomain> domain_from_json(const std::string& text);

// Configurations embed their domain and reference it by content hash.
// Bitstrings follow the deterministic vertex/edge index order: '1' = +1 spin
// or open edge.
std::string spin_config_to_json(const SpinConfiguration& c);
std::string fk_config_to_json(const FKConfiguration& c);

struct LoadedSpinConfig {
  std::shared_ptr<DiscreteDomain> domain;
  SpinConfiguration config;
};
struct LoadedFKConfig {
  std::shared_ptr<DiscreteDomain> domain;
  FKConfiguration config;
};
LoadedSpinConfig spin_config_from_json(const std::string& text);
LoadedFKConfig fk_config_from_json(const std::string& text);

// Loops: list of {kind, chirality, level, points:[[x,y],...]} in embedded
// (physical) coordinates.
std::string loops_to_json(const LoopCollection& c);
LoopCollection loops_from_json(const std::string& text);
std::vector<PolylineLoop> polylines_from_loops_json(const std::string& text);

std::string trace_to_json(const ExplorationTrace& t, const DiscreteDomain& d);

std::string matching_to_json(const MatchingResult& m);

// Run manifest: command, parameters, seed, input hashes, output files.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> input_hashes;
  std::vector<std::string> outputs;
};
std::string manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

}  // namespace ising

#endif
