#ifndef HYPCENSUS_CENSUS_HPP_
#define HYPCENSUS_CENSUS_HPP_

#include <map>
#include <string>
#include <vector>

#include "hypcensus/geosolve.hpp"
#include "hypcensus/kojima.hpp"
#include "hypcensus/tricomb.hpp"

namespace hypcensus {

/// Environment variable naming the directory for append-only result logs.
inline constexpr const char* kLogDirEnv = "HYPCENSUS_LOG_DIR";

struct CensusRecord {
  std::string signature;  // canonical decomposition signature (dedup key)
  double volume = 0;
  int complexity = 0;
  BoundaryPattern boundary;
  std::map<std::string, int> cell_summary;  // Kojima cell type -> count
  std::string provenance;                   // "newton" | "ansatz" | "octahedral"
  std::vector<std::string> source_pairings; // pairing text per source
};

struct CensusFailure {
  std::string pairing_text;
  std::string stage;  // "solve" | "canonize"
  std::string evidence;
};

struct CensusConfig {
  SolverConfig solver;
  bool extended = false;   // permit n = 3 for run_census
  std::string log_dir;     // overrides the environment variable when set
};

struct CensusResult {
  int n = 0;
  int candidate_count = 0;
  std::vector<CensusRecord> records;
  std::vector<CensusFailure> failures;
};

/// Full pipeline for complexity n: enumerate, geometrize, canonize, dedup,
/// and exclude manifolds already present at complexity n-1.
CensusResult run_census(int n, const CensusConfig& config = {});

/// One record per isomorphism class of all-parities simplicial pairings,
/// carrying the octahedral structure: volume n*v_O, complexity 10n.
CensusResult run_octahedral_census(int n, const CensusConfig& config = {});

/// Merges signature-equal records; volume disagreement beyond 1e-6 among
/// merged records throws VolumeMismatchOnMerge.
std::vector<CensusRecord> dedup(std::vector<CensusRecord> records);

struct VolumeStats {
  int manifold_count = 0;
  int value_count = 0;  // distinct volumes after rounding to 1e-6
  double min_volume = 0;
  double max_volume = 0;
  int max_multiplicity = 0;
};

VolumeStats volume_stats(const std::vector<CensusRecord>& records);

std::string boundary_label(const BoundaryPattern& boundary);

std::string to_csv(const CensusResult& result);
std::string to_json(const CensusResult& result);

}  // namespace hypcensus

#endif
