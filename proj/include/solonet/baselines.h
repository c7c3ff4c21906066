// Size-matched random graphs and the small-world assessment.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "solonet/network.h"

namespace solonet {

struct TooManyEdges : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateNetwork : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Identity of the generator backing randomGraph; recorded in reports so a
/// seed pins the exact byte stream.
inline constexpr const char* kRngAlgorithm = "mt19937_64";

/// Deterministic sub-seed for one replicate (splitmix64 over seed and index).
std::uint64_t deriveSubSeed(std::uint64_t seed, std::uint64_t index);

/// Uniform simple undirected G(n, m): exactly n nodes and m edges, no
/// self-loops, reproducible bit-for-bit from the seed on any platform.
/// Returned as a SoloNetwork holding one directed edge per sampled pair, so
/// its undirected projection is the sampled graph. Throws TooManyEdges.
SoloNetwork randomGraph(int n, std::int64_t m, std::uint64_t seed);

enum class SmallWorldVerdict { SmallWorld, NotSmallWorld, Indeterminate };

const char* verdictName(SmallWorldVerdict verdict);

/// Operationalization of "clustered like a lattice, short paths like a
/// random graph". Factors apply to the random-graph replicate means.
struct SmallWorldThresholds {
  double ccFactor = 2.0;        // SmallWorld needs cc >= ccFactor * ccRg
  double distFactor = 1.5;      // ... and avgDist <= distFactor * avgDistRg
  double distRejectFactor = 2.0;  // NotSmallWorld when avgDist > this * avgDistRg
};

struct SmallWorldReport {
  double cc = 0;
  double ccRg = 0;
  double avgDist = 0;
  double avgDistRg = 0;
  int replicates = 0;
  std::uint64_t seed = 0;
  int n = 0;
  std::int64_t m = 0;
  SmallWorldVerdict verdict = SmallWorldVerdict::Indeterminate;
  std::string rng = kRngAlgorithm;
};

/// Compares the network with `replicates` random graphs matched on the
/// (n, m) of its undirected projection. Replicate distances use
/// connected-pair averaging. Throws DegenerateNetwork when the largest
/// component has fewer than 3 nodes or replicates < 1.
SmallWorldReport smallWorldAssessment(const SoloNetwork& net, int replicates,
                                      std::uint64_t seed,
                                      const SmallWorldThresholds& thresholds = {});

std::string smallWorldReportToJson(const SmallWorldReport& report);

}  // namespace solonet
