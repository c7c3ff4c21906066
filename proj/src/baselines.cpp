#include "solonet/baselines.h"

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include <json.hpp>

#include "solonet/metrics.h"

namespace solonet {

namespace {

std::uint64_t splitmix64(std::uint64_t state) {
  state += 0x9E3779B97F4A7C15ULL;
  state = (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9ULL;
  state = (state ^ (state >> 27)) * 0x94D049BB133111EBULL;
  return state ^ (state >> 31);
}

// Unbiased bounded draw; uniform_int_distribution is not portable across
// standard library implementations, this is.
std::uint64_t uniformBelow(std::mt19937_64& rng, std::uint64_t bound) {
  std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    std::uint64_t draw = rng();
    if (draw >= threshold) return draw % bound;
  }
}

}  // namespace

std::uint64_t deriveSubSeed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ (index + 1));
}

SoloNetwork randomGraph(int n, std::int64_t m, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("randomGraph: n must be >= 1");
  std::int64_t maxEdges =
      static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;
  if (m < 0 || m > maxEdges) {
    throw TooManyEdges("m = " + std::to_string(m) + " outside 0.." +
                       std::to_string(maxEdges) + " for n = " + std::to_string(n));
  }

  SoloNetwork net;
  net.setMetadata("", "random");
  for (int i = 0; i < n; ++i) {
    net.addNode("v" + std::to_string(i));
  }

  std::mt19937_64 rng(seed);
  if (m > maxEdges / 2) {
    // Dense regime: partial Fisher-Yates over the full pair list.
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(maxEdges));
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
    }
    for (std::int64_t i = 0; i < m; ++i) {
      std::uint64_t j = static_cast<std::uint64_t>(i) +
                        uniformBelow(rng, static_cast<std::uint64_t>(maxEdges - i));
      std::swap(pairs[static_cast<std::size_t>(i)], pairs[static_cast<std::size_t>(j)]);
      net.addEdge(pairs[static_cast<std::size_t>(i)].first,
                  pairs[static_cast<std::size_t>(i)].second);
    }
  } else {
    std::set<std::pair<int, int>> chosen;
    while (static_cast<std::int64_t>(chosen.size()) < m) {
      int a = static_cast<int>(uniformBelow(rng, static_cast<std::uint64_t>(n)));
      int b = static_cast<int>(uniformBelow(rng, static_cast<std::uint64_t>(n)));
      if (a == b) continue;
      auto pair = std::minmax(a, b);
      if (chosen.insert(pair).second) {
        net.addEdge(pair.first, pair.second);
      }
    }
  }
  return net;
}

const char* verdictName(SmallWorldVerdict verdict) {
  switch (verdict) {
    case SmallWorldVerdict::SmallWorld:    return "SmallWorld";
    case SmallWorldVerdict::NotSmallWorld: return "NotSmallWorld";
    case SmallWorldVerdict::Indeterminate: return "Indeterminate";
  }
  return "Indeterminate";
}

SmallWorldReport smallWorldAssessment(const SoloNetwork& net, int replicates,
                                      std::uint64_t seed,
                                      const SmallWorldThresholds& thresholds) {
  if (replicates < 1) throw DegenerateNetwork("replicates must be >= 1");
  UndirectedView view = undirectedProjection(net);
  auto components = connectedComponents(view);
  if (components.empty() || components.front().size() < 3) {
    throw DegenerateNetwork("largest component has fewer than 3 nodes");
  }

  SmallWorldReport report;
  report.replicates = replicates;
  report.seed = seed;
  report.n = view.nodeCount;
  report.m = view.edgeCount;

  report.cc = clusteringCoefficient(view).value;
  DistanceSummary distance = averageDistance(view);
  if (!distance.value) {
    throw DegenerateNetwork("no connected pairs in the network");
  }
  report.avgDist = *distance.value;

  double ccSum = 0;
  double distSum = 0;
  for (int i = 0; i < replicates; ++i) {
    SoloNetwork sample =
        randomGraph(report.n, report.m, deriveSubSeed(seed, static_cast<std::uint64_t>(i)));
    UndirectedView sampleView = undirectedProjection(sample);
    ccSum += clusteringCoefficient(sampleView).value;
    DistanceSummary sampleDistance = averageDistance(sampleView);
    distSum += sampleDistance.value.value_or(0.0);
  }
  report.ccRg = ccSum / replicates;
  report.avgDistRg = distSum / replicates;

  if (report.cc >= thresholds.ccFactor * report.ccRg &&
      report.avgDist <= thresholds.distFactor * report.avgDistRg) {
    report.verdict = SmallWorldVerdict::SmallWorld;
  } else if (report.cc < report.ccRg ||
             report.avgDist > thresholds.distRejectFactor * report.avgDistRg) {
    report.verdict = SmallWorldVerdict::NotSmallWorld;
  } else {
    report.verdict = SmallWorldVerdict::Indeterminate;
  }
  return report;
}

std::string smallWorldReportToJson(const SmallWorldReport& report) {
  nlohmann::json doc;
  doc["cc"] = report.cc;
  doc["cc_rg"] = report.ccRg;
  doc["avg_dist"] = report.avgDist;
  doc["avg_dist_rg"] = report.avgDistRg;
  doc["replicates"] = report.replicates;
  doc["seed"] = report.seed;
  doc["n"] = report.n;
  doc["m"] = report.m;
  doc["verdict"] = verdictName(report.verdict);
  doc["rng"] = report.rng;
  return doc.dump(1);
}

}  // namespace solonet
