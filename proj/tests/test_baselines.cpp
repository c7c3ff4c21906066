#include <doctest.h>

#include <cmath>

#include "solonet/baselines.h"
#include "solonet/metrics.h"

using namespace solonet;

namespace {

// Ring lattice: each node linked to its k/2 nearest neighbors per side.
SoloNetwork ringLattice(int n, int k) {
  SoloNetwork net;
  for (int i = 0; i < n; ++i) net.addNode("n" + std::to_string(i));
  for (int i = 0; i < n; ++i) {
    for (int step = 1; step <= k / 2; ++step) {
      int j = (i + step) % n;
      net.addEdge(std::min(i, j), std::max(i, j));
    }
  }
  return net;
}

// Ring lattice plus deterministic long chords: clustered but short-pathed.
SoloNetwork clusteredWithShortcuts(int n, int k, int chordEvery) {
  SoloNetwork net = ringLattice(n, k);
  for (int i = 0; i < n / 2; i += chordEvery) {
    net.addEdge(i, i + n / 2);
  }
  for (int i = 1; i < n / 2; i += chordEvery) {
    net.addEdge(i, (i + n / 4) % n);
  }
  return net;
}

}  // namespace

TEST_CASE("random graph edge counts and limits") {
  SoloNetwork complete = randomGraph(5, 10, 42);
  CHECK(complete.nodeCount() == 5);
  CHECK(complete.edgeCount() == 10);
  UndirectedView completeView = undirectedProjection(complete);
  CHECK(completeView.edgeCount == 10);
  CHECK(clusteringCoefficient(completeView).value == 1.0);

  SoloNetwork empty = randomGraph(5, 0, 42);
  CHECK(empty.edgeCount() == 0);

  CHECK_THROWS_AS(randomGraph(5, 11, 42), TooManyEdges);
  CHECK_THROWS_AS(randomGraph(4, -1, 42), TooManyEdges);
  CHECK_THROWS_AS(randomGraph(0, 0, 42), std::invalid_argument);
}

TEST_CASE("random graph is reproducible from the seed") {
  SoloNetwork a = randomGraph(30, 90, 777);
  SoloNetwork b = randomGraph(30, 90, 777);
  CHECK(a.edges() == b.edges());

  SoloNetwork c = randomGraph(30, 90, 778);
  CHECK(a.edges() != c.edges());

  // Dense regime uses the shuffle path; still deterministic.
  SoloNetwork d = randomGraph(12, 60, 99);
  SoloNetwork e = randomGraph(12, 60, 99);
  CHECK(d.edges() == e.edges());

  CHECK(deriveSubSeed(1, 0) != deriveSubSeed(1, 1));
  CHECK(deriveSubSeed(1, 0) == deriveSubSeed(1, 0));
  CHECK(deriveSubSeed(1, 0) != deriveSubSeed(2, 0));
}

TEST_CASE("random graph statistics approach the analytic expectations") {
  // G(100, 300): expected clustering ~ p = 2m / (n(n-1)).
  const int n = 100;
  const std::int64_t m = 300;
  const int replicates = 100;
  double p = 2.0 * static_cast<double>(m) / (n * (n - 1.0));

  std::vector<double> ccValues;
  double meanDistance = 0;
  int definedDistances = 0;
  for (int i = 0; i < replicates; ++i) {
    UndirectedView view =
        undirectedProjection(randomGraph(n, m, deriveSubSeed(2024, static_cast<std::uint64_t>(i))));
    ccValues.push_back(clusteringCoefficient(view).value);
    DistanceSummary distance = averageDistance(view);
    if (distance.value) {
      meanDistance += *distance.value;
      ++definedDistances;
    }
  }
  double mean = 0;
  for (double v : ccValues) mean += v;
  mean /= ccValues.size();
  double variance = 0;
  for (double v : ccValues) variance += (v - mean) * (v - mean);
  variance /= (ccValues.size() - 1.0);
  double standardError = std::sqrt(variance / ccValues.size());
  CHECK(std::abs(mean - p) <= 3.0 * standardError);

  REQUIRE(definedDistances == replicates);
  meanDistance /= definedDistances;
  double predicted = std::log(n) / std::log(2.0 * static_cast<double>(m) / n);
  CHECK(meanDistance == doctest::Approx(predicted).epsilon(0.15));
}

TEST_CASE("replicate mean distance decreases as edges are added") {
  const int n = 60;
  const int replicates = 50;
  double previous = 1e18;
  for (std::int64_t m : {120, 240, 480}) {
    double total = 0;
    for (int i = 0; i < replicates; ++i) {
      UndirectedView view = undirectedProjection(
          randomGraph(n, m, deriveSubSeed(555 + static_cast<std::uint64_t>(m),
                                          static_cast<std::uint64_t>(i))));
      total += averageDistance(view).value.value_or(0.0);
    }
    double meanDistance = total / replicates;
    CHECK(meanDistance < previous);
    previous = meanDistance;
  }
}

TEST_CASE("small-world assessment: verdicts on synthetic shapes") {
  // Clustered ring with shortcuts: lattice-like clustering, short paths.
  SoloNetwork shortcuts = clusteredWithShortcuts(100, 6, 4);
  SmallWorldReport swReport = smallWorldAssessment(shortcuts, 30, 9001);
  CHECK(swReport.verdict == SmallWorldVerdict::SmallWorld);
  CHECK(swReport.cc > 2.0 * swReport.ccRg);

  // Plain ring lattice: clustered but distances grow linearly.
  SmallWorldReport latticeReport = smallWorldAssessment(ringLattice(100, 4), 30, 9001);
  CHECK(latticeReport.verdict == SmallWorldVerdict::NotSmallWorld);
  CHECK(latticeReport.avgDist > 2.0 * latticeReport.avgDistRg);

  // A random graph is statistically indistinguishable from its replicates.
  SmallWorldReport randomReport =
      smallWorldAssessment(randomGraph(100, 300, 424242), 30, 9001);
  bool plausible = randomReport.verdict == SmallWorldVerdict::Indeterminate ||
                   randomReport.verdict == SmallWorldVerdict::NotSmallWorld;
  CHECK(plausible);

  // Determinism under a fixed seed.
  SmallWorldReport again = smallWorldAssessment(shortcuts, 30, 9001);
  CHECK(again.cc == swReport.cc);
  CHECK(again.ccRg == swReport.ccRg);
  CHECK(again.avgDistRg == swReport.avgDistRg);
  CHECK(again.verdict == swReport.verdict);
}

TEST_CASE("small-world assessment rejects degenerate inputs") {
  SoloNetwork tiny;
  tiny.addNode("a");
  tiny.addNode("b");
  tiny.addEdge(0, 1);
  CHECK_THROWS_AS(smallWorldAssessment(tiny, 10, 1), DegenerateNetwork);
  CHECK_THROWS_AS(smallWorldAssessment(randomGraph(10, 15, 3), 0, 1),
                  DegenerateNetwork);
}

TEST_CASE("small-world report serializes with its rng identity") {
  SmallWorldReport report = smallWorldAssessment(clusteredWithShortcuts(60, 6, 4), 5, 7);
  std::string json = smallWorldReportToJson(report);
  CHECK(json.find("\"rng\"") != std::string::npos);
  CHECK(json.find("mt19937_64") != std::string::npos);
  CHECK(json.find("\"verdict\"") != std::string::npos);
}
