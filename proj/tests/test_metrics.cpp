#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.h"
#include "solonet/baselines.h"
#include "solonet/metrics.h"

using namespace solonet;

namespace {

NoteEvent quarterNote(char step, int octave) {
  return NoteEvent::note({step, 0, octave}, Rational(1, 4));
}

MelodyTrack goldenMelodyTrack() {
  MelodyTrack track;
  track.events = {quarterNote('C', 4), quarterNote('D', 4), quarterNote('D', 4),
                  quarterNote('C', 4), quarterNote('D', 4),
                  NoteEvent::note({'G', 0, 4}, Rational(1, 8)),
                  NoteEvent::rest(Rational(1, 8)),
                  NoteEvent::note({'G', 0, 4}, Rational(1, 2))};
  return track;
}

SoloNetwork undirectedGraph(int n, const std::vector<std::pair<int, int>>& edges) {
  SoloNetwork net;
  for (int i = 0; i < n; ++i) net.addNode("n" + std::to_string(i));
  for (auto [a, b] : edges) net.addEdge(a, b);
  return net;
}

SoloNetwork completeGraph(int n) {
  SoloNetwork net;
  for (int i = 0; i < n; ++i) net.addNode("n" + std::to_string(i));
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) net.addEdge(a, b);
  }
  return net;
}

}  // namespace

TEST_CASE("degree profile on the golden-melody network") {
  SoloNetwork net = buildNetwork(goldenMelodyTrack());
  DegreeProfile profile = degreeProfile(net);
  auto d = static_cast<std::size_t>(net.indexOf("D4:1/4"));
  auto g2 = static_cast<std::size_t>(net.indexOf("G4:1/2"));
  CHECK(profile.in[d] == 2);
  CHECK(profile.out[d] == 3);
  CHECK(profile.total[d] == 5);
  CHECK(profile.weightedIn[d] == 3);
  CHECK(profile.weightedOut[d] == 3);
  CHECK(profile.normalized[d] == 1.0);
  CHECK(profile.normalized[g2] == doctest::Approx(0.2));

  CHECK_THROWS_AS(degreeProfile(SoloNetwork{}), EmptyNetwork);

  SoloNetwork loop;
  loop.addNode("a");
  loop.addEdge(0, 0);
  DegreeProfile loopProfile = degreeProfile(loop);
  CHECK(loopProfile.in[0] == 1);
  CHECK(loopProfile.out[0] == 1);
  CHECK(loopProfile.total[0] == 2);
}

TEST_CASE("handshake identities hold on random networks") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 2 + static_cast<int>(rng() % 12);
    std::int64_t maxEdges = static_cast<std::int64_t>(n) * (n - 1) / 2;
    SoloNetwork net = randomGraph(
        n, std::min<std::int64_t>(maxEdges, static_cast<std::int64_t>(rng() % 20)),
        rng());
    if (net.edgeCount() == 0) continue;
    DegreeProfile profile = degreeProfile(net);
    std::int64_t inSum = 0, outSum = 0, wInSum = 0, wOutSum = 0;
    double maxNorm = 0;
    for (std::size_t i = 0; i < profile.in.size(); ++i) {
      inSum += profile.in[i];
      outSum += profile.out[i];
      wInSum += profile.weightedIn[i];
      wOutSum += profile.weightedOut[i];
      CHECK(profile.normalized[i] >= 0.0);
      CHECK(profile.normalized[i] <= 1.0);
      maxNorm = std::max(maxNorm, profile.normalized[i]);
    }
    CHECK(inSum == net.edgeCount());
    CHECK(outSum == net.edgeCount());
    CHECK(wInSum == net.totalWeight());
    CHECK(wOutSum == net.totalWeight());
    CHECK(maxNorm == 1.0);
    // Mean in-degree equals mean out-degree.
    CHECK(inSum == outSum);
  }
}

TEST_CASE("degree distribution mass and cumulative") {
  SoloNetwork net = buildNetwork(goldenMelodyTrack());
  Histogram histogram = degreeDistribution(degreeProfile(net), DegreeKind::Total);
  REQUIRE(histogram.bins.size() == 3);
  CHECK(histogram.bins[0].value == 1);
  CHECK(histogram.bins[0].mass == doctest::Approx(0.2));
  CHECK(histogram.bins[1].value == 2);
  CHECK(histogram.bins[1].mass == doctest::Approx(0.6));
  CHECK(histogram.bins[2].value == 5);
  CHECK(histogram.bins[2].mass == doctest::Approx(0.2));
  CHECK(histogram.bins.back().cumulative == 1.0);

  SoloNetwork pair = undirectedGraph(2, {{0, 1}});
  Histogram point = degreeDistribution(degreeProfile(pair), DegreeKind::Total);
  REQUIRE(point.bins.size() == 1);
  CHECK(point.bins[0].mass == 1.0);
  CHECK(point.bins[0].cumulative == 1.0);
}

TEST_CASE("average distance on known shapes") {
  DistanceSummary golden = averageDistance(buildNetwork(goldenMelodyTrack()));
  REQUIRE(golden.value.has_value());
  CHECK(*golden.value == 2.0);  // hand-enumerated pair distances sum 20 over 10
  CHECK(golden.pairCoverage == 1.0);

  DistanceSummary k4 = averageDistance(completeGraph(4));
  CHECK(*k4.value == 1.0);

  SoloNetwork dyads = undirectedGraph(4, {{0, 1}, {2, 3}});
  DistanceSummary split = averageDistance(dyads);
  CHECK(*split.value == 1.0);
  CHECK(split.pairCoverage == doctest::Approx(2.0 / 6.0));
  CHECK(split.connectedPairs == 2);

  CHECK_FALSE(averageDistance(SoloNetwork{}).value.has_value());
  SoloNetwork lonely;
  lonely.addNode("a");
  CHECK_FALSE(averageDistance(lonely).value.has_value());
  SoloNetwork isolated = undirectedGraph(3, {});
  CHECK_FALSE(averageDistance(isolated).value.has_value());
  CHECK(averageDistance(isolated).pairCoverage == 0.0);
}

TEST_CASE("clustering coefficient on known shapes") {
  CHECK(clusteringCoefficient(completeGraph(3)).value == 1.0);
  CHECK(clusteringCoefficient(completeGraph(6)).value == 1.0);
  CHECK(clusteringCoefficient(buildNetwork(goldenMelodyTrack())).value == 0.0);

  // Trees have no triangles.
  SoloNetwork star = undirectedGraph(4, {{0, 1}, {0, 2}, {0, 3}});
  CHECK(clusteringCoefficient(star).value == 0.0);
  CHECK_FALSE(clusteringCoefficient(star).degenerate);

  // Triangle with a pendant: 3 closed triplets, 5 total.
  SoloNetwork tadpole = undirectedGraph(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}});
  CHECK(clusteringCoefficient(tadpole).value == doctest::Approx(3.0 / 5.0));

  CHECK(clusteringCoefficient(undirectedGraph(2, {{0, 1}})).degenerate);
  CHECK(clusteringCoefficient(SoloNetwork{}).degenerate);
}

TEST_CASE("betweenness counts ordered pairs") {
  SoloNetwork path = undirectedGraph(3, {{0, 1}, {1, 2}});
  auto raw = betweenness(path, false);
  CHECK(raw[0] == 0.0);
  CHECK(raw[1] == 2.0);
  CHECK(raw[2] == 0.0);
  auto normalized = betweenness(path, true);
  CHECK(normalized[1] == doctest::Approx(2.0 / 9.0));

  SoloNetwork golden = buildNetwork(goldenMelodyTrack());
  auto goldenBet = betweenness(golden, true);
  auto d = static_cast<std::size_t>(golden.indexOf("D4:1/4"));
  CHECK(goldenBet[d] == doctest::Approx(6.0 / 25.0));
  CHECK(betweenness(golden, false)[d] == 6.0);

  SoloNetwork starNet = undirectedGraph(4, {{0, 1}, {0, 2}, {0, 3}});
  CHECK(betweenness(starNet, false)[0] == 6.0);
  // Degree-1 view nodes always get zero.
  for (std::size_t leaf = 1; leaf < 4; ++leaf) {
    CHECK(betweenness(starNet, false)[leaf] == 0.0);
  }
}

TEST_CASE("betweenness and distances match brute force on small graphs") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + static_cast<int>(rng() % 7);
    std::int64_t maxEdges = static_cast<std::int64_t>(n) * (n - 1) / 2;
    SoloNetwork net = randomGraph(n, static_cast<std::int64_t>(rng()) % (maxEdges + 1),
                                  rng());
    UndirectedView view = undirectedProjection(net);

    DistanceSummary summary = averageDistance(view);
    oracle::ExactDistanceAverage exact = oracle::exactAverageDistance(view);
    CHECK(summary.connectedPairs == exact.connectedPairs);
    CHECK(summary.totalPairs == exact.totalPairs);
    if (exact.connectedPairs > 0) {
      CHECK(*summary.value == static_cast<double>(exact.distanceSum) /
                                  static_cast<double>(exact.connectedPairs));
    } else {
      CHECK_FALSE(summary.value.has_value());
    }

    auto fast = betweenness(view, false);
    auto slow = oracle::exhaustiveBetweenness(view);
    for (std::size_t i = 0; i < fast.size(); ++i) {
      CHECK(fast[i] == slow[i].toDouble());  // exact, both sides rational
    }
  }
}

TEST_CASE("betweenness survives path-count overflow") {
  // A chain of diamonds doubles the shortest-path count per stage; 70 stages
  // push sigma past 2^63 and force the floating fallback.
  SoloNetwork net;
  int hub = net.addNode("hub0");
  for (int stage = 0; stage < 70; ++stage) {
    int a = net.addNode("a" + std::to_string(stage));
    int b = net.addNode("b" + std::to_string(stage));
    int next = net.addNode("hub" + std::to_string(stage + 1));
    net.addEdge(hub, a);
    net.addEdge(hub, b);
    net.addEdge(a, next);
    net.addEdge(b, next);
    hub = next;
  }
  auto values = betweenness(net, false);
  REQUIRE(values.size() == static_cast<std::size_t>(net.nodeCount()));
  for (double v : values) {
    CHECK(std::isfinite(v));
    CHECK(v >= 0.0);
  }
  // Middle hub lies on every cross-chain shortest path.
  CHECK(values[static_cast<std::size_t>(net.indexOf("hub35"))] > 1000.0);
}

TEST_CASE("weighted betweenness routes along reciprocal lengths") {
  // Triangle where the heavy two-hop route beats the direct unit edge:
  // 0-1 and 1-2 weigh 10 (length 0.1), 0-2 weighs 1 (length 1.0).
  SoloNetwork heavy;
  for (int i = 0; i < 3; ++i) heavy.addNode("n" + std::to_string(i));
  heavy.addEdge(0, 1, 10);
  heavy.addEdge(1, 2, 10);
  heavy.addEdge(0, 2, 1);
  auto weighted = weightedBetweenness(heavy);
  CHECK(weighted[1] == doctest::Approx(2.0 / 9.0));  // both ordered pairs route via 1

  // Uniform weights reproduce the unweighted ranking.
  std::mt19937 rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    SoloNetwork net = randomGraph(6, 8, rng());
    auto unweighted = betweenness(net, true);
    auto uniform = weightedBetweenness(net);
    for (std::size_t i = 0; i < unweighted.size(); ++i) {
      CHECK(uniform[i] == doctest::Approx(unweighted[i]).epsilon(1e-9));
    }
  }

  SoloNetwork edge = undirectedGraph(2, {{0, 1}});
  auto single = weightedBetweenness(edge);
  CHECK(single[0] == 0.0);
  CHECK(single[1] == 0.0);
}

TEST_CASE("eigenvector centrality closed forms") {
  auto k3 = eigenvectorCentrality(completeGraph(3));
  for (double v : k3) CHECK(v == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-9));

  // Star K1,3: center 1/sqrt(2), leaves 1/sqrt(6).
  SoloNetwork star = undirectedGraph(4, {{0, 1}, {0, 2}, {0, 3}});
  auto starCentrality = eigenvectorCentrality(star);
  CHECK(starCentrality[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-8));
  for (std::size_t leaf = 1; leaf < 4; ++leaf) {
    CHECK(starCentrality[leaf] == doctest::Approx(1.0 / std::sqrt(6.0)).epsilon(1e-8));
  }

  // Unit norm over the component; nodes outside the component get zero.
  SoloNetwork mixed = undirectedGraph(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}});
  auto mixedCentrality = eigenvectorCentrality(mixed);
  double norm = 0;
  for (std::size_t i = 0; i < 3; ++i) norm += mixedCentrality[i] * mixedCentrality[i];
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(mixedCentrality[3] == 0.0);
  CHECK(mixedCentrality[4] == 0.0);
  CHECK(mixedCentrality[5] == 0.0);

  CHECK_THROWS_AS(eigenvectorCentrality(completeGraph(3), -1.0, 10),
                  std::invalid_argument);
}

TEST_CASE("eigenvector centrality matches the dense oracle") {
  std::mt19937 rng(59);
  int checked = 0;
  while (checked < 40) {
    int n = 2 + static_cast<int>(rng() % 9);
    std::int64_t maxEdges = static_cast<std::int64_t>(n) * (n - 1) / 2;
    std::int64_t m = std::min<std::int64_t>(maxEdges, n - 1 + static_cast<std::int64_t>(rng() % 6));
    SoloNetwork net = randomGraph(n, m, rng());
    UndirectedView view = undirectedProjection(net);
    if (connectedComponents(view).front().size() != static_cast<std::size_t>(n)) {
      continue;
    }
    ++checked;
    auto produced = eigenvectorCentrality(view, 1e-12, 20000);
    std::vector<int> nodes(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) nodes[static_cast<std::size_t>(i)] = i;
    auto expected = oracle::jacobiLeadingEigenvector(oracle::denseAdjacency(view, nodes));
    for (std::size_t i = 0; i < produced.size(); ++i) {
      CHECK(produced[i] == doctest::Approx(expected[i]).epsilon(1e-6));
    }
  }
}

TEST_CASE("bipartite components converge through damping") {
  // Even cycles and stars are bipartite; the plain iteration oscillates.
  SoloNetwork square = undirectedGraph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  auto values = eigenvectorCentrality(square, 1e-10, 200);
  for (double v : values) CHECK(v == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("metrics report bundles and round-trips") {
  SoloNetwork net = buildNetwork(goldenMelodyTrack());
  MetricsReport report = metricsReport(net);
  CHECK(report.length == 8);
  CHECK(report.nodes == 5);
  CHECK(*report.avgDistance == 2.0);
  CHECK(*report.clustering == 0.0);
  CHECK_FALSE(report.clusteringDegenerate);
  CHECK(*report.meanDegree == doctest::Approx(12.0 / 5.0));
  REQUIRE(report.betweennessValues.size() == 5);

  MetricsReport back = reportFromJson(reportToJson(report));
  CHECK(back == report);

  MetricsReport empty = metricsReport(buildNetwork(MelodyTrack{}));
  CHECK(empty.length == 0);
  CHECK(empty.nodes == 0);
  CHECK_FALSE(empty.meanDegree.has_value());
  CHECK_FALSE(empty.avgDistance.has_value());
  CHECK_FALSE(empty.clustering.has_value());
  CHECK(reportFromJson(reportToJson(empty)) == empty);

  MelodyTrack single;
  single.events = {quarterNote('C', 4)};
  MetricsReport singleReport = metricsReport(buildNetwork(single));
  CHECK(singleReport.nodes == 1);
  CHECK_FALSE(singleReport.avgDistance.has_value());
  CHECK(singleReport.clusteringDegenerate);
}

TEST_CASE("transposition leaves every report field unchanged") {
  MelodyTrack track = goldenMelodyTrack();
  MetricsReport original = metricsReport(buildNetwork(track));
  MetricsReport shifted = metricsReport(buildNetwork(transpose(track, 5)));
  CHECK(original.length == shifted.length);
  CHECK(original.nodes == shifted.nodes);
  CHECK(original.meanDegree == shifted.meanDegree);
  CHECK(original.meanNormDegree == shifted.meanNormDegree);
  CHECK(original.meanWeightedDegree == shifted.meanWeightedDegree);
  CHECK(original.avgDistance == shifted.avgDistance);
  CHECK(original.clustering == shifted.clustering);
  CHECK(original.betweennessValues == shifted.betweennessValues);
  CHECK(original.eigenvectorValues == shifted.eigenvectorValues);
}

TEST_CASE("histogram csv shape") {
  SoloNetwork net = buildNetwork(goldenMelodyTrack());
  std::string csv = histogramToCsv(degreeDistribution(degreeProfile(net), DegreeKind::Total));
  CHECK(csv.find("value,mass,cumulative\n") == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}
