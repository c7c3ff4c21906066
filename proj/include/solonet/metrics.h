// Per-network metrics: degrees, distances, clustering, centralities.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "solonet/network.h"

namespace solonet {

struct EmptyNetwork : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Power iteration failed to settle; carries the iteration count and the
/// last max-norm residual.
struct NoConvergence : std::runtime_error {
  NoConvergence(int iterations, double residual)
      : std::runtime_error("eigenvector centrality did not converge after " +
                           std::to_string(iterations) +
                           " iterations (residual " + std::to_string(residual) + ")"),
        iterations(iterations),
        residual(residual) {}
  int iterations;
  double residual;
};

/// Directed degree family per node. A self-loop contributes one to both the
/// in- and the out-degree of its node.
struct DegreeProfile {
  std::vector<std::int64_t> in, out, total;
  std::vector<std::int64_t> weightedIn, weightedOut, weightedTotal;
  std::vector<double> normalized;  // total / max total

  double meanTotal() const;
  double meanNormalized() const;
  double meanWeightedTotal() const;
};

enum class DegreeKind { Total, In, Out, Weighted };

struct HistogramBin {
  double value = 0;
  double mass = 0;
  double cumulative = 0;
};

struct Histogram {
  std::vector<HistogramBin> bins;  // ascending by value; cumulative ends at 1
};

struct DistanceSummary {
  std::optional<double> value;  // mean over connected unordered pairs; empty when undefined
  double pairCoverage = 0;      // connected pairs / all pairs
  std::uint64_t connectedPairs = 0;
  std::uint64_t totalPairs = 0;
};

struct ClusteringResult {
  double value = 0;
  bool degenerate = false;  // fewer than 3 nodes or no connected triplet
};

DegreeProfile degreeProfile(const SoloNetwork& net);
Histogram degreeDistribution(const DegreeProfile& profile, DegreeKind kind);

/// BFS over the undirected projection from every node; averages shortest
/// path lengths over connected unordered pairs and reports pair coverage.
DistanceSummary averageDistance(const SoloNetwork& net);
DistanceSummary averageDistance(const UndirectedView& view);

/// Global transitivity: 3 * triangles / connected triplets, on the simple
/// undirected projection. Degenerate inputs yield 0 with the flag set.
ClusteringResult clusteringCoefficient(const SoloNetwork& net);
ClusteringResult clusteringCoefficient(const UndirectedView& view);

/// Betweenness over ordered source-target pairs on the undirected projection
/// with unit edge lengths (Brandes accumulation). `normalized` divides by
/// nodeCount^2.
std::vector<double> betweenness(const SoloNetwork& net, bool normalized);
std::vector<double> betweenness(const UndirectedView& view, bool normalized);

/// Same accumulation with edge length 1/weight and Dijkstra relaxation;
/// always normalized by nodeCount^2.
std::vector<double> weightedBetweenness(const SoloNetwork& net);
std::vector<double> weightedBetweenness(const UndirectedView& view);

/// Power iteration on the symmetric weighted adjacency of the undirected
/// projection restricted to its largest component, from a uniform positive
/// start, unit Euclidean norm per step. Convergence is measured in max-norm;
/// a bipartite two-cycle is damped once by averaging the last two iterates.
/// Nodes outside the component get 0. Throws NoConvergence.
std::vector<double> eigenvectorCentrality(const SoloNetwork& net,
                                          double tolerance = 1e-10,
                                          int maxIterations = 10000);
std::vector<double> eigenvectorCentrality(const UndirectedView& view,
                                          double tolerance = 1e-10,
                                          int maxIterations = 10000);

struct ReportConfig {
  double eigenTolerance = 1e-10;
  int eigenMaxIterations = 10000;

  bool operator==(const ReportConfig&) const = default;
};

/// All scalar metrics and per-node centrality vectors for one network.
/// Undefined metrics stay unset rather than defaulting to zero; the one
/// exception is the degenerate-clustering zero convention, which is flagged.
struct MetricsReport {
  std::size_t length = 0;
  std::size_t nodes = 0;
  std::optional<double> meanDegree;
  std::optional<double> meanNormDegree;
  std::optional<double> meanWeightedDegree;
  std::optional<double> avgDistance;
  std::optional<double> pairCoverage;
  std::optional<double> clustering;
  bool clusteringDegenerate = false;
  std::vector<std::string> nodeLabels;
  std::vector<double> betweennessValues;  // normalized, aligned with nodeLabels
  std::vector<double> eigenvectorValues;  // aligned with nodeLabels
  ReportConfig config;

  bool operator==(const MetricsReport&) const = default;
};

MetricsReport metricsReport(const SoloNetwork& net, const ReportConfig& config = {});

std::string reportToJson(const MetricsReport& report);
MetricsReport reportFromJson(const std::string& text);

/// CSV rows "value,mass,cumulative".
std::string histogramToCsv(const Histogram& histogram);

}  // namespace solonet
