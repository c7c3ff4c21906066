#include "solonet/metrics.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <queue>
#include <sstream>

#include <json.hpp>

namespace solonet {

namespace {

double meanOf(const std::vector<std::int64_t>& values) {
  if (values.empty()) return 0;
  std::int64_t sum = 0;
  for (std::int64_t v : values) sum += v;
  return static_cast<double>(sum) / static_cast<double>(values.size());
}

bool hasEdge(const UndirectedView& view, int a, int b) {
  const auto& list = view.neighbors[static_cast<std::size_t>(a)];
  return std::binary_search(list.begin(), list.end(), b);
}

struct NumericOverflow {};

// Exact fraction over 128-bit integers for Brandes dependency sums. Path
// counts and their ratios stay integral/rational; computing them exactly
// keeps small-graph betweenness equal to pair enumeration, not just close.
// Throws NumericOverflow when a product leaves the representable range.
class Fraction {
 public:
  Fraction() = default;
  Fraction(__int128 num, __int128 den) : num_(num), den_(den) { reduce(); }
  explicit Fraction(std::int64_t value) : num_(value), den_(1) {}

  Fraction operator+(const Fraction& other) const {
    return Fraction(checkedAdd(checkedMul(num_, other.den_), checkedMul(other.num_, den_)),
                    checkedMul(den_, other.den_));
  }
  Fraction operator*(const Fraction& other) const {
    return Fraction(checkedMul(num_, other.num_), checkedMul(den_, other.den_));
  }

  double toDouble() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

 private:
  static __int128 checkedMul(__int128 a, __int128 b) {
    __int128 result;
    if (__builtin_mul_overflow(a, b, &result)) throw NumericOverflow{};
    return result;
  }
  static __int128 checkedAdd(__int128 a, __int128 b) {
    __int128 result;
    if (__builtin_add_overflow(a, b, &result)) throw NumericOverflow{};
    return result;
  }
  static __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      __int128 r = a % b;
      a = b;
      b = r;
    }
    return a;
  }
  void reduce() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    __int128 g = gcd128(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  __int128 num_ = 0;
  __int128 den_ = 1;
};

// Numeric policy for the Brandes accumulation below.
struct ExactNumbers {
  using Sigma = std::int64_t;
  using Dependency = Fraction;
  static Sigma sigmaAdd(Sigma a, Sigma b) {
    Sigma result;
    if (__builtin_add_overflow(a, b, &result)) throw NumericOverflow{};
    return result;
  }
  static Dependency contribution(Sigma sigmaV, Sigma sigmaW, const Dependency& deltaW) {
    return Fraction(sigmaV, sigmaW) * (Fraction(1) + deltaW);
  }
  static double finish(const Dependency& d) { return d.toDouble(); }
};

struct FloatNumbers {
  using Sigma = double;
  using Dependency = double;
  static Sigma sigmaAdd(Sigma a, Sigma b) { return a + b; }
  static Dependency contribution(Sigma sigmaV, Sigma sigmaW, Dependency deltaW) {
    return sigmaV / sigmaW * (1.0 + deltaW);
  }
  static double finish(Dependency d) { return d; }
};

template <typename Numbers>
std::vector<double> brandesAccumulate(const UndirectedView& view) {
  using Sigma = typename Numbers::Sigma;
  using Dependency = typename Numbers::Dependency;
  std::size_t n = static_cast<std::size_t>(view.nodeCount);
  // Accumulated across sources in the policy's arithmetic; converted to
  // double exactly once at the end.
  std::vector<Dependency> centrality(n, Dependency(0));

  std::vector<Sigma> sigma(n);
  std::vector<Dependency> delta(n);
  std::vector<int> dist(n);
  std::vector<std::vector<int>> predecessors(n);
  std::vector<int> order;
  order.reserve(n);
  std::deque<int> queue;

  for (std::size_t s = 0; s < n; ++s) {
    std::fill(sigma.begin(), sigma.end(), Sigma(0));
    std::fill(dist.begin(), dist.end(), -1);
    for (auto& preds : predecessors) preds.clear();
    order.clear();
    queue.clear();

    sigma[s] = Sigma(1);
    dist[s] = 0;
    queue.push_back(static_cast<int>(s));
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      order.push_back(v);
      for (int w : view.neighbors[static_cast<std::size_t>(v)]) {
        auto wi = static_cast<std::size_t>(w);
        auto vi = static_cast<std::size_t>(v);
        if (dist[wi] < 0) {
          dist[wi] = dist[vi] + 1;
          queue.push_back(w);
        }
        if (dist[wi] == dist[vi] + 1) {
          sigma[wi] = Numbers::sigmaAdd(sigma[wi], sigma[vi]);
          predecessors[wi].push_back(v);
        }
      }
    }

    std::fill(delta.begin(), delta.end(), Dependency(0));
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      auto wi = static_cast<std::size_t>(*it);
      for (int v : predecessors[wi]) {
        auto vi = static_cast<std::size_t>(v);
        delta[vi] = delta[vi] + Numbers::contribution(sigma[vi], sigma[wi], delta[wi]);
      }
      if (wi != s) centrality[wi] = centrality[wi] + delta[wi];
    }
  }

  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = Numbers::finish(centrality[i]);
  return out;
}

}  // namespace

double DegreeProfile::meanTotal() const { return meanOf(total); }

double DegreeProfile::meanNormalized() const {
  if (normalized.empty()) return 0;
  double sum = 0;
  for (double v : normalized) sum += v;
  return sum / static_cast<double>(normalized.size());
}

double DegreeProfile::meanWeightedTotal() const { return meanOf(weightedTotal); }

DegreeProfile degreeProfile(const SoloNetwork& net) {
  std::size_t n = static_cast<std::size_t>(net.nodeCount());
  if (n == 0) throw EmptyNetwork("degree profile of an empty network");

  DegreeProfile profile;
  profile.in.assign(n, 0);
  profile.out.assign(n, 0);
  profile.weightedIn.assign(n, 0);
  profile.weightedOut.assign(n, 0);
  for (const auto& [edge, weight] : net.edges()) {
    auto src = static_cast<std::size_t>(edge.first);
    auto dst = static_cast<std::size_t>(edge.second);
    profile.out[src] += 1;
    profile.in[dst] += 1;
    profile.weightedOut[src] += weight;
    profile.weightedIn[dst] += weight;
  }
  profile.total.resize(n);
  profile.weightedTotal.resize(n);
  std::int64_t maxTotal = 0;
  for (std::size_t i = 0; i < n; ++i) {
    profile.total[i] = profile.in[i] + profile.out[i];
    profile.weightedTotal[i] = profile.weightedIn[i] + profile.weightedOut[i];
    maxTotal = std::max(maxTotal, profile.total[i]);
  }
  profile.normalized.assign(n, 0.0);
  if (maxTotal > 0) {
    for (std::size_t i = 0; i < n; ++i) {
      profile.normalized[i] =
          static_cast<double>(profile.total[i]) / static_cast<double>(maxTotal);
    }
  }
  return profile;
}

Histogram degreeDistribution(const DegreeProfile& profile, DegreeKind kind) {
  const std::vector<std::int64_t>* values = nullptr;
  switch (kind) {
    case DegreeKind::Total:    values = &profile.total; break;
    case DegreeKind::In:       values = &profile.in; break;
    case DegreeKind::Out:      values = &profile.out; break;
    case DegreeKind::Weighted: values = &profile.weightedTotal; break;
  }
  Histogram histogram;
  if (values->empty()) return histogram;

  std::map<std::int64_t, std::int64_t> counts;
  for (std::int64_t v : *values) ++counts[v];
  double n = static_cast<double>(values->size());
  double running = 0;
  for (const auto& [value, count] : counts) {
    HistogramBin bin;
    bin.value = static_cast<double>(value);
    bin.mass = static_cast<double>(count) / n;
    running += bin.mass;
    bin.cumulative = running;
    histogram.bins.push_back(bin);
  }
  histogram.bins.back().cumulative = 1.0;  // absorb rounding
  return histogram;
}

DistanceSummary averageDistance(const SoloNetwork& net) {
  return averageDistance(undirectedProjection(net));
}

DistanceSummary averageDistance(const UndirectedView& view) {
  DistanceSummary summary;
  int n = view.nodeCount;
  if (n < 2) return summary;
  summary.totalPairs = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n - 1) / 2;

  std::uint64_t distanceSum = 0;
  std::vector<int> dist(static_cast<std::size_t>(n));
  std::deque<int> queue;
  for (int source = 0; source < n; ++source) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[static_cast<std::size_t>(source)] = 0;
    queue.clear();
    queue.push_back(source);
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int w : view.neighbors[static_cast<std::size_t>(v)]) {
        if (dist[static_cast<std::size_t>(w)] < 0) {
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
          queue.push_back(w);
        }
      }
    }
    for (int target = source + 1; target < n; ++target) {
      if (dist[static_cast<std::size_t>(target)] > 0) {
        distanceSum += static_cast<std::uint64_t>(dist[static_cast<std::size_t>(target)]);
        ++summary.connectedPairs;
      }
    }
  }

  summary.pairCoverage = static_cast<double>(summary.connectedPairs) /
                         static_cast<double>(summary.totalPairs);
  if (summary.connectedPairs > 0) {
    summary.value = static_cast<double>(distanceSum) /
                    static_cast<double>(summary.connectedPairs);
  }
  return summary;
}

ClusteringResult clusteringCoefficient(const SoloNetwork& net) {
  return clusteringCoefficient(undirectedProjection(net));
}

ClusteringResult clusteringCoefficient(const UndirectedView& view) {
  if (view.nodeCount < 3) return {0.0, true};

  // closedPaths counts, per vertex, the adjacent pairs of its neighbors; over
  // all vertices that is 3 * triangles. openPaths counts all neighbor pairs.
  std::uint64_t closedPaths = 0;
  std::uint64_t openPaths = 0;
  for (int v = 0; v < view.nodeCount; ++v) {
    const auto& nbrs = view.neighbors[static_cast<std::size_t>(v)];
    std::uint64_t k = nbrs.size();
    openPaths += k * (k - 1) / 2;
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        if (hasEdge(view, nbrs[i], nbrs[j])) ++closedPaths;
      }
    }
  }
  if (openPaths == 0) return {0.0, true};
  return {static_cast<double>(closedPaths) / static_cast<double>(openPaths), false};
}

std::vector<double> betweenness(const SoloNetwork& net, bool normalized) {
  return betweenness(undirectedProjection(net), normalized);
}

std::vector<double> betweenness(const UndirectedView& view, bool normalized) {
  std::size_t n = static_cast<std::size_t>(view.nodeCount);
  if (n == 0) return {};

  std::vector<double> centrality;
  try {
    centrality = brandesAccumulate<ExactNumbers>(view);
  } catch (const NumericOverflow&) {
    // Path-count products outgrew 128 bits; the floating accumulation is the
    // documented fallback for such graphs.
    centrality = brandesAccumulate<FloatNumbers>(view);
  }

  if (normalized) {
    double scale = static_cast<double>(n) * static_cast<double>(n);
    for (double& value : centrality) value /= scale;
  }
  return centrality;
}

std::vector<double> weightedBetweenness(const SoloNetwork& net) {
  return weightedBetweenness(undirectedProjection(net));
}

std::vector<double> weightedBetweenness(const UndirectedView& view) {
  std::size_t n = static_cast<std::size_t>(view.nodeCount);
  std::vector<double> centrality(n, 0.0);
  if (n == 0) return centrality;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr double kTieEps = 1e-12;

  std::vector<double> sigma(n), delta(n), dist(n);
  std::vector<std::vector<int>> predecessors(n);

  for (std::size_t s = 0; s < n; ++s) {
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(dist.begin(), dist.end(), kInf);
    for (auto& preds : predecessors) preds.clear();
    std::vector<int> settled;

    using Entry = std::pair<double, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    sigma[s] = 1.0;
    dist[s] = 0.0;
    heap.push({0.0, static_cast<int>(s)});
    std::vector<bool> done(n, false);
    while (!heap.empty()) {
      auto [d, v] = heap.top();
      heap.pop();
      auto vi = static_cast<std::size_t>(v);
      if (done[vi]) continue;
      done[vi] = true;
      settled.push_back(v);
      for (int w : view.neighbors[vi]) {
        auto wi = static_cast<std::size_t>(w);
        double length = 1.0 / static_cast<double>(view.weight(v, w));
        double candidate = dist[vi] + length;
        if (candidate < dist[wi] - kTieEps) {
          dist[wi] = candidate;
          sigma[wi] = sigma[vi];
          predecessors[wi].assign(1, v);
          heap.push({candidate, w});
        } else if (std::abs(candidate - dist[wi]) <= kTieEps && !done[wi]) {
          sigma[wi] += sigma[vi];
          predecessors[wi].push_back(v);
        }
      }
    }

    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto it = settled.rbegin(); it != settled.rend(); ++it) {
      auto wi = static_cast<std::size_t>(*it);
      for (int v : predecessors[wi]) {
        auto vi = static_cast<std::size_t>(v);
        delta[vi] += sigma[vi] / sigma[wi] * (1.0 + delta[wi]);
      }
      if (wi != s) centrality[wi] += delta[wi];
    }
  }

  double scale = static_cast<double>(n) * static_cast<double>(n);
  for (double& value : centrality) value /= scale;
  return centrality;
}

std::vector<double> eigenvectorCentrality(const SoloNetwork& net, double tolerance,
                                          int maxIterations) {
  return eigenvectorCentrality(undirectedProjection(net), tolerance, maxIterations);
}

std::vector<double> eigenvectorCentrality(const UndirectedView& view, double tolerance,
                                          int maxIterations) {
  if (tolerance <= 0) throw std::invalid_argument("tolerance must be > 0");
  if (maxIterations < 1) throw std::invalid_argument("maxIterations must be >= 1");

  std::size_t n = static_cast<std::size_t>(view.nodeCount);
  std::vector<double> result(n, 0.0);
  if (n == 0) return result;

  auto components = connectedComponents(view);
  const std::vector<int>& component = components.front();
  if (component.size() == 1) {
    result[static_cast<std::size_t>(component.front())] = 1.0;
    return result;
  }

  std::size_t k = component.size();
  std::vector<int> localToGlobal(component.begin(), component.end());
  std::vector<int> globalToLocal(n, -1);
  for (std::size_t i = 0; i < k; ++i) {
    globalToLocal[static_cast<std::size_t>(localToGlobal[i])] = static_cast<int>(i);
  }

  std::vector<double> current(k, 1.0 / std::sqrt(static_cast<double>(k)));
  std::vector<double> next(k);
  bool dampedOnce = false;
  double residual = 0;
  int iterations = 0;

  while (iterations < 2 * maxIterations) {
    for (std::size_t i = 0; i < k; ++i) {
      double sum = 0;
      int global = localToGlobal[i];
      for (int neighbor : view.neighbors[static_cast<std::size_t>(global)]) {
        int local = globalToLocal[static_cast<std::size_t>(neighbor)];
        sum += static_cast<double>(view.weight(global, neighbor)) *
               current[static_cast<std::size_t>(local)];
      }
      next[i] = sum;
    }
    double norm = 0;
    for (double v : next) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : next) v /= norm;

    residual = 0;
    for (std::size_t i = 0; i < k; ++i) {
      residual = std::max(residual, std::abs(next[i] - current[i]));
    }
    ++iterations;
    if (residual < tolerance) {
      for (std::size_t i = 0; i < k; ++i) {
        result[static_cast<std::size_t>(localToGlobal[i])] = next[i];
      }
      return result;
    }
    if (iterations == maxIterations && !dampedOnce) {
      // A bipartite component alternates between two vectors; their average
      // projects out the oscillating eigencomponent.
      double avgNorm = 0;
      for (std::size_t i = 0; i < k; ++i) {
        next[i] = (next[i] + current[i]) / 2.0;
        avgNorm += next[i] * next[i];
      }
      avgNorm = std::sqrt(avgNorm);
      for (double& v : next) v /= avgNorm;
      dampedOnce = true;
    }
    current.swap(next);
  }
  throw NoConvergence(iterations, residual);
}

MetricsReport metricsReport(const SoloNetwork& net, const ReportConfig& config) {
  MetricsReport report;
  report.length = net.sourceLength();
  report.nodes = static_cast<std::size_t>(net.nodeCount());
  report.config = config;
  report.nodeLabels = net.labels();
  if (report.nodes == 0) return report;

  DegreeProfile profile = degreeProfile(net);
  report.meanDegree = profile.meanTotal();
  report.meanNormDegree = profile.meanNormalized();
  report.meanWeightedDegree = profile.meanWeightedTotal();

  UndirectedView view = undirectedProjection(net);
  DistanceSummary distance = averageDistance(view);
  report.avgDistance = distance.value;
  if (distance.totalPairs > 0) report.pairCoverage = distance.pairCoverage;

  ClusteringResult clustering = clusteringCoefficient(view);
  report.clustering = clustering.value;
  report.clusteringDegenerate = clustering.degenerate;

  report.betweennessValues = betweenness(view, /*normalized=*/true);
  report.eigenvectorValues =
      eigenvectorCentrality(view, config.eigenTolerance, config.eigenMaxIterations);
  return report;
}

namespace {

void putOptional(nlohmann::json& doc, const char* key, const std::optional<double>& value) {
  if (value) {
    doc[key] = *value;
  } else {
    doc[key] = nullptr;
  }
}

std::optional<double> getOptional(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
  return doc.at(key).get<double>();
}

}  // namespace

std::string reportToJson(const MetricsReport& report) {
  nlohmann::json doc;
  doc["length"] = report.length;
  doc["nodes"] = report.nodes;
  putOptional(doc, "mean_degree", report.meanDegree);
  putOptional(doc, "mean_norm_degree", report.meanNormDegree);
  putOptional(doc, "mean_weighted_degree", report.meanWeightedDegree);
  putOptional(doc, "avg_distance", report.avgDistance);
  putOptional(doc, "pair_coverage", report.pairCoverage);
  putOptional(doc, "clustering", report.clustering);
  doc["clustering_degenerate"] = report.clusteringDegenerate;
  doc["labels"] = report.nodeLabels;
  nlohmann::json bet = nlohmann::json::object();
  nlohmann::json eig = nlohmann::json::object();
  for (std::size_t i = 0; i < report.nodeLabels.size(); ++i) {
    bet[report.nodeLabels[i]] = report.betweennessValues[i];
    eig[report.nodeLabels[i]] = report.eigenvectorValues[i];
  }
  doc["betweenness"] = std::move(bet);
  doc["eigenvector"] = std::move(eig);
  doc["provenance"] = {{"eigen_tolerance", report.config.eigenTolerance},
                       {"eigen_max_iterations", report.config.eigenMaxIterations}};
  return doc.dump(1);
}

MetricsReport reportFromJson(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  MetricsReport report;
  report.length = doc.at("length").get<std::size_t>();
  report.nodes = doc.at("nodes").get<std::size_t>();
  report.meanDegree = getOptional(doc, "mean_degree");
  report.meanNormDegree = getOptional(doc, "mean_norm_degree");
  report.meanWeightedDegree = getOptional(doc, "mean_weighted_degree");
  report.avgDistance = getOptional(doc, "avg_distance");
  report.pairCoverage = getOptional(doc, "pair_coverage");
  report.clustering = getOptional(doc, "clustering");
  report.clusteringDegenerate = doc.value("clustering_degenerate", false);
  report.nodeLabels = doc.at("labels").get<std::vector<std::string>>();
  report.betweennessValues.reserve(report.nodeLabels.size());
  report.eigenvectorValues.reserve(report.nodeLabels.size());
  for (const auto& label : report.nodeLabels) {
    report.betweennessValues.push_back(doc.at("betweenness").at(label).get<double>());
    report.eigenvectorValues.push_back(doc.at("eigenvector").at(label).get<double>());
  }
  const auto& provenance = doc.at("provenance");
  report.config.eigenTolerance = provenance.at("eigen_tolerance").get<double>();
  report.config.eigenMaxIterations = provenance.at("eigen_max_iterations").get<int>();
  return report;
}

std::string histogramToCsv(const Histogram& histogram) {
  std::ostringstream out;
  out << "value,mass,cumulative\n";
  for (const auto& bin : histogram.bins) {
    out << bin.value << ',' << bin.mass << ',' << bin.cumulative << '\n';
  }
  return out.str();
}

}  // namespace solonet
