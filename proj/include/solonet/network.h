// Directed weighted solo network and its undirected simple projection.

#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "solonet/melody.h"

namespace solonet {

struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Directed weighted graph over canonical node labels. Node indices follow
/// first appearance in the generating track; an edge weight counts how many
/// times the two labels were played in sequence.
class SoloNetwork {
 public:
  using EdgeMap = std::map<std::pair<int, int>, std::int64_t>;

  SoloNetwork() = default;

  int addNode(const std::string& label);
  void addEdge(int source, int target, std::int64_t weight = 1);

  int nodeCount() const { return static_cast<int>(labels_.size()); }
  std::int64_t edgeCount() const { return static_cast<std::int64_t>(edges_.size()); }
  std::int64_t totalWeight() const;

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int node) const { return labels_.at(static_cast<std::size_t>(node)); }
  int indexOf(const std::string& label) const;  // -1 when absent
  const EdgeMap& edges() const { return edges_; }
  std::int64_t weight(int source, int target) const;  // 0 when absent

  const std::string& artist() const { return artist_; }
  const std::string& song() const { return song_; }
  std::size_t sourceLength() const { return sourceLength_; }
  std::size_t seamCount() const { return seamCount_; }

  void setMetadata(std::string artist, std::string song) {
    artist_ = std::move(artist);
    song_ = std::move(song);
  }
  void setSourceCounts(std::size_t length, std::size_t seams) {
    sourceLength_ = length;
    seamCount_ = seams;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> index_;
  EdgeMap edges_;
  std::string artist_;
  std::string song_;
  std::size_t sourceLength_ = 0;
  std::size_t seamCount_ = 0;
};

/// Simple undirected projection: directions dropped, self-loops removed,
/// symmetric weight = sum of both directed weights.
struct UndirectedView {
  int nodeCount = 0;
  std::vector<std::vector<int>> neighbors;              // sorted adjacency lists
  std::map<std::pair<int, int>, std::int64_t> weights;  // key (min, max)
  std::int64_t edgeCount = 0;

  std::int64_t weight(int a, int b) const;
  int degree(int node) const { return static_cast<int>(neighbors[static_cast<std::size_t>(node)].size()); }
};

/// One node per distinct label; a directed link for each consecutive event
/// pair not separated by a seam, weighted by repetition count.
SoloNetwork buildNetwork(const MelodyTrack& track);

UndirectedView undirectedProjection(const SoloNetwork& net);

/// Components of the undirected projection, each sorted ascending, ordered
/// by size descending then by smallest member index.
std::vector<std::vector<int>> weaklyConnectedComponents(const SoloNetwork& net);
std::vector<std::vector<int>> connectedComponents(const UndirectedView& view);

/// Dense matrix with rows as sources (entry [x][y] describes the x -> y link).
/// Throws CapExceeded when nodeCount exceeds `cap`.
std::vector<std::vector<std::int64_t>> adjacencyMatrix(const SoloNetwork& net,
                                                       bool weighted,
                                                       int cap = 10000);

/// JSON export: {"nodes": [labels], "edges": [{"src","dst","w"}], ...}.
std::string networkToJson(const SoloNetwork& net);
SoloNetwork networkFromJson(const std::string& text);

/// Edge-list CSV: header then "src_label,dst_label,weight" rows.
std::string networkToEdgeCsv(const SoloNetwork& net);

}  // namespace solonet
