#include "solonet/network.h"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace solonet {

int SoloNetwork::addNode(const std::string& label) {
  auto it = index_.find(label);
  if (it != index_.end()) return it->second;
  int id = static_cast<int>(labels_.size());
  labels_.push_back(label);
  index_.emplace(label, id);
  return id;
}

void SoloNetwork::addEdge(int source, int target, std::int64_t weight) {
  if (source < 0 || source >= nodeCount() || target < 0 || target >= nodeCount()) {
    throw std::out_of_range("edge endpoint out of range");
  }
  if (weight <= 0) throw std::invalid_argument("edge weight must be >= 1");
  edges_[{source, target}] += weight;
}

std::int64_t SoloNetwork::totalWeight() const {
  std::int64_t total = 0;
  for (const auto& [edge, weight] : edges_) total += weight;
  return total;
}

int SoloNetwork::indexOf(const std::string& label) const {
  auto it = index_.find(label);
  return it == index_.end() ? -1 : it->second;
}

std::int64_t SoloNetwork::weight(int source, int target) const {
  auto it = edges_.find({source, target});
  return it == edges_.end() ? 0 : it->second;
}

std::int64_t UndirectedView::weight(int a, int b) const {
  auto it = weights.find(std::minmax(a, b));
  return it == weights.end() ? 0 : it->second;
}

SoloNetwork buildNetwork(const MelodyTrack& track) {
  SoloNetwork net;
  net.setMetadata(track.artist, track.song);
  net.setSourceCounts(track.events.size(), track.boundaries.size());

  std::vector<bool> seamBefore(track.events.size() + 1, false);
  for (std::size_t seam : track.boundaries) {
    if (seam < seamBefore.size()) seamBefore[seam] = true;
  }

  int previous = -1;
  for (std::size_t i = 0; i < track.events.size(); ++i) {
    int node = net.addNode(nodeKey(track.events[i]));
    if (previous >= 0 && !seamBefore[i]) {
      net.addEdge(previous, node);
    }
    previous = node;
  }
  return net;
}

UndirectedView undirectedProjection(const SoloNetwork& net) {
  UndirectedView view;
  view.nodeCount = net.nodeCount();
  view.neighbors.assign(static_cast<std::size_t>(view.nodeCount), {});
  for (const auto& [edge, weight] : net.edges()) {
    auto [src, dst] = edge;
    if (src == dst) continue;  // path and triangle semantics exclude loops
    auto key = std::minmax(src, dst);
    auto [it, inserted] = view.weights.try_emplace(key, 0);
    it->second += weight;
    if (inserted) {
      view.neighbors[static_cast<std::size_t>(src)].push_back(dst);
      view.neighbors[static_cast<std::size_t>(dst)].push_back(src);
    }
  }
  for (auto& list : view.neighbors) std::sort(list.begin(), list.end());
  view.edgeCount = static_cast<std::int64_t>(view.weights.size());
  return view;
}

std::vector<std::vector<int>> connectedComponents(const UndirectedView& view) {
  std::vector<std::vector<int>> components;
  std::vector<bool> seen(static_cast<std::size_t>(view.nodeCount), false);
  for (int start = 0; start < view.nodeCount; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    std::vector<int> component;
    std::vector<int> stack = {start};
    seen[static_cast<std::size_t>(start)] = true;
    while (!stack.empty()) {
      int node = stack.back();
      stack.pop_back();
      component.push_back(node);
      for (int next : view.neighbors[static_cast<std::size_t>(node)]) {
        if (!seen[static_cast<std::size_t>(next)]) {
          seen[static_cast<std::size_t>(next)] = true;
          stack.push_back(next);
        }
      }
    }
    std::sort(component.begin(), component.end());
    components.push_back(std::move(component));
  }
  std::stable_sort(components.begin(), components.end(),
                   [](const std::vector<int>& a, const std::vector<int>& b) {
                     if (a.size() != b.size()) return a.size() > b.size();
                     return a.front() < b.front();
                   });
  return components;
}

std::vector<std::vector<int>> weaklyConnectedComponents(const SoloNetwork& net) {
  return connectedComponents(undirectedProjection(net));
}

std::vector<std::vector<std::int64_t>> adjacencyMatrix(const SoloNetwork& net,
                                                       bool weighted, int cap) {
  if (net.nodeCount() > cap) {
    throw CapExceeded("adjacency matrix for " + std::to_string(net.nodeCount()) +
                      " nodes exceeds cap " + std::to_string(cap));
  }
  std::size_t n = static_cast<std::size_t>(net.nodeCount());
  std::vector<std::vector<std::int64_t>> matrix(n, std::vector<std::int64_t>(n, 0));
  for (const auto& [edge, weight] : net.edges()) {
    matrix[static_cast<std::size_t>(edge.first)][static_cast<std::size_t>(edge.second)] =
        weighted ? weight : 1;
  }
  return matrix;
}

std::string networkToJson(const SoloNetwork& net) {
  nlohmann::json doc;
  doc["artist"] = net.artist();
  doc["song"] = net.song();
  doc["length"] = net.sourceLength();
  doc["seams"] = net.seamCount();
  doc["nodes"] = net.labels();
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [edge, weight] : net.edges()) {
    edges.push_back({{"src", edge.first}, {"dst", edge.second}, {"w", weight}});
  }
  doc["edges"] = std::move(edges);
  return doc.dump(1);
}

SoloNetwork networkFromJson(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  SoloNetwork net;
  net.setMetadata(doc.value("artist", ""), doc.value("song", ""));
  net.setSourceCounts(doc.value("length", std::size_t{0}), doc.value("seams", std::size_t{0}));
  for (const auto& label : doc.at("nodes")) {
    net.addNode(label.get<std::string>());
  }
  for (const auto& edge : doc.at("edges")) {
    net.addEdge(edge.at("src").get<int>(), edge.at("dst").get<int>(),
                edge.at("w").get<std::int64_t>());
  }
  return net;
}

std::string networkToEdgeCsv(const SoloNetwork& net) {
  std::ostringstream out;
  out << "src_label,dst_label,weight\n";
  auto quote = [](const std::string& label) {
    std::string quoted = "\"";
    for (char c : label) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    quoted += '"';
    return quoted;
  };
  for (const auto& [edge, weight] : net.edges()) {
    out << quote(net.label(edge.first)) << ',' << quote(net.label(edge.second)) << ','
        << weight << '\n';
  }
  return out.str();
}

}  // namespace solonet
