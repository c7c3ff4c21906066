#include "solonet/manifest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace solonet {

CorpusManifest loadManifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ManifestError("cannot open manifest '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return manifestFromJson(buffer.str(),
                          std::filesystem::path(path).parent_path().string());
}

CorpusManifest manifestFromJson(const std::string& text, std::string baseDir) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ManifestError(std::string("manifest is not valid JSON: ") + e.what());
  }

  CorpusManifest manifest;
  manifest.baseDir = std::move(baseDir);
  if (!doc.contains("entries") || !doc["entries"].is_array()) {
    throw ManifestError("manifest needs an 'entries' array");
  }
  for (const auto& item : doc["entries"]) {
    ManifestEntry entry;
    try {
      entry.artist = item.at("artist").get<std::string>();
      entry.song = item.at("song").get<std::string>();
      entry.file = item.at("file").get<std::string>();
      if (item.contains("part_id")) {
        entry.partId = item.at("part_id").get<std::string>();
      } else {
        entry.partId = item.at("part-id").get<std::string>();
      }
    } catch (const nlohmann::json::exception& e) {
      throw ManifestError(std::string("manifest entry missing field: ") + e.what());
    }
    if (item.contains("spans")) {
      for (const auto& span : item.at("spans")) {
        if (!span.is_array() || span.size() != 2) {
          throw ManifestError("span must be a [start, end] pair");
        }
        int start = span[0].get<int>();
        int end = span[1].get<int>();
        if (start < 1 || end < start) {
          throw ManifestError("span (" + std::to_string(start) + ", " +
                              std::to_string(end) + ") is not a valid 1-based range");
        }
        entry.spans.emplace_back(start, end);
      }
    }
    if (item.contains("tags")) {
      entry.tags = item.at("tags").get<std::vector<std::string>>();
    }
    manifest.entries.push_back(std::move(entry));
  }
  return manifest;
}

void RunConfig::validate() const {
  if (seed < 1) throw ManifestError("seed must be >= 1");
  if (replicates < 1) throw ManifestError("replicates must be >= 1");
  if (eigenTolerance <= 0) throw ManifestError("eigen tolerance must be > 0");
  if (eigenMaxIterations < 1) throw ManifestError("eigen max iterations must be >= 1");
  if (significanceLevel <= 0 || significanceLevel >= 1) {
    throw ManifestError("significance level must lie in (0, 1)");
  }
  if (workers < 1) throw ManifestError("workers must be >= 1");
  if (histogramBinWidth <= 0) throw ManifestError("histogram bin width must be > 0");
}

}  // namespace solonet
