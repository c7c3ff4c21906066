// Corpus manifest and run configuration.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "solonet/melody.h"

namespace solonet {

struct ManifestError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One score to analyze: where it lives, which part carries the solo and
/// which measures to take. Several spans yield several solos from one file.
struct ManifestEntry {
  std::string artist;
  std::string song;
  std::string file;
  std::string partId;
  std::vector<std::pair<int, int>> spans;  // 1-based inclusive; empty = whole part
  std::vector<std::string> tags;
};

struct CorpusManifest {
  std::vector<ManifestEntry> entries;
  std::string baseDir;  // directory of the manifest file; relative paths resolve here
};

/// Parses the JSON manifest. Accepts "part_id" or "part-id" as the key.
CorpusManifest loadManifest(const std::string& path);
CorpusManifest manifestFromJson(const std::string& text, std::string baseDir = "");

struct RunConfig {
  std::uint64_t seed = 1;
  int replicates = 100;
  double eigenTolerance = 1e-10;
  int eigenMaxIterations = 10000;
  double significanceLevel = 0.05;
  ConcatPolicy concatPolicy = ConcatPolicy::Seamed;
  std::string outputDir = "out";
  int workers = 1;
  double histogramBinWidth = 0.01;

  /// Throws ManifestError on out-of-range values.
  void validate() const;
};

}  // namespace solonet
