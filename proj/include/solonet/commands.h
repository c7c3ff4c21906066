// Batch commands behind the CLI: analyze, compare, smallworld, concat,
// export-network. Each writes its outputs under config.outputDir and
// returns the process exit code (0 ok, 1 partial failure).

#pragma once

#include <optional>
#include <string>
#include <utility>

#include "solonet/manifest.h"

namespace solonet {

struct UnknownArtist : ManifestError {
  using ManifestError::ManifestError;
};

/// One metrics report per (file, span) unit plus a deterministic run index.
/// Unit failures are recorded in the index and do not stop the batch.
/// With `writeHistograms`, degree-distribution CSVs accompany each report.
int cmdAnalyze(const CorpusManifest& manifest, const RunConfig& config,
               bool writeHistograms = false);

/// Pairwise t-test matrix and per-artist summaries for one scalar metric,
/// read from an analyze run index. With `distributions`, per-solo histogram
/// CSVs are written for the per-node metrics (betweenness, eigenvector).
int cmdCompare(const std::string& runDir, const std::string& metricName,
               const RunConfig& config, bool distributions = false);

/// Small-world assessment for every manifest unit; prints the four-column
/// comparison table and writes smallworld.json.
int cmdSmallworld(const CorpusManifest& manifest, const RunConfig& config);

/// Same assessment for a single exported network JSON file.
int cmdSmallworldNetwork(const std::string& networkJsonPath, const RunConfig& config);

/// Concatenates all of one artist's solos under the configured policy and
/// reports the concatenated-network metrics next to per-solo averages.
int cmdConcat(const CorpusManifest& manifest, const std::string& artist,
              const RunConfig& config);

/// Writes network JSON and edge-list CSV for every manifest unit.
int cmdExportNetwork(const CorpusManifest& manifest, const RunConfig& config);

/// Reads a whole file; throws ManifestError when unreadable.
std::string readFile(const std::string& path);

/// Writes via a temp file and rename so readers never see partial content.
void writeFileAtomic(const std::string& path, const std::string& content);

/// Ingests one manifest unit into a MelodyTrack.
MelodyTrack ingestUnit(const ManifestEntry& entry,
                       const std::optional<std::pair<int, int>>& span,
                       const std::string& baseDir);

}  // namespace solonet
