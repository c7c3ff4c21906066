#include "solonet/commands.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include <json.hpp>

#include "solonet/baselines.h"
#include "solonet/metrics.h"
#include "solonet/score_ingest.h"
#include "solonet/stats.h"

namespace solonet {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunUnit {
  std::size_t index = 0;
  const ManifestEntry* entry = nullptr;
  std::optional<std::pair<int, int>> span;
};

struct UnitOutcome {
  bool ok = false;
  std::string error;
  std::string reportPath;
  std::string contentHash;
  MetricsReport report;
};

std::vector<RunUnit> buildUnits(const CorpusManifest& manifest) {
  std::vector<RunUnit> units;
  for (const auto& entry : manifest.entries) {
    if (entry.spans.empty()) {
      units.push_back({units.size(), &entry, std::nullopt});
      continue;
    }
    for (const auto& span : entry.spans) {
      units.push_back({units.size(), &entry, span});
    }
  }
  return units;
}

std::string unitName(std::size_t index) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "solo_%04zu", index + 1);
  return buffer;
}

std::uint64_t fnv1a64(std::string_view data, std::uint64_t hash = 0xCBF29CE484222325ULL) {
  for (unsigned char byte : data) {
    hash ^= byte;
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

std::string toHex(std::uint64_t value) {
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(value));
  return buffer;
}

json configSnapshot(const RunConfig& config) {
  return json{{"seed", config.seed},
              {"replicates", config.replicates},
              {"eigen_tolerance", config.eigenTolerance},
              {"eigen_max_iterations", config.eigenMaxIterations},
              {"significance_level", config.significanceLevel},
              {"concat_policy", config.concatPolicy == ConcatPolicy::Seamed ? "seamed" : "fused"},
              {"histogram_bin_width", config.histogramBinWidth}};
}

std::string resolvePath(const std::string& file, const std::string& baseDir) {
  fs::path path(file);
  if (path.is_absolute() || baseDir.empty()) return file;
  return (fs::path(baseDir) / path).string();
}

json spanJson(const std::optional<std::pair<int, int>>& span) {
  if (!span) return nullptr;
  return json::array({span->first, span->second});
}

void runParallel(std::size_t count, int workers,
                 const std::function<void(std::size_t)>& task) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = cursor.fetch_add(1);
      if (i >= count) return;
      task(i);
    }
  };
  std::vector<std::thread> pool;
  int spawn = std::min<int>(workers, static_cast<int>(count));
  pool.reserve(static_cast<std::size_t>(spawn));
  for (int t = 0; t < spawn; ++t) pool.emplace_back(worker);
  for (auto& thread : pool) thread.join();
}

}  // namespace

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ManifestError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void writeFileAtomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ManifestError("cannot write '" + tmp + "'");
    out << content;
  }
  fs::rename(tmp, path);
}

MelodyTrack ingestUnit(const ManifestEntry& entry,
                       const std::optional<std::pair<int, int>>& span,
                       const std::string& baseDir) {
  std::string path = resolvePath(entry.file, baseDir);
  std::string bytes = readFile(path);
  ScoreDocument doc = parseMusicXml(bytes, path);
  TrackSelector selector;
  selector.partId = entry.partId;
  selector.measureSpan = span;
  return extractTrack(doc, selector, entry.artist, entry.song);
}

int cmdAnalyze(const CorpusManifest& manifest, const RunConfig& config,
               bool writeHistograms) {
  config.validate();
  fs::create_directories(fs::path(config.outputDir) / "reports");

  std::vector<RunUnit> units = buildUnits(manifest);
  std::vector<UnitOutcome> outcomes(units.size());
  std::string configText = configSnapshot(config).dump();

  ReportConfig reportConfig{config.eigenTolerance, config.eigenMaxIterations};
  runParallel(units.size(), config.workers, [&](std::size_t i) {
    const RunUnit& unit = units[i];
    UnitOutcome& outcome = outcomes[i];
    try {
      std::string path = resolvePath(unit.entry->file, manifest.baseDir);
      std::string bytes = readFile(path);

      std::uint64_t hash = fnv1a64(bytes);
      hash = fnv1a64(unit.entry->partId, hash);
      hash = fnv1a64(spanJson(unit.span).dump(), hash);
      hash = fnv1a64(configText, hash);
      outcome.contentHash = toHex(hash);

      ScoreDocument doc = parseMusicXml(bytes, path);
      TrackSelector selector{unit.entry->partId, unit.span};
      MelodyTrack track =
          extractTrack(doc, selector, unit.entry->artist, unit.entry->song);
      SoloNetwork net = buildNetwork(track);
      outcome.report = metricsReport(net, reportConfig);

      outcome.reportPath = "reports/" + unitName(unit.index) + ".json";
      writeFileAtomic((fs::path(config.outputDir) / outcome.reportPath).string(),
                      reportToJson(outcome.report));
      if (writeHistograms && net.nodeCount() > 0) {
        DegreeProfile profile = degreeProfile(net);
        const std::pair<DegreeKind, const char*> kinds[] = {
            {DegreeKind::Total, "total"},
            {DegreeKind::In, "in"},
            {DegreeKind::Out, "out"},
            {DegreeKind::Weighted, "weighted"}};
        for (const auto& [kind, name] : kinds) {
          std::string path = "reports/" + unitName(unit.index) + "_degree_" + name +
                             ".csv";
          writeFileAtomic((fs::path(config.outputDir) / path).string(),
                          histogramToCsv(degreeDistribution(profile, kind)));
        }
      }
      outcome.ok = true;
    } catch (const std::exception& e) {
      outcome.ok = false;
      outcome.error = e.what();
    }
  });

  json index;
  index["config"] = configSnapshot(config);
  index["rng"] = kRngAlgorithm;
  json unitArray = json::array();
  std::size_t failures = 0;
  for (std::size_t i = 0; i < units.size(); ++i) {
    const RunUnit& unit = units[i];
    const UnitOutcome& outcome = outcomes[i];
    json record{{"index", unit.index},
                {"artist", unit.entry->artist},
                {"song", unit.entry->song},
                {"file", unit.entry->file},
                {"part_id", unit.entry->partId},
                {"span", spanJson(unit.span)},
                {"status", outcome.ok ? "ok" : "error"}};
    if (outcome.ok) {
      record["report"] = outcome.reportPath;
      record["content_hash"] = outcome.contentHash;
    } else {
      record["error"] = outcome.error;
      ++failures;
    }
    unitArray.push_back(std::move(record));
  }
  index["units"] = std::move(unitArray);
  writeFileAtomic((fs::path(config.outputDir) / "run_index.json").string(),
                  index.dump(1));

  // Wall-clock details live outside the deterministic outputs.
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::ofstream log(fs::path(config.outputDir) / "run_log.txt", std::ios::app);
  log << "analyze units=" << units.size() << " failures=" << failures << " at "
      << now << "\n";

  std::cout << "analyzed " << units.size() - failures << "/" << units.size()
            << " solos -> " << config.outputDir << "\n";
  return failures == 0 ? 0 : 1;
}

namespace {

const std::vector<std::string> kScalarMetrics = {
    "length",       "nodes",        "mean_degree", "mean_norm_degree",
    "mean_weighted_degree", "avg_distance", "pair_coverage", "clustering"};

std::optional<double> scalarFromReport(const json& report, const std::string& metric) {
  if (!report.contains(metric) || report.at(metric).is_null()) return std::nullopt;
  return report.at(metric).get<double>();
}

}  // namespace

int cmdCompare(const std::string& runDir, const std::string& metricName,
               const RunConfig& config, bool distributions) {
  config.validate();
  json index = json::parse(readFile((fs::path(runDir) / "run_index.json").string()));

  bool perNode = metricName == "betweenness" || metricName == "eigenvector";
  bool scalar = std::find(kScalarMetrics.begin(), kScalarMetrics.end(), metricName) !=
                kScalarMetrics.end();
  if (!scalar && !perNode) {
    throw ManifestError("unknown metric '" + metricName + "'");
  }
  if (perNode && !distributions) {
    throw ManifestError("metric '" + metricName +
                        "' is per-node; rerun with --distributions");
  }

  std::vector<std::string> artistOrder;
  std::vector<ArtistSample> samples;
  auto sampleFor = [&](const std::string& artist) -> ArtistSample& {
    for (auto& sample : samples) {
      if (sample.artist == artist) return sample;
    }
    artistOrder.push_back(artist);
    samples.push_back({artist, metricName, {}});
    return samples.back();
  };

  std::vector<std::vector<double>> perSoloValues;
  std::vector<std::string> perSoloNames;
  for (const auto& unit : index.at("units")) {
    if (unit.at("status").get<std::string>() != "ok") continue;
    json report = json::parse(
        readFile((fs::path(runDir) / unit.at("report").get<std::string>()).string()));
    std::string artist = unit.at("artist").get<std::string>();
    if (perNode) {
      std::vector<double> values;
      for (const auto& [label, value] : report.at(metricName).items()) {
        values.push_back(value.get<double>());
      }
      perSoloValues.push_back(std::move(values));
      perSoloNames.push_back(unitName(unit.at("index").get<std::size_t>()));
      continue;
    }
    if (auto value = scalarFromReport(report, metricName)) {
      sampleFor(artist).values.push_back(*value);
    } else {
      sampleFor(artist);  // keep artist order even if this solo is undefined
    }
  }

  fs::create_directories(config.outputDir);
  if (perNode) {
    auto histograms =
        pooledDistribution(perSoloValues, config.histogramBinWidth, true);
    for (std::size_t i = 0; i < histograms.size(); ++i) {
      std::string path = (fs::path(config.outputDir) /
                          ("dist_" + metricName + "_" + perSoloNames[i] + ".csv"))
                             .string();
      writeFileAtomic(path, histogramToCsv(histograms[i]));
    }
    std::cout << "wrote " << histograms.size() << " " << metricName
              << " distribution curves -> " << config.outputDir << "\n";
    return 0;
  }

  TTestMatrix matrix = pairwiseMatrix(samples, config.significanceLevel);

  json summary = json::object();
  for (const auto& sample : samples) {
    if (sample.values.empty()) continue;
    SummaryStats stats = summarize(sample.values);
    json row{{"mean", stats.mean}, {"count", stats.count}};
    if (stats.stddev) {
      row["std"] = *stats.stddev;
    } else {
      row["std"] = nullptr;
    }
    summary[sample.artist] = std::move(row);
  }

  json out;
  out["metric"] = metricName;
  out["artists"] = matrix.artists;
  out["summary"] = std::move(summary);
  out["matrix"] = json::parse(ttestMatrixToJson(matrix));
  std::string stem = "compare_" + metricName;
  writeFileAtomic((fs::path(config.outputDir) / (stem + ".json")).string(), out.dump(1));
  writeFileAtomic((fs::path(config.outputDir) / (stem + ".csv")).string(),
                  ttestMatrixToCsv(matrix));

  std::cout << ttestMatrixToCsv(matrix);
  return 0;
}

int cmdSmallworld(const CorpusManifest& manifest, const RunConfig& config) {
  config.validate();
  fs::create_directories(config.outputDir);
  std::vector<RunUnit> units = buildUnits(manifest);

  json results = json::array();
  std::size_t failures = 0;
  std::printf("%-40s %8s %8s %10s %14s  %s\n", "song", "cc", "cc (RG)", "avg dist",
              "avg dist (RG)", "verdict");
  for (const RunUnit& unit : units) {
    std::string name = unit.entry->artist + " -- " + unit.entry->song;
    try {
      MelodyTrack track = ingestUnit(*unit.entry, unit.span, manifest.baseDir);
      SoloNetwork net = buildNetwork(track);
      SmallWorldReport report = smallWorldAssessment(
          net, config.replicates, deriveSubSeed(config.seed, unit.index));
      std::printf("%-40s %8.3f %8.3f %10.3f %14.3f  %s\n", name.c_str(), report.cc,
                  report.ccRg, report.avgDist, report.avgDistRg,
                  verdictName(report.verdict));
      json record = json::parse(smallWorldReportToJson(report));
      record["artist"] = unit.entry->artist;
      record["song"] = unit.entry->song;
      record["file"] = unit.entry->file;
      record["span"] = spanJson(unit.span);
      results.push_back(std::move(record));
    } catch (const std::exception& e) {
      std::printf("%-40s error: %s\n", name.c_str(), e.what());
      results.push_back(json{{"artist", unit.entry->artist},
                             {"song", unit.entry->song},
                             {"file", unit.entry->file},
                             {"span", spanJson(unit.span)},
                             {"error", e.what()}});
      ++failures;
    }
  }
  writeFileAtomic((fs::path(config.outputDir) / "smallworld.json").string(),
                  json{{"results", results}}.dump(1));
  return failures == 0 ? 0 : 1;
}

int cmdSmallworldNetwork(const std::string& networkJsonPath, const RunConfig& config) {
  config.validate();
  fs::create_directories(config.outputDir);
  SoloNetwork net = networkFromJson(readFile(networkJsonPath));
  SmallWorldReport report = smallWorldAssessment(net, config.replicates, config.seed);
  std::printf("%-40s %8s %8s %10s %14s  %s\n", "network", "cc", "cc (RG)", "avg dist",
              "avg dist (RG)", "verdict");
  std::printf("%-40s %8.3f %8.3f %10.3f %14.3f  %s\n", networkJsonPath.c_str(),
              report.cc, report.ccRg, report.avgDist, report.avgDistRg,
              verdictName(report.verdict));
  writeFileAtomic((fs::path(config.outputDir) / "smallworld.json").string(),
                  smallWorldReportToJson(report));
  return 0;
}

int cmdConcat(const CorpusManifest& manifest, const std::string& artist,
              const RunConfig& config) {
  config.validate();
  std::vector<RunUnit> units = buildUnits(manifest);
  std::vector<MelodyTrack> tracks;
  for (const RunUnit& unit : units) {
    if (unit.entry->artist != artist) continue;
    tracks.push_back(ingestUnit(*unit.entry, unit.span, manifest.baseDir));
  }
  if (tracks.empty()) {
    throw UnknownArtist("no manifest entries for artist '" + artist + "'");
  }

  ReportConfig reportConfig{config.eigenTolerance, config.eigenMaxIterations};
  std::vector<MetricsReport> soloReports;
  soloReports.reserve(tracks.size());
  for (const auto& track : tracks) {
    soloReports.push_back(metricsReport(buildNetwork(track), reportConfig));
  }

  MelodyTrack combined = concatenateTracks(tracks, config.concatPolicy);
  MetricsReport concatenated = metricsReport(buildNetwork(combined), reportConfig);

  auto average = [&](auto&& pick) -> std::optional<double> {
    double sum = 0;
    std::size_t count = 0;
    for (const auto& report : soloReports) {
      if (auto value = pick(report)) {
        sum += *value;
        ++count;
      }
    }
    if (count == 0) return std::nullopt;
    return sum / static_cast<double>(count);
  };
  auto avgClustering = average([](const MetricsReport& r) { return r.clustering; });
  auto avgDegree = average([](const MetricsReport& r) { return r.meanDegree; });
  auto avgDistanceValue = average([](const MetricsReport& r) { return r.avgDistance; });
  auto avgNodes = average([](const MetricsReport& r) {
    return std::optional<double>(static_cast<double>(r.nodes));
  });

  auto show = [](const std::optional<double>& value) {
    return value ? std::to_string(*value) : std::string("undefined");
  };
  std::printf("%-24s %16s %16s\n", "metric", "concatenated", "solo average");
  std::printf("%-24s %16s %16s\n", "cc", show(concatenated.clustering).c_str(),
              show(avgClustering).c_str());
  std::printf("%-24s %16s %16s\n", "mean degree", show(concatenated.meanDegree).c_str(),
              show(avgDegree).c_str());
  std::printf("%-24s %16s %16s\n", "avg dist", show(concatenated.avgDistance).c_str(),
              show(avgDistanceValue).c_str());
  std::printf("%-24s %16zu %16s\n", "nodes", concatenated.nodes,
              show(avgNodes).c_str());

  json out;
  out["artist"] = artist;
  out["policy"] = config.concatPolicy == ConcatPolicy::Seamed ? "seamed" : "fused";
  out["solo_count"] = tracks.size();
  out["concatenated"] = json::parse(reportToJson(concatenated));
  json averages;
  averages["clustering"] = avgClustering ? json(*avgClustering) : json(nullptr);
  averages["mean_degree"] = avgDegree ? json(*avgDegree) : json(nullptr);
  averages["avg_distance"] = avgDistanceValue ? json(*avgDistanceValue) : json(nullptr);
  averages["nodes"] = avgNodes ? json(*avgNodes) : json(nullptr);
  out["solo_average"] = std::move(averages);

  fs::create_directories(config.outputDir);
  std::string slug = artist;
  for (char& c : slug) {
    if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
  }
  writeFileAtomic((fs::path(config.outputDir) / ("concat_" + slug + ".json")).string(),
                  out.dump(1));
  return 0;
}

int cmdExportNetwork(const CorpusManifest& manifest, const RunConfig& config) {
  config.validate();
  fs::create_directories(config.outputDir);
  std::vector<RunUnit> units = buildUnits(manifest);
  std::size_t failures = 0;
  for (const RunUnit& unit : units) {
    try {
      MelodyTrack track = ingestUnit(*unit.entry, unit.span, manifest.baseDir);
      SoloNetwork net = buildNetwork(track);
      std::string stem = "network_" + unitName(unit.index).substr(5);
      writeFileAtomic((fs::path(config.outputDir) / (stem + ".json")).string(),
                      networkToJson(net));
      writeFileAtomic((fs::path(config.outputDir) / (stem + ".edges.csv")).string(),
                      networkToEdgeCsv(net));
    } catch (const std::exception& e) {
      std::cerr << "export failed for " << unit.entry->file << ": " << e.what() << "\n";
      ++failures;
    }
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace solonet
