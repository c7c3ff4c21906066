// solonet CLI: turn MusicXML solos into networks and report their metrics.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "solonet/commands.h"

namespace {

void addConfigFlags(CLI::App* cmd, solonet::RunConfig& config) {
  cmd->add_option("--out", config.outputDir, "Output directory");
  cmd->add_option("--seed", config.seed, "RNG seed");
  cmd->add_option("--replicates", config.replicates, "Random-graph replicates");
  cmd->add_option("--alpha", config.significanceLevel, "Significance level");
  cmd->add_option("--workers", config.workers, "Concurrent manifest entries");
  cmd->add_option("--eigen-tol", config.eigenTolerance, "Eigenvector tolerance");
  cmd->add_option("--eigen-max-iter", config.eigenMaxIterations,
                  "Eigenvector iteration cap");
  cmd->add_option("--bin-width", config.histogramBinWidth,
                  "Histogram bin width for distribution exports");
}

void addPolicyFlag(CLI::App* cmd, std::string& policy) {
  cmd->add_option("--policy", policy, "Concatenation policy: seamed | fused")
      ->check(CLI::IsMember({"seamed", "fused"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"solonet: complex-network analysis of symbolic musical solos"};
  app.require_subcommand(1);

  solonet::RunConfig config;
  std::string manifestPath;
  std::string metricName = "clustering";
  std::string artist;
  std::string networkPath;
  std::string policy = "seamed";
  bool distributions = false;
  bool histograms = false;

  CLI::App* analyze = app.add_subcommand(
      "analyze", "Per-solo metrics reports plus a run index");
  analyze->add_option("--manifest", manifestPath, "Corpus manifest JSON")->required();
  analyze->add_flag("--histograms", histograms,
                    "Also write degree-distribution CSVs per solo");
  addConfigFlags(analyze, config);

  CLI::App* compare = app.add_subcommand(
      "compare", "Pairwise t-test matrix for one metric across artists");
  compare->add_option("--run", config.outputDir,
                      "Directory holding run_index.json (also receives outputs)");
  compare->add_option("--metric", metricName,
                      "length | nodes | mean_degree | mean_norm_degree | "
                      "mean_weighted_degree | avg_distance | pair_coverage | "
                      "clustering | betweenness | eigenvector");
  compare->add_option("--alpha", config.significanceLevel, "Significance level");
  compare->add_option("--bin-width", config.histogramBinWidth, "Histogram bin width");
  compare->add_flag("--distributions", distributions,
                    "Write per-solo histogram CSVs for per-node metrics");

  CLI::App* smallworld = app.add_subcommand(
      "smallworld", "Compare each solo network against size-matched random graphs");
  smallworld->add_option("--manifest", manifestPath, "Corpus manifest JSON");
  smallworld->add_option("--network", networkPath, "Single exported network JSON");
  addConfigFlags(smallworld, config);

  CLI::App* concat = app.add_subcommand(
      "concat", "Concatenate one artist's solos and compare with per-solo averages");
  concat->add_option("--manifest", manifestPath, "Corpus manifest JSON")->required();
  concat->add_option("--artist", artist, "Artist name as written in the manifest")
      ->required();
  addPolicyFlag(concat, policy);
  addConfigFlags(concat, config);

  CLI::App* exportNet = app.add_subcommand(
      "export-network", "Write network JSON and edge CSV for every manifest unit");
  exportNet->add_option("--manifest", manifestPath, "Corpus manifest JSON")->required();
  addConfigFlags(exportNet, config);

  CLI11_PARSE(app, argc, argv);
  config.concatPolicy =
      policy == "fused" ? solonet::ConcatPolicy::Fused : solonet::ConcatPolicy::Seamed;

  try {
    if (analyze->parsed()) {
      return solonet::cmdAnalyze(solonet::loadManifest(manifestPath), config,
                                 histograms);
    }
    if (compare->parsed()) {
      return solonet::cmdCompare(config.outputDir, metricName, config, distributions);
    }
    if (smallworld->parsed()) {
      if (!networkPath.empty()) {
        return solonet::cmdSmallworldNetwork(networkPath, config);
      }
      if (manifestPath.empty()) {
        std::cerr << "smallworld needs --manifest or --network\n";
        return 2;
      }
      return solonet::cmdSmallworld(solonet::loadManifest(manifestPath), config);
    }
    if (concat->parsed()) {
      return solonet::cmdConcat(solonet::loadManifest(manifestPath), artist, config);
    }
    if (exportNet->parsed()) {
      return solonet::cmdExportNetwork(solonet::loadManifest(manifestPath), config);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
