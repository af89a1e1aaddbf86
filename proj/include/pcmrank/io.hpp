#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "pcmrank/analysis.hpp"
#include "pcmrank/pipeline.hpp"

namespace pcmrank {

/// Reads a head-to-head CSV with header `player_a,player_b,wins_a,wins_b`.
/// Errors carry the 1-based line number.
std::vector<HeadToHead> load_dataset(const std::filesystem::path& path);

/// Writes records in the same CSV layout (load ∘ save is byte-stable).
void save_dataset(std::span<const HeadToHead> records,
                  const std::filesystem::path& path);

struct RankingReport {
  PipelineConfig config;
  PipelineRun run;
  int player_count = 0;
  int pair_count = 0;
};

RankingReport run_ranking(const PipelineConfig& config,
                          std::span<const HeadToHead> records);

std::string to_text(const RankingReport& report);
std::string to_json(const RankingReport& report);

struct AnalysisSections {
  bool rankings = true;
  bool correlations = true;
  bool density = true;
  bool degrees = true;
  bool triads = true;
};

struct AnalysisReport {
  std::vector<std::string> labels;
  int pair_count = 0;
  AnalysisSections sections;
  // Rankings/correlations (present when requested):
  std::vector<std::string> variant_names;
  std::vector<Ranking> rankings;
  std::vector<std::vector<double>> correlations;
  // Matrix/graph statistics:
  double density_value = 0.0;
  long known_cells = 0;
  std::vector<std::pair<std::string, int>> degrees;
  TriadReport triads;
};

/// Computes the requested sections; rankings use the eight standard variants
/// (EM/LLSM x correction 1/2 x plain/transformed).
AnalysisReport run_analysis(std::span<const HeadToHead> records,
                            const AnalysisSections& sections);

std::string to_text(const AnalysisReport& report);
std::string to_json(const AnalysisReport& report);

struct AddMatchReport {
  PipelineConfig config;
  std::string player_a, player_b, winner;
  AddMatchResult result;
};

struct RemovePlayerReport {
  PipelineConfig config;
  std::string player;
  RemovePlayerResult result;
};

std::string to_text(const AddMatchReport& report);
std::string to_json(const AddMatchReport& report);
std::string to_text(const RemovePlayerReport& report);
std::string to_json(const RemovePlayerReport& report);

/// Renders the comparison graph as Graphviz DOT: solid arrows point from the
/// majority winner to the loser, dashed undirected edges mark even records.
/// Node and edge order is sorted by label, so output is byte-stable.
std::string export_graph_dot(const ComparisonGraph& g,
                             std::span<const HeadToHead> records,
                             const std::vector<std::string>& labels);

void write_graph_dot(const ComparisonGraph& g,
                     std::span<const HeadToHead> records,
                     const std::vector<std::string>& labels,
                     const std::filesystem::path& path);

}  // namespace pcmrank
