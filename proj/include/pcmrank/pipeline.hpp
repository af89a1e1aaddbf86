#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcmrank/analysis.hpp"
#include "pcmrank/matrix.hpp"
#include "pcmrank/solvers.hpp"

namespace pcmrank {

enum class Method { Em, Llsm };

struct PipelineConfig {
  Method method = Method::Llsm;
  CorrectionMethod correction = CorrectionMethod::Method2;
  bool transform = false;
  double tol = 1e-10;
  int max_iter = 10000;
};

/// Short variant name in the EM_1 / LLSM_W2 style: method, W when the
/// match-count transformation is applied, correction method index.
std::string config_name(const PipelineConfig& config);

struct PipelineRun {
  IncompletePCM matrix;  // corrected (and possibly transformed) matrix
  WeightVector weights;
  Ranking ranking;
  std::optional<double> lambda_max;         // EM only
  std::optional<double> consistency_index;  // EM only
  std::optional<int> iterations;            // EM completion cycles
};

/// Sorted distinct player names appearing in the records.
std::vector<std::string> labels_from_records(std::span<const HeadToHead> records);

/// Full pipeline: build raw matrix, correct zero-loss pairs, optionally
/// transform, solve with the configured method, rank.
PipelineRun run_pipeline(std::span<const HeadToHead> records,
                         const std::vector<std::string>& labels,
                         const PipelineConfig& config);

struct RankShift {
  std::string label;
  double before = 0.0;
  double after = 0.0;
};

struct AddMatchResult {
  Ranking before;
  Ranking after;
  std::vector<RankShift> changes;  // every player, ranking label order
};

/// Adds one match with the given winner to the pair (a, b) and reruns the
/// whole pipeline; match counts change, so transformed entries elsewhere may
/// move too.
AddMatchResult perturb_add_match(std::span<const HeadToHead> records,
                                 const std::vector<std::string>& labels,
                                 const std::string& a, const std::string& b,
                                 const std::string& winner,
                                 const PipelineConfig& config);

struct RemovePlayerResult {
  Ranking before;            // all n players
  Ranking after;             // remaining n-1 players
  double spearman_common = 0.0;  // before restricted to survivors vs after
};

/// Drops a player and all their matches, then reruns the pipeline on the
/// remaining players. Fails with GRAPH_DISCONNECTED if the player was a cut
/// vertex of the comparison graph.
RemovePlayerResult perturb_remove_player(std::span<const HeadToHead> records,
                                         const std::vector<std::string>& labels,
                                         const std::string& player,
                                         const PipelineConfig& config);

}  // namespace pcmrank
