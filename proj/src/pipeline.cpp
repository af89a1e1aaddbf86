#include "pcmrank/pipeline.hpp"

#include <algorithm>
#include <set>

namespace pcmrank {

std::string config_name(const PipelineConfig& config) {
  std::string name = config.method == Method::Em ? "EM_" : "LLSM_";
  if (config.transform) name += "W";
  name += config.correction == CorrectionMethod::Method1 ? "1" : "2";
  return name;
}

std::vector<std::string> labels_from_records(
    std::span<const HeadToHead> records) {
  std::set<std::string> names;
  for (const HeadToHead& r : records) {
    names.insert(r.player_a);
    names.insert(r.player_b);
  }
  return {names.begin(), names.end()};
}

PipelineRun run_pipeline(std::span<const HeadToHead> records,
                         const std::vector<std::string>& labels,
                         const PipelineConfig& config) {
  RawPcm raw = build_raw_pcm(records, labels);
  CorrectionPolicy policy{config.correction, 5};
  IncompletePCM matrix = apply_correction(raw.pcm, raw.zero_loss, policy);
  if (config.transform) {
    matrix = apply_transformation(matrix, match_counts(records, labels));
  }

  PipelineRun run;
  if (config.method == Method::Llsm) {
    run.weights = llsm_weights(matrix);
  } else {
    CompletionOptions options;
    options.tol = config.tol;
    options.max_cycles = config.max_iter;
    CompletionResult completion = em_complete(matrix, options);
    run.weights =
        perron_vector(completion.completed, options.power).vector;
    run.lambda_max = completion.lambda_max;
    run.iterations = completion.iterations;
    if (matrix.size() >= 2) {
      run.consistency_index =
          consistency_index(completion.lambda_max, matrix.size());
    }
  }
  run.ranking = ranking_from_weights(run.weights, labels);
  run.matrix = std::move(matrix);
  return run;
}

AddMatchResult perturb_add_match(std::span<const HeadToHead> records,
                                 const std::vector<std::string>& labels,
                                 const std::string& a, const std::string& b,
                                 const std::string& winner,
                                 const PipelineConfig& config) {
  auto known = [&](const std::string& name) {
    return std::find(labels.begin(), labels.end(), name) != labels.end();
  };
  if (!known(a)) throw Error(ErrorCode::UnknownPlayer, "unknown player: " + a);
  if (!known(b)) throw Error(ErrorCode::UnknownPlayer, "unknown player: " + b);
  if (a == b) {
    throw Error(ErrorCode::ParseError, "a player cannot play themselves");
  }
  if (winner != a && winner != b) {
    throw Error(ErrorCode::UnknownPlayer,
                "winner must be one of the two players");
  }

  std::vector<HeadToHead> modified(records.begin(), records.end());
  bool found = false;
  for (HeadToHead& r : modified) {
    if ((r.player_a == a && r.player_b == b) ||
        (r.player_a == b && r.player_b == a)) {
      (r.player_a == winner ? r.wins_a : r.wins_b) += 1;
      found = true;
      break;
    }
  }
  if (!found) {
    modified.push_back(
        HeadToHead{a, b, winner == a ? 1L : 0L, winner == b ? 1L : 0L});
  }

  AddMatchResult result;
  result.before = run_pipeline(records, labels, config).ranking;
  result.after = run_pipeline(modified, labels, config).ranking;
  result.changes.reserve(labels.size());
  for (size_t i = 0; i < labels.size(); ++i) {
    result.changes.push_back(
        RankShift{labels[i], result.before.ranks[i], result.after.ranks[i]});
  }
  return result;
}

RemovePlayerResult perturb_remove_player(std::span<const HeadToHead> records,
                                         const std::vector<std::string>& labels,
                                         const std::string& player,
                                         const PipelineConfig& config) {
  if (std::find(labels.begin(), labels.end(), player) == labels.end()) {
    throw Error(ErrorCode::UnknownPlayer, "unknown player: " + player);
  }
  std::vector<std::string> remaining;
  remaining.reserve(labels.size() - 1);
  for (const std::string& l : labels) {
    if (l != player) remaining.push_back(l);
  }
  std::vector<HeadToHead> kept;
  kept.reserve(records.size());
  for (const HeadToHead& r : records) {
    if (r.player_a != player && r.player_b != player) kept.push_back(r);
  }

  RemovePlayerResult result;
  result.before = run_pipeline(records, labels, config).ranking;
  result.after = run_pipeline(kept, remaining, config).ranking;
  result.spearman_common =
      spearman(restrict_ranking(result.before, remaining), result.after);
  return result;
}

}  // namespace pcmrank
