#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pcmrank/errors.hpp"

namespace pcmrank {

/// Head-to-head record between two players: how many matches each side won.
/// A record exists only if at least one match was played.
struct HeadToHead {
  std::string player_a;
  std::string player_b;
  long wins_a = 0;
  long wins_b = 0;

  long total() const { return wins_a + wins_b; }
};

/// Square positive reciprocal matrix with possibly-missing entries.
///
/// Invariants: diagonal entries are 1 and always present; off-diagonal
/// entries are present in symmetric pairs with a(i,j) * a(j,i) = 1; every
/// present entry is strictly positive. Reciprocals are constructed, never
/// recomputed, so reciprocity holds exactly.
class IncompletePCM {
 public:
  IncompletePCM() = default;
  explicit IncompletePCM(std::vector<std::string> labels);

  int size() const { return n_; }
  const std::vector<std::string>& labels() const { return labels_; }

  bool known(int i, int j) const {
    check_index(i, j);
    return known_[idx(i, j)] != 0;
  }
  double at(int i, int j) const;

  /// Sets a(i,j) = value and a(j,i) = 1 / value.
  void set_pair(int i, int j, double value);
  void clear_pair(int i, int j);

  /// Index of a label, or -1 if absent.
  int index_of(const std::string& label) const;

  /// Upper-triangle (i < j) cells that are present / missing.
  std::vector<std::pair<int, int>> known_pairs() const;
  std::vector<std::pair<int, int>> missing_pairs() const;

  bool complete() const;

  /// Throws on any invariant violation (reciprocity checked to 1e-12
  /// relative; it cannot actually drift because reciprocals are stored).
  void validate() const;

 private:
  int idx(int i, int j) const { return i * n_ + j; }
  void check_index(int i, int j) const;

  int n_ = 0;
  std::vector<std::string> labels_;
  std::vector<double> values_;
  std::vector<char> known_;
};

/// Symmetric grid of per-pair match counts z(i,j).
class MatchCounts {
 public:
  MatchCounts() = default;
  explicit MatchCounts(int n) : n_(n), counts_(n * n, 0) {}

  int size() const { return n_; }
  long at(int i, int j) const { return counts_[i * n_ + j]; }
  void set(int i, int j, long z);

  /// Largest count over all pairs.
  long max() const;

 private:
  int n_ = 0;
  std::vector<long> counts_;
};

/// Undirected graph of the known comparisons: one vertex per player, one
/// edge per present off-diagonal pair.
struct ComparisonGraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;  // i < j, sorted, no duplicates

  std::vector<int> degrees() const;
  bool has_edge(int i, int j) const;
};

enum class CorrectionMethod {
  Method1,  // winner's ratio = match count rounded up to a bucket multiple
  Method2,  // winner's ratio = wins + 2
};

struct CorrectionPolicy {
  CorrectionMethod method = CorrectionMethod::Method2;
  long bucket = 5;  // Method1 bucket width; produced values are its multiples
};

/// A pair where one side won every match: ratio undefined, so the strict
/// matrix leaves it missing. `wins` equals the match count (loser has none).
struct ZeroLossPair {
  int winner = 0;
  int loser = 0;
  long wins = 0;
};

struct RawPcm {
  IncompletePCM pcm;
  std::vector<ZeroLossPair> zero_loss;
};

/// Builds the strict ratio matrix: entry (a,b) = wins_a / wins_b when both
/// sides won at least once; pairs with a zero side are left missing and
/// reported in `zero_loss` for a correction pass.
RawPcm build_raw_pcm(std::span<const HeadToHead> records,
                     const std::vector<std::string>& labels);

/// Match-count grid for the same records/labels.
MatchCounts match_counts(std::span<const HeadToHead> records,
                         const std::vector<std::string>& labels);

/// Fills each zero-loss pair with an artificial ratio for the winner:
/// Method1 rounds the match count up to a multiple of the bucket width,
/// Method2 uses wins + 2. Everything else is left untouched.
IncompletePCM apply_correction(const IncompletePCM& pcm,
                               std::span<const ZeroLossPair> zero_loss,
                               const CorrectionPolicy& policy);

/// Dampens ratios from pairs with few matches: each present entry p is
/// replaced by p^(z / max z). Pairs at the maximum count keep their ratio;
/// rarely-played pairs move toward 1.
IncompletePCM apply_transformation(const IncompletePCM& pcm,
                                   const MatchCounts& counts);

ComparisonGraph graph_of(const IncompletePCM& pcm);

bool is_connected(const ComparisonGraph& g);

/// Vertex partition into connected components (each sorted, ordered by
/// smallest member).
std::vector<std::vector<int>> connected_components(const ComparisonGraph& g);

/// Reorders players: row/column i of the result is row/column perm[i] of the
/// input. `perm` must be a permutation of 0..n-1.
IncompletePCM relabel(const IncompletePCM& pcm, const std::vector<int>& perm);

}  // namespace pcmrank
