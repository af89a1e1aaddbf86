#pragma once

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pcmrank/matrix.hpp"
#include "pcmrank/solvers.hpp"

namespace pcmrank {

/// Rank numbers aligned with `labels`; rank 1 is best and exact ties share
/// the average of the positions they occupy, so ranks always sum to
/// n(n+1)/2.
struct Ranking {
  std::vector<std::string> labels;
  std::vector<double> ranks;

  /// Labels ordered best-first (ties listed alphabetically).
  std::vector<std::string> order() const;
  double rank_of(const std::string& label) const;
};

/// Directed 3-cycles of the majority relation: a beats b, b beats c,
/// c beats a (indices into the label list).
struct TriadReport {
  std::vector<std::array<int, 3>> triads;

  int count() const { return static_cast<int>(triads.size()); }
};

Ranking ranking_from_weights(const WeightVector& weights,
                             const std::vector<std::string>& labels);

/// Ranking by total wins over total losses. Players with no loss rank above
/// every finite ratio (more wins first); equal keys share average ranks.
Ranking win_loss_ranking(std::span<const HeadToHead> records,
                         const std::vector<std::string>& labels);

/// Spearman rank correlation: Pearson correlation of the tie-averaged rank
/// vectors, which reduces to 1 - 6*sum(d^2)/(n(n^2-1)) when no ties occur.
/// The two rankings must cover the same label set (any order).
double spearman(const Ranking& r1, const Ranking& r2);

/// Pairwise Spearman matrix: symmetric with unit diagonal.
std::vector<std::vector<double>> correlation_matrix(
    std::span<const Ranking> rankings);

/// Fraction of known cells (diagonal included) out of n^2.
double density(const IncompletePCM& pcm);

/// (label, degree) pairs sorted by degree descending, then label.
std::vector<std::pair<std::string, int>> degree_distribution(
    const ComparisonGraph& g, const std::vector<std::string>& labels);

/// Enumerates intransitive triads of the majority relation computed from
/// raw win counts; ties and unplayed pairs contribute no edge.
TriadReport intransitive_triads(std::span<const HeadToHead> records,
                                const std::vector<std::string>& labels);

/// Restriction of a ranking to a label subset, re-ranked among themselves
/// (relative order and tie structure preserved).
Ranking restrict_ranking(const Ranking& ranking,
                         const std::vector<std::string>& keep);

}  // namespace pcmrank
