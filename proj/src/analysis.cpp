#include "pcmrank/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <unordered_map>

namespace pcmrank {

namespace {

// Average-rank assignment over items sorted by a strict-weak order; `equal`
// decides which adjacent items tie. `sorted` holds indices in rank order.
std::vector<double> average_ranks(
    const std::vector<int>& sorted,
    const std::function<bool(int, int)>& equal) {
  int n = static_cast<int>(sorted.size());
  std::vector<double> ranks(n, 0.0);
  int start = 0;
  while (start < n) {
    int end = start + 1;
    while (end < n && equal(sorted[start], sorted[end])) ++end;
    double shared = 0.5 * (start + 1 + end);  // mean of positions start+1..end
    for (int k = start; k < end; ++k) ranks[sorted[k]] = shared;
    start = end;
  }
  return ranks;
}

}  // namespace

std::vector<std::string> Ranking::order() const {
  std::vector<int> idx(labels.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (ranks[a] != ranks[b]) return ranks[a] < ranks[b];
    return labels[a] < labels[b];
  });
  std::vector<std::string> out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(labels[i]);
  return out;
}

double Ranking::rank_of(const std::string& label) const {
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return ranks[i];
  }
  throw Error(ErrorCode::ShapeError, "label not in ranking: " + label);
}

Ranking ranking_from_weights(const WeightVector& weights,
                             const std::vector<std::string>& labels) {
  if (weights.weights.size() != labels.size()) {
    throw Error(ErrorCode::ShapeError,
                "weight vector and label list sizes differ");
  }
  const auto& w = weights.weights;
  std::vector<int> idx(labels.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (w[a] != w[b]) return w[a] > w[b];
    return labels[a] < labels[b];
  });
  auto ranks = average_ranks(idx, [&](int a, int b) { return w[a] == w[b]; });
  return Ranking{labels, std::move(ranks)};
}

Ranking win_loss_ranking(std::span<const HeadToHead> records,
                         const std::vector<std::string>& labels) {
  std::unordered_map<std::string, int> index;
  for (size_t i = 0; i < labels.size(); ++i) {
    index.emplace(labels[i], static_cast<int>(i));
  }
  std::vector<long> wins(labels.size(), 0), losses(labels.size(), 0);
  for (const HeadToHead& r : records) {
    auto a = index.find(r.player_a);
    auto b = index.find(r.player_b);
    if (a == index.end() || b == index.end()) {
      throw Error(ErrorCode::UnknownPlayer,
                  "record references a player outside the label list");
    }
    wins[a->second] += r.wins_a;
    losses[a->second] += r.wins_b;
    wins[b->second] += r.wins_b;
    losses[b->second] += r.wins_a;
  }
  std::vector<double> ratio(labels.size());
  for (size_t i = 0; i < labels.size(); ++i) {
    if (wins[i] + losses[i] == 0) {
      throw Error(ErrorCode::NoData, "no matches for player " + labels[i]);
    }
    ratio[i] = losses[i] == 0 ? std::numeric_limits<double>::infinity()
                              : static_cast<double>(wins[i]) / losses[i];
  }
  std::vector<int> idx(labels.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    bool ia = std::isinf(ratio[a]), ib = std::isinf(ratio[b]);
    if (ia != ib) return ia;            // undefeated players first
    if (ia && ib) {
      if (wins[a] != wins[b]) return wins[a] > wins[b];
      return labels[a] < labels[b];
    }
    if (ratio[a] != ratio[b]) return ratio[a] > ratio[b];
    return labels[a] < labels[b];
  });
  auto ranks = average_ranks(idx, [&](int a, int b) {
    if (std::isinf(ratio[a]) && std::isinf(ratio[b])) return wins[a] == wins[b];
    return ratio[a] == ratio[b];
  });
  return Ranking{labels, std::move(ranks)};
}

double spearman(const Ranking& r1, const Ranking& r2) {
  if (r1.labels.size() != r2.labels.size()) {
    throw Error(ErrorCode::ShapeError, "rankings cover different label sets");
  }
  size_t n = r1.labels.size();
  if (n < 2) {
    throw Error(ErrorCode::Undefined,
                "rank correlation needs at least two items");
  }
  std::unordered_map<std::string, double> second;
  for (size_t i = 0; i < n; ++i) second.emplace(r2.labels[i], r2.ranks[i]);
  double mean1 = 0.0, mean2 = 0.0;
  std::vector<double> x(n), y(n);
  for (size_t i = 0; i < n; ++i) {
    auto it = second.find(r1.labels[i]);
    if (it == second.end()) {
      throw Error(ErrorCode::ShapeError,
                  "rankings cover different label sets: " + r1.labels[i]);
    }
    x[i] = r1.ranks[i];
    y[i] = it->second;
    mean1 += x[i];
    mean2 += y[i];
  }
  mean1 /= n;
  mean2 /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mean1) * (y[i] - mean2);
    sxx += (x[i] - mean1) * (x[i] - mean1);
    syy += (y[i] - mean2) * (y[i] - mean2);
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::Undefined,
                "rank correlation undefined for an all-tied ranking");
  }
  return sxy / std::sqrt(sxx * syy);
}

std::vector<std::vector<double>> correlation_matrix(
    std::span<const Ranking> rankings) {
  size_t m = rankings.size();
  if (m < 2) {
    throw Error(ErrorCode::Undefined, "need at least two rankings to compare");
  }
  std::vector<std::vector<double>> matrix(m, std::vector<double>(m, 1.0));
  for (size_t p = 0; p < m; ++p) {
    for (size_t q = p + 1; q < m; ++q) {
      double value = spearman(rankings[p], rankings[q]);
      matrix[p][q] = value;
      matrix[q][p] = value;
    }
  }
  return matrix;
}

double density(const IncompletePCM& pcm) {
  int n = pcm.size();
  if (n == 0) {
    throw Error(ErrorCode::Undefined, "density of an empty matrix");
  }
  long known = n + 2 * static_cast<long>(pcm.known_pairs().size());
  return static_cast<double>(known) / (static_cast<double>(n) * n);
}

std::vector<std::pair<std::string, int>> degree_distribution(
    const ComparisonGraph& g, const std::vector<std::string>& labels) {
  if (static_cast<int>(labels.size()) != g.vertex_count) {
    throw Error(ErrorCode::ShapeError, "label list does not match graph size");
  }
  auto deg = g.degrees();
  std::vector<std::pair<std::string, int>> out;
  out.reserve(labels.size());
  for (size_t i = 0; i < labels.size(); ++i) out.emplace_back(labels[i], deg[i]);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

TriadReport intransitive_triads(std::span<const HeadToHead> records,
                                const std::vector<std::string>& labels) {
  std::unordered_map<std::string, int> index;
  for (size_t i = 0; i < labels.size(); ++i) {
    index.emplace(labels[i], static_cast<int>(i));
  }
  int n = static_cast<int>(labels.size());
  std::vector<char> beats(static_cast<size_t>(n) * n, 0);
  for (const HeadToHead& r : records) {
    auto a = index.find(r.player_a);
    auto b = index.find(r.player_b);
    if (a == index.end() || b == index.end()) {
      throw Error(ErrorCode::UnknownPlayer,
                  "record references a player outside the label list");
    }
    if (r.wins_a > r.wins_b) beats[a->second * n + b->second] = 1;
    if (r.wins_b > r.wins_a) beats[b->second * n + a->second] = 1;
  }
  TriadReport report;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        if (beats[i * n + j] && beats[j * n + k] && beats[k * n + i]) {
          report.triads.push_back({i, j, k});
        } else if (beats[i * n + k] && beats[k * n + j] && beats[j * n + i]) {
          report.triads.push_back({i, k, j});
        }
      }
    }
  }
  return report;
}

Ranking restrict_ranking(const Ranking& ranking,
                         const std::vector<std::string>& keep) {
  std::vector<double> old_ranks(keep.size());
  for (size_t i = 0; i < keep.size(); ++i) {
    old_ranks[i] = ranking.rank_of(keep[i]);
  }
  std::vector<int> idx(keep.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (old_ranks[a] != old_ranks[b]) return old_ranks[a] < old_ranks[b];
    return keep[a] < keep[b];
  });
  auto ranks = average_ranks(
      idx, [&](int a, int b) { return old_ranks[a] == old_ranks[b]; });
  return Ranking{keep, std::move(ranks)};
}

}  // namespace pcmrank
