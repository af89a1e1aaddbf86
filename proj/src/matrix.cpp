#include "pcmrank/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <unordered_map>

namespace pcmrank {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::DuplicatePair: return "DUPLICATE_PAIR";
    case ErrorCode::UnknownPlayer: return "UNKNOWN_PLAYER";
    case ErrorCode::NegativeCount: return "NEGATIVE_COUNT";
    case ErrorCode::NotZeroLoss: return "NOT_ZERO_LOSS";
    case ErrorCode::CountMismatch: return "COUNT_MISMATCH";
    case ErrorCode::GraphDisconnected: return "GRAPH_DISCONNECTED";
    case ErrorCode::EmptyProblem: return "EMPTY_PROBLEM";
    case ErrorCode::NoConvergence: return "NO_CONVERGENCE";
    case ErrorCode::NoData: return "NO_DATA";
    case ErrorCode::ShapeError: return "SHAPE_ERROR";
    case ErrorCode::Undefined: return "UNDEFINED";
  }
  return "UNKNOWN";
}

namespace {

std::string join_components(
    const std::vector<std::vector<std::string>>& components) {
  std::string out;
  for (size_t c = 0; c < components.size(); ++c) {
    out += c == 0 ? "{" : " {";
    for (size_t i = 0; i < components[c].size(); ++i) {
      if (i > 0) out += ", ";
      out += components[c][i];
    }
    out += "}";
  }
  return out;
}

}  // namespace

DisconnectedError::DisconnectedError(
    std::vector<std::vector<std::string>> components)
    : Error(ErrorCode::GraphDisconnected,
            "comparison graph is disconnected: " + join_components(components)),
      components_(std::move(components)) {}

IncompletePCM::IncompletePCM(std::vector<std::string> labels)
    : n_(static_cast<int>(labels.size())),
      labels_(std::move(labels)),
      values_(static_cast<size_t>(n_) * n_, 0.0),
      known_(static_cast<size_t>(n_) * n_, 0) {
  for (int i = 0; i < n_; ++i) {
    values_[idx(i, i)] = 1.0;
    known_[idx(i, i)] = 1;
  }
}

void IncompletePCM::check_index(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) {
    throw Error(ErrorCode::ShapeError,
                "index (" + std::to_string(i) + ", " + std::to_string(j) +
                    ") out of range for a " + std::to_string(n_) + "-player matrix");
  }
}

double IncompletePCM::at(int i, int j) const {
  if (!known(i, j)) {
    throw Error(ErrorCode::Undefined, "entry (" + std::to_string(i) + ", " +
                                          std::to_string(j) + ") is missing");
  }
  return values_[idx(i, j)];
}

void IncompletePCM::set_pair(int i, int j, double value) {
  check_index(i, j);
  if (i == j) {
    throw Error(ErrorCode::ShapeError, "cannot assign a diagonal entry");
  }
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::ParseError, "comparison value must be positive");
  }
  values_[idx(i, j)] = value;
  values_[idx(j, i)] = 1.0 / value;
  known_[idx(i, j)] = 1;
  known_[idx(j, i)] = 1;
}

void IncompletePCM::clear_pair(int i, int j) {
  check_index(i, j);
  if (i == j) {
    throw Error(ErrorCode::ShapeError, "cannot clear a diagonal entry");
  }
  known_[idx(i, j)] = 0;
  known_[idx(j, i)] = 0;
  values_[idx(i, j)] = 0.0;
  values_[idx(j, i)] = 0.0;
}

int IncompletePCM::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  return it == labels_.end() ? -1 : static_cast<int>(it - labels_.begin());
}

std::vector<std::pair<int, int>> IncompletePCM::known_pairs() const {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (known(i, j)) pairs.emplace_back(i, j);
  return pairs;
}

std::vector<std::pair<int, int>> IncompletePCM::missing_pairs() const {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (!known(i, j)) pairs.emplace_back(i, j);
  return pairs;
}

bool IncompletePCM::complete() const {
  return std::all_of(known_.begin(), known_.end(),
                     [](char k) { return k != 0; });
}

void IncompletePCM::validate() const {
  for (int i = 0; i < n_; ++i) {
    if (!known(i, i) || values_[idx(i, i)] != 1.0) {
      throw Error(ErrorCode::ShapeError, "diagonal entry is not 1");
    }
    for (int j = i + 1; j < n_; ++j) {
      if (known(i, j) != known(j, i)) {
        throw Error(ErrorCode::ShapeError, "asymmetric missingness");
      }
      if (!known(i, j)) continue;
      double a = values_[idx(i, j)], b = values_[idx(j, i)];
      if (!(a > 0.0) || !(b > 0.0)) {
        throw Error(ErrorCode::ShapeError, "non-positive entry");
      }
      if (std::abs(a * b - 1.0) > 1e-12) {
        throw Error(ErrorCode::ShapeError, "reciprocity violated");
      }
    }
  }
}

void MatchCounts::set(int i, int j, long z) {
  counts_[i * n_ + j] = z;
  counts_[j * n_ + i] = z;
}

long MatchCounts::max() const {
  long m = 0;
  for (long z : counts_) m = std::max(m, z);
  return m;
}

std::vector<int> ComparisonGraph::degrees() const {
  std::vector<int> deg(vertex_count, 0);
  for (auto [i, j] : edges) {
    ++deg[i];
    ++deg[j];
  }
  return deg;
}

bool ComparisonGraph::has_edge(int i, int j) const {
  auto e = std::minmax(i, j);
  return std::binary_search(edges.begin(), edges.end(),
                            std::make_pair(e.first, e.second));
}

namespace {

// Validates labels + records and maps each record to an index pair.
struct IndexedRecords {
  std::unordered_map<std::string, int> index;
  std::vector<std::pair<int, int>> pairs;  // aligned with records
};

IndexedRecords index_records(std::span<const HeadToHead> records,
                             const std::vector<std::string>& labels) {
  IndexedRecords out;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (!out.index.emplace(labels[i], static_cast<int>(i)).second) {
      throw Error(ErrorCode::ParseError, "duplicate label: " + labels[i]);
    }
  }
  std::set<std::pair<int, int>> seen;
  out.pairs.reserve(records.size());
  for (const HeadToHead& r : records) {
    auto a = out.index.find(r.player_a);
    auto b = out.index.find(r.player_b);
    if (a == out.index.end()) {
      throw Error(ErrorCode::UnknownPlayer, "unknown player: " + r.player_a);
    }
    if (b == out.index.end()) {
      throw Error(ErrorCode::UnknownPlayer, "unknown player: " + r.player_b);
    }
    if (r.player_a == r.player_b) {
      throw Error(ErrorCode::ParseError,
                  "record pairs a player with themselves: " + r.player_a);
    }
    if (r.wins_a < 0 || r.wins_b < 0) {
      throw Error(ErrorCode::NegativeCount,
                  "negative win count for " + r.player_a + "-" + r.player_b);
    }
    if (r.total() < 1) {
      throw Error(ErrorCode::ParseError,
                  "no matches recorded for " + r.player_a + "-" + r.player_b);
    }
    auto key = std::minmax(a->second, b->second);
    if (!seen.insert(key).second) {
      throw Error(ErrorCode::DuplicatePair,
                  "duplicate pair: " + r.player_a + "-" + r.player_b);
    }
    out.pairs.emplace_back(a->second, b->second);
  }
  return out;
}

}  // namespace

RawPcm build_raw_pcm(std::span<const HeadToHead> records,
                     const std::vector<std::string>& labels) {
  IndexedRecords indexed = index_records(records, labels);
  RawPcm out{IncompletePCM(labels), {}};
  for (size_t k = 0; k < records.size(); ++k) {
    const HeadToHead& r = records[k];
    auto [ia, ib] = indexed.pairs[k];
    if (r.wins_a > 0 && r.wins_b > 0) {
      out.pcm.set_pair(ia, ib,
                       static_cast<double>(r.wins_a) / static_cast<double>(r.wins_b));
    } else if (r.wins_a > 0) {
      out.zero_loss.push_back({ia, ib, r.wins_a});
    } else {
      out.zero_loss.push_back({ib, ia, r.wins_b});
    }
  }
  return out;
}

MatchCounts match_counts(std::span<const HeadToHead> records,
                         const std::vector<std::string>& labels) {
  IndexedRecords indexed = index_records(records, labels);
  MatchCounts counts(static_cast<int>(labels.size()));
  for (size_t k = 0; k < records.size(); ++k) {
    auto [ia, ib] = indexed.pairs[k];
    counts.set(ia, ib, records[k].total());
  }
  return counts;
}

IncompletePCM apply_correction(const IncompletePCM& pcm,
                               std::span<const ZeroLossPair> zero_loss,
                               const CorrectionPolicy& policy) {
  if (policy.bucket < 1) {
    throw Error(ErrorCode::ParseError, "correction bucket must be positive");
  }
  IncompletePCM out = pcm;
  for (const ZeroLossPair& p : zero_loss) {
    if (p.winner == p.loser || p.winner < 0 || p.loser < 0 ||
        p.winner >= pcm.size() || p.loser >= pcm.size()) {
      throw Error(ErrorCode::ShapeError, "zero-loss pair indices out of range");
    }
    if (p.wins < 1) {
      throw Error(ErrorCode::NotZeroLoss,
                  "pair has no recorded wins, nothing to correct");
    }
    if (out.known(p.winner, p.loser)) {
      throw Error(ErrorCode::NotZeroLoss,
                  "pair " + pcm.labels()[p.winner] + "-" + pcm.labels()[p.loser] +
                      " already has a ratio; it is not zero-loss");
    }
    double value;
    if (policy.method == CorrectionMethod::Method1) {
      // match count rounded up to the next bucket multiple (5, 10, ...)
      long buckets = (p.wins + policy.bucket - 1) / policy.bucket;
      value = static_cast<double>(buckets * policy.bucket);
    } else {
      value = static_cast<double>(p.wins + 2);
    }
    out.set_pair(p.winner, p.loser, value);
  }
  return out;
}

IncompletePCM apply_transformation(const IncompletePCM& pcm,
                                   const MatchCounts& counts) {
  if (counts.size() != pcm.size()) {
    throw Error(ErrorCode::ShapeError, "match-count grid size mismatch");
  }
  auto pairs = pcm.known_pairs();
  long max_z = 0;
  for (auto [i, j] : pairs) {
    if (counts.at(i, j) <= 0) {
      throw Error(ErrorCode::CountMismatch,
                  "no match count for present pair " + pcm.labels()[i] + "-" +
                      pcm.labels()[j]);
    }
    max_z = std::max(max_z, counts.at(i, j));
  }
  IncompletePCM out = pcm;
  for (auto [i, j] : pairs) {
    double exponent = static_cast<double>(counts.at(i, j)) /
                      static_cast<double>(max_z);
    out.set_pair(i, j, std::pow(pcm.at(i, j), exponent));
  }
  return out;
}

ComparisonGraph graph_of(const IncompletePCM& pcm) {
  return ComparisonGraph{pcm.size(), pcm.known_pairs()};
}

std::vector<std::vector<int>> connected_components(const ComparisonGraph& g) {
  std::vector<std::vector<int>> adjacency(g.vertex_count);
  for (auto [i, j] : g.edges) {
    adjacency[i].push_back(j);
    adjacency[j].push_back(i);
  }
  std::vector<std::vector<int>> components;
  std::vector<char> visited(g.vertex_count, 0);
  for (int start = 0; start < g.vertex_count; ++start) {
    if (visited[start]) continue;
    std::vector<int> component;
    std::queue<int> frontier;
    frontier.push(start);
    visited[start] = 1;
    while (!frontier.empty()) {
      int v = frontier.front();
      frontier.pop();
      component.push_back(v);
      for (int w : adjacency[v]) {
        if (!visited[w]) {
          visited[w] = 1;
          frontier.push(w);
        }
      }
    }
    std::sort(component.begin(), component.end());
    components.push_back(std::move(component));
  }
  return components;
}

bool is_connected(const ComparisonGraph& g) {
  return connected_components(g).size() <= 1;
}

IncompletePCM relabel(const IncompletePCM& pcm, const std::vector<int>& perm) {
  int n = pcm.size();
  if (static_cast<int>(perm.size()) != n) {
    throw Error(ErrorCode::ShapeError, "permutation length mismatch");
  }
  std::vector<char> hit(n, 0);
  for (int p : perm) {
    if (p < 0 || p >= n || hit[p]) {
      throw Error(ErrorCode::ShapeError, "not a permutation");
    }
    hit[p] = 1;
  }
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = pcm.labels()[perm[i]];
  IncompletePCM out(labels);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (pcm.known(perm[i], perm[j])) {
        out.set_pair(i, j, pcm.at(perm[i], perm[j]));
      }
    }
  }
  return out;
}

}  // namespace pcmrank
