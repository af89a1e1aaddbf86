#include "pcmrank/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace pcmrank {

namespace {

constexpr const char* kHeader = "player_a,player_b,wins_a,wins_b";

std::string fmt(const char* format, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), format, value);
  return buffer;
}

std::string fmt_weight(double w) { return fmt("%.6g", w); }
std::string fmt_spearman(double v) { return fmt("%.4f", v); }
std::string fmt_rank(double r) { return fmt("%g", r); }

long parse_count(std::string_view field, int line, const char* what) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(),
                                   value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " +
                                           what + " is not an integer: '" +
                                           std::string(field) + "'");
  }
  if (value < 0) {
    throw Error(ErrorCode::NegativeCount,
                "line " + std::to_string(line) + ": negative " + what);
  }
  return value;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  while (true) {
    size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

int label_width(const std::vector<std::string>& labels) {
  size_t width = 6;
  for (const auto& l : labels) width = std::max(width, l.size());
  return static_cast<int>(width);
}

std::string pad(const std::string& s, int width) {
  std::string out = s;
  while (static_cast<int>(out.size()) < width) out += ' ';
  return out;
}

nlohmann::json config_json(const PipelineConfig& config) {
  return {
      {"method", config.method == Method::Em ? "em" : "llsm"},
      {"correction", config.correction == CorrectionMethod::Method1 ? 1 : 2},
      {"transform", config.transform},
      {"tol", config.tol},
      {"max_iter", config.max_iter},
  };
}

std::string config_line(const PipelineConfig& config) {
  std::string out = "variant=" + config_name(config);
  out += config.method == Method::Em ? "  method=em" : "  method=llsm";
  out += config.correction == CorrectionMethod::Method1 ? "  correction=1"
                                                        : "  correction=2";
  out += config.transform ? "  transform=on" : "  transform=off";
  return out;
}

// Rows of a ranking listed best-first with weights when available.
nlohmann::json players_json(const Ranking& ranking, const WeightVector* weights) {
  std::map<std::string, size_t> position;
  for (size_t i = 0; i < ranking.labels.size(); ++i) {
    position[ranking.labels[i]] = i;
  }
  nlohmann::json rows = nlohmann::json::array();
  for (const std::string& label : ranking.order()) {
    size_t i = position[label];
    nlohmann::json row = {{"label", label}, {"rank", ranking.ranks[i]}};
    if (weights != nullptr) row["weight"] = weights->weights[i];
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::vector<HeadToHead> load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::ParseError, path.string() + " is empty");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) {
    throw Error(ErrorCode::ParseError,
                "line 1: expected header '" + std::string(kHeader) + "'");
  }

  std::vector<HeadToHead> records;
  std::map<std::pair<std::string, std::string>, int> seen;  // pair -> line
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_fields(line);
    if (fields.size() != 4) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) + ": expected 4 fields, got " +
                      std::to_string(fields.size()));
    }
    HeadToHead record;
    record.player_a = std::string(fields[0]);
    record.player_b = std::string(fields[1]);
    if (record.player_a.empty() || record.player_b.empty()) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) + ": empty player name");
    }
    if (record.player_a == record.player_b) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) + ": player '" +
                      record.player_a + "' paired with themselves");
    }
    record.wins_a = parse_count(fields[2], line_no, "wins_a");
    record.wins_b = parse_count(fields[3], line_no, "wins_b");
    if (record.total() < 1) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) + ": no matches recorded");
    }
    auto key = std::minmax(record.player_a, record.player_b);
    auto [it, inserted] = seen.emplace(key, line_no);
    if (!inserted) {
      throw Error(ErrorCode::DuplicatePair,
                  "line " + std::to_string(line_no) + ": pair already given on line " +
                      std::to_string(it->second));
    }
    records.push_back(std::move(record));
  }
  return records;
}

void save_dataset(std::span<const HeadToHead> records,
                  const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::ParseError, "cannot write " + path.string());
  }
  out << kHeader << '\n';
  for (const HeadToHead& r : records) {
    out << r.player_a << ',' << r.player_b << ',' << r.wins_a << ','
        << r.wins_b << '\n';
  }
  if (!out) {
    throw Error(ErrorCode::ParseError, "failed writing " + path.string());
  }
}

RankingReport run_ranking(const PipelineConfig& config,
                          std::span<const HeadToHead> records) {
  RankingReport report;
  report.config = config;
  std::vector<std::string> labels = labels_from_records(records);
  report.player_count = static_cast<int>(labels.size());
  report.pair_count = static_cast<int>(records.size());
  report.run = run_pipeline(records, labels, config);
  return report;
}

std::string to_text(const RankingReport& report) {
  std::ostringstream out;
  out << "# rank  " << config_line(report.config) << "\n";
  out << "# players=" << report.player_count << "  pairs=" << report.pair_count
      << "\n";
  if (report.run.lambda_max) {
    out << "# lambda_max=" << fmt_weight(*report.run.lambda_max);
    if (report.run.consistency_index) {
      out << "  consistency_index=" << fmt_weight(*report.run.consistency_index);
    }
    out << "\n";
  }
  const Ranking& ranking = report.run.ranking;
  int width = label_width(ranking.labels);
  out << pad("rank", 6) << pad("player", width + 2) << "weight\n";
  std::map<std::string, size_t> position;
  for (size_t i = 0; i < ranking.labels.size(); ++i) {
    position[ranking.labels[i]] = i;
  }
  for (const std::string& label : ranking.order()) {
    size_t i = position[label];
    out << pad(fmt_rank(ranking.ranks[i]), 6) << pad(label, width + 2)
        << fmt_weight(report.run.weights.weights[i]) << "\n";
  }
  return out.str();
}

std::string to_json(const RankingReport& report) {
  nlohmann::json doc = {
      {"command", "rank"},
      {"variant", config_name(report.config)},
      {"config", config_json(report.config)},
      {"player_count", report.player_count},
      {"pair_count", report.pair_count},
      {"players", players_json(report.run.ranking, &report.run.weights)},
  };
  if (report.run.lambda_max) doc["lambda_max"] = *report.run.lambda_max;
  if (report.run.consistency_index) {
    doc["consistency_index"] = *report.run.consistency_index;
  }
  if (report.run.iterations) doc["completion_cycles"] = *report.run.iterations;
  return doc.dump(2) + "\n";
}

AnalysisReport run_analysis(std::span<const HeadToHead> records,
                            const AnalysisSections& sections) {
  AnalysisReport report;
  report.sections = sections;
  report.labels = labels_from_records(records);
  report.pair_count = static_cast<int>(records.size());

  RawPcm raw = build_raw_pcm(records, report.labels);
  IncompletePCM corrected = apply_correction(
      raw.pcm, raw.zero_loss, CorrectionPolicy{CorrectionMethod::Method2, 5});
  int n = static_cast<int>(report.labels.size());
  if (sections.density) {
    report.density_value = density(corrected);
    report.known_cells =
        n + 2 * static_cast<long>(corrected.known_pairs().size());
  }
  if (sections.degrees) {
    report.degrees = degree_distribution(graph_of(corrected), report.labels);
  }
  if (sections.triads) {
    report.triads = intransitive_triads(records, report.labels);
  }
  if (sections.rankings || sections.correlations) {
    for (Method method : {Method::Em, Method::Llsm}) {
      for (bool transform : {false, true}) {
        for (CorrectionMethod correction :
             {CorrectionMethod::Method1, CorrectionMethod::Method2}) {
          PipelineConfig config;
          config.method = method;
          config.correction = correction;
          config.transform = transform;
          report.variant_names.push_back(config_name(config));
          report.rankings.push_back(
              run_pipeline(records, report.labels, config).ranking);
        }
      }
    }
    if (sections.correlations) {
      report.correlations = correlation_matrix(report.rankings);
    }
  }
  return report;
}

std::string to_text(const AnalysisReport& report) {
  std::ostringstream out;
  out << "# analyze  players=" << report.labels.size()
      << "  pairs=" << report.pair_count << "\n";
  int width = label_width(report.labels);
  long cells = static_cast<long>(report.labels.size()) *
               static_cast<long>(report.labels.size());
  if (report.sections.density) {
    out << "density: " << fmt_spearman(report.density_value) << " ("
        << report.known_cells << "/" << cells << ")\n";
  }
  if (report.sections.degrees) {
    out << "degrees:\n";
    for (const auto& [label, degree] : report.degrees) {
      out << "  " << pad(label, width + 2) << degree << "\n";
    }
  }
  if (report.sections.triads) {
    out << "intransitive triads: " << report.triads.count() << "\n";
    for (const auto& [a, b, c] : report.triads.triads) {
      out << "  " << report.labels[a] << " > " << report.labels[b] << " > "
          << report.labels[c] << " > " << report.labels[a] << "\n";
    }
  }
  if (report.sections.rankings && !report.rankings.empty()) {
    out << "rankings:\n  " << pad("player", width + 2);
    for (const auto& name : report.variant_names) out << pad(name, 9);
    out << "\n";
    for (const std::string& label : report.labels) {
      out << "  " << pad(label, width + 2);
      for (const Ranking& ranking : report.rankings) {
        out << pad(fmt_rank(ranking.rank_of(label)), 9);
      }
      out << "\n";
    }
  }
  if (report.sections.correlations && !report.correlations.empty()) {
    out << "spearman:\n  " << pad("", 9);
    for (const auto& name : report.variant_names) out << pad(name, 9);
    out << "\n";
    for (size_t p = 0; p < report.correlations.size(); ++p) {
      out << "  " << pad(report.variant_names[p], 9);
      for (double value : report.correlations[p]) {
        out << pad(fmt_spearman(value), 9);
      }
      out << "\n";
    }
  }
  return out.str();
}

std::string to_json(const AnalysisReport& report) {
  nlohmann::json doc = {{"command", "analyze"},
                        {"players", report.labels},
                        {"pair_count", report.pair_count}};
  long cells = static_cast<long>(report.labels.size()) *
               static_cast<long>(report.labels.size());
  if (report.sections.density) {
    doc["density"] = {{"value", report.density_value},
                      {"known_cells", report.known_cells},
                      {"cells", cells}};
  }
  if (report.sections.degrees) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [label, degree] : report.degrees) {
      rows.push_back({{"label", label}, {"degree", degree}});
    }
    doc["degrees"] = std::move(rows);
  }
  if (report.sections.triads) {
    nlohmann::json cycles = nlohmann::json::array();
    for (const auto& [a, b, c] : report.triads.triads) {
      cycles.push_back({report.labels[a], report.labels[b], report.labels[c]});
    }
    doc["triads"] = {{"count", report.triads.count()},
                     {"cycles", std::move(cycles)}};
  }
  if (report.sections.rankings && !report.rankings.empty()) {
    nlohmann::json rankings = nlohmann::json::array();
    for (size_t v = 0; v < report.rankings.size(); ++v) {
      rankings.push_back({{"variant", report.variant_names[v]},
                          {"players", players_json(report.rankings[v], nullptr)}});
    }
    doc["rankings"] = std::move(rankings);
  }
  if (report.sections.correlations && !report.correlations.empty()) {
    doc["spearman"] = {{"variants", report.variant_names},
                       {"matrix", report.correlations}};
  }
  return doc.dump(2) + "\n";
}

std::string to_text(const AddMatchReport& report) {
  std::ostringstream out;
  out << "# perturb add-match " << report.player_a << " vs " << report.player_b
      << "  winner=" << report.winner << "  " << config_line(report.config)
      << "\n";
  int width = label_width(report.result.before.labels);
  out << pad("player", width + 2) << pad("before", 8) << pad("after", 8)
      << "delta\n";
  int changed = 0;
  for (const RankShift& shift : report.result.changes) {
    double delta = shift.before - shift.after;  // positive = moved up
    if (delta != 0.0) ++changed;
    out << pad(shift.label, width + 2) << pad(fmt_rank(shift.before), 8)
        << pad(fmt_rank(shift.after), 8) << fmt_rank(delta) << "\n";
  }
  out << "# changed=" << changed << "\n";
  return out.str();
}

std::string to_json(const AddMatchReport& report) {
  nlohmann::json changes = nlohmann::json::array();
  for (const RankShift& shift : report.result.changes) {
    changes.push_back({{"label", shift.label},
                       {"before", shift.before},
                       {"after", shift.after},
                       {"delta", shift.before - shift.after}});
  }
  nlohmann::json doc = {{"command", "perturb"},
                        {"mode", "add-match"},
                        {"player_a", report.player_a},
                        {"player_b", report.player_b},
                        {"winner", report.winner},
                        {"config", config_json(report.config)},
                        {"variant", config_name(report.config)},
                        {"changes", std::move(changes)}};
  return doc.dump(2) + "\n";
}

std::string to_text(const RemovePlayerReport& report) {
  std::ostringstream out;
  out << "# perturb remove-player " << report.player << "  "
      << config_line(report.config) << "\n";
  out << "spearman(common): " << fmt_spearman(report.result.spearman_common)
      << "\n";
  int width = label_width(report.result.before.labels);
  out << pad("player", width + 2) << pad("before", 8) << "after\n";
  std::map<std::string, size_t> position;
  for (size_t i = 0; i < report.result.before.labels.size(); ++i) {
    position[report.result.before.labels[i]] = i;
  }
  for (const std::string& label : report.result.before.order()) {
    size_t i = position[label];
    out << pad(label, width + 2) << pad(fmt_rank(report.result.before.ranks[i]), 8);
    if (label == report.player) {
      out << "-\n";
    } else {
      out << fmt_rank(report.result.after.rank_of(label)) << "\n";
    }
  }
  return out.str();
}

std::string to_json(const RemovePlayerReport& report) {
  nlohmann::json doc = {{"command", "perturb"},
                        {"mode", "remove-player"},
                        {"player", report.player},
                        {"config", config_json(report.config)},
                        {"variant", config_name(report.config)},
                        {"spearman_common", report.result.spearman_common},
                        {"before", players_json(report.result.before, nullptr)},
                        {"after", players_json(report.result.after, nullptr)}};
  return doc.dump(2) + "\n";
}

namespace {

std::string dot_quote(const std::string& label) {
  std::string out = "\"";
  for (char c : label) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string export_graph_dot(const ComparisonGraph& g,
                             std::span<const HeadToHead> records,
                             const std::vector<std::string>& labels) {
  if (static_cast<int>(labels.size()) != g.vertex_count) {
    throw Error(ErrorCode::ShapeError, "label list does not match graph size");
  }
  // Majority outcome per unordered pair, keyed by label pair.
  std::map<std::pair<std::string, std::string>, int> outcome;  // 1: first wins
  for (const HeadToHead& r : records) {
    auto key = std::minmax(r.player_a, r.player_b);
    long first_wins = key.first == r.player_a ? r.wins_a : r.wins_b;
    long second_wins = key.first == r.player_a ? r.wins_b : r.wins_a;
    outcome[key] = first_wins > second_wins ? 1 : (second_wins > first_wins ? -1 : 0);
  }
  std::vector<std::string> nodes = labels;
  std::sort(nodes.begin(), nodes.end());
  std::vector<std::pair<std::string, std::string>> edges;
  edges.reserve(g.edges.size());
  for (auto [i, j] : g.edges) {
    auto key = std::minmax(labels[i], labels[j]);
    edges.emplace_back(key.first, key.second);
  }
  std::sort(edges.begin(), edges.end());

  std::ostringstream out;
  out << "digraph comparisons {\n";
  for (const std::string& node : nodes) {
    out << "  " << dot_quote(node) << ";\n";
  }
  for (const auto& [a, b] : edges) {
    auto it = outcome.find({a, b});
    int majority = it == outcome.end() ? 0 : it->second;
    if (majority > 0) {
      out << "  " << dot_quote(a) << " -> " << dot_quote(b) << ";\n";
    } else if (majority < 0) {
      out << "  " << dot_quote(b) << " -> " << dot_quote(a) << ";\n";
    } else {
      out << "  " << dot_quote(a) << " -> " << dot_quote(b)
          << " [dir=none, style=dashed];\n";
    }
  }
  out << "}\n";
  return out.str();
}

void write_graph_dot(const ComparisonGraph& g,
                     std::span<const HeadToHead> records,
                     const std::vector<std::string>& labels,
                     const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::ParseError, "cannot write " + path.string());
  }
  out << export_graph_dot(g, records, labels);
  if (!out) {
    throw Error(ErrorCode::ParseError, "failed writing " + path.string());
  }
}

}  // namespace pcmrank
