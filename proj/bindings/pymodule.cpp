#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <sstream>

#include "pcmrank/io.hpp"

namespace py = pybind11;
using namespace pcmrank;

namespace {

PipelineConfig make_config(const std::string& method, int correction,
                           bool transform, double tol, int max_iter) {
  if (method != "em" && method != "llsm") {
    throw Error(ErrorCode::ParseError, "method must be 'em' or 'llsm'");
  }
  if (correction != 1 && correction != 2) {
    throw Error(ErrorCode::ParseError, "correction must be 1 or 2");
  }
  if (!(tol > 0.0)) {
    throw Error(ErrorCode::ParseError, "tol must be positive");
  }
  if (max_iter < 1) {
    throw Error(ErrorCode::ParseError, "max_iter must be at least 1");
  }
  PipelineConfig config;
  config.method = method == "em" ? Method::Em : Method::Llsm;
  config.correction =
      correction == 1 ? CorrectionMethod::Method1 : CorrectionMethod::Method2;
  config.transform = transform;
  config.tol = tol;
  config.max_iter = max_iter;
  return config;
}

std::vector<std::vector<std::optional<double>>> pcm_rows(
    const IncompletePCM& pcm) {
  int n = pcm.size();
  std::vector<std::vector<std::optional<double>>> rows(
      n, std::vector<std::optional<double>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (pcm.known(i, j)) rows[i][j] = pcm.at(i, j);
  return rows;
}

std::vector<std::array<std::string, 3>> triad_labels(
    const TriadReport& report, const std::vector<std::string>& labels) {
  std::vector<std::array<std::string, 3>> out;
  out.reserve(report.triads.size());
  for (const auto& [a, b, c] : report.triads) {
    out.push_back({labels[a], labels[b], labels[c]});
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_pcmrank, m) {
  m.doc() = "Rankings from incomplete pairwise comparison matrices";

  py::register_exception<Error>(m, "PcmError");

  py::class_<HeadToHead>(m, "HeadToHead")
      .def(py::init<std::string, std::string, long, long>(), py::arg("player_a"),
           py::arg("player_b"), py::arg("wins_a"), py::arg("wins_b"))
      .def_readwrite("player_a", &HeadToHead::player_a)
      .def_readwrite("player_b", &HeadToHead::player_b)
      .def_readwrite("wins_a", &HeadToHead::wins_a)
      .def_readwrite("wins_b", &HeadToHead::wins_b)
      .def("total", &HeadToHead::total)
      .def("__repr__", [](const HeadToHead& r) {
        std::ostringstream out;
        out << "HeadToHead(" << r.player_a << " " << r.wins_a << "-" << r.wins_b
            << " " << r.player_b << ")";
        return out.str();
      });

  py::class_<IncompletePCM>(m, "IncompletePCM")
      .def(py::init<std::vector<std::string>>(), py::arg("labels"))
      .def_property_readonly("size", &IncompletePCM::size)
      .def_property_readonly("labels", &IncompletePCM::labels)
      .def("known", &IncompletePCM::known)
      .def("at", &IncompletePCM::at)
      .def("set_pair", &IncompletePCM::set_pair)
      .def("complete", &IncompletePCM::complete)
      .def("known_pairs", &IncompletePCM::known_pairs)
      .def("missing_pairs", &IncompletePCM::missing_pairs)
      .def("rows", &pcm_rows, "entries as nested lists with None for missing")
      .def("validate", &IncompletePCM::validate);

  py::class_<ComparisonGraph>(m, "ComparisonGraph")
      .def_readonly("vertex_count", &ComparisonGraph::vertex_count)
      .def_readonly("edges", &ComparisonGraph::edges)
      .def("degrees", &ComparisonGraph::degrees);

  py::class_<ZeroLossPair>(m, "ZeroLossPair")
      .def_readonly("winner", &ZeroLossPair::winner)
      .def_readonly("loser", &ZeroLossPair::loser)
      .def_readonly("wins", &ZeroLossPair::wins);

  py::class_<WeightVector>(m, "WeightVector")
      .def_readonly("weights", &WeightVector::weights);

  py::class_<EigenResult>(m, "EigenResult")
      .def_readonly("lambda_max", &EigenResult::lambda_max)
      .def_readonly("vector", &EigenResult::vector)
      .def_readonly("iterations", &EigenResult::iterations);

  py::class_<CompletionResult>(m, "CompletionResult")
      .def_readonly("completed", &CompletionResult::completed)
      .def_readonly("variables", &CompletionResult::variables)
      .def_readonly("lambda_max", &CompletionResult::lambda_max)
      .def_readonly("iterations", &CompletionResult::iterations);

  py::class_<Ranking>(m, "Ranking")
      .def_readonly("labels", &Ranking::labels)
      .def_readonly("ranks", &Ranking::ranks)
      .def("order", &Ranking::order)
      .def("rank_of", &Ranking::rank_of);

  py::class_<PipelineConfig>(m, "PipelineConfig")
      .def(py::init(&make_config), py::arg("method") = "llsm",
           py::arg("correction") = 2, py::arg("transform") = false,
           py::arg("tol") = 1e-10, py::arg("max_iter") = 10000)
      .def_property_readonly(
          "method",
          [](const PipelineConfig& c) {
            return c.method == Method::Em ? "em" : "llsm";
          })
      .def_property_readonly(
          "correction",
          [](const PipelineConfig& c) {
            return c.correction == CorrectionMethod::Method1 ? 1 : 2;
          })
      .def_readonly("transform", &PipelineConfig::transform)
      .def_readonly("tol", &PipelineConfig::tol)
      .def_readonly("max_iter", &PipelineConfig::max_iter)
      .def("__repr__",
           [](const PipelineConfig& c) { return "PipelineConfig(" + config_name(c) + ")"; });

  py::class_<PipelineRun>(m, "PipelineRun")
      .def_readonly("matrix", &PipelineRun::matrix)
      .def_readonly("weights", &PipelineRun::weights)
      .def_readonly("ranking", &PipelineRun::ranking)
      .def_readonly("lambda_max", &PipelineRun::lambda_max)
      .def_readonly("consistency_index", &PipelineRun::consistency_index)
      .def_readonly("iterations", &PipelineRun::iterations);

  m.def("load_dataset", &load_dataset, py::arg("path"));
  m.def("save_dataset",
        [](const std::vector<HeadToHead>& records,
           const std::filesystem::path& path) { save_dataset(records, path); },
        py::arg("records"), py::arg("path"));
  m.def("labels_from_records",
        [](const std::vector<HeadToHead>& records) {
          return labels_from_records(records);
        },
        py::arg("records"));

  m.def("build_raw_pcm",
        [](const std::vector<HeadToHead>& records,
           const std::vector<std::string>& labels) {
          RawPcm raw = build_raw_pcm(records, labels);
          return py::make_tuple(raw.pcm, raw.zero_loss);
        },
        py::arg("records"), py::arg("labels"),
        "strict ratio matrix plus the zero-loss pairs left missing");
  m.def("apply_correction",
        [](const IncompletePCM& pcm, const std::vector<ZeroLossPair>& pairs,
           int method, long bucket) {
          CorrectionPolicy policy{method == 1 ? CorrectionMethod::Method1
                                              : CorrectionMethod::Method2,
                                  bucket};
          return apply_correction(pcm, pairs, policy);
        },
        py::arg("pcm"), py::arg("zero_loss"), py::arg("method") = 2,
        py::arg("bucket") = 5);
  m.def("apply_transformation",
        [](const IncompletePCM& pcm, const std::vector<HeadToHead>& records) {
          return apply_transformation(pcm, match_counts(records, pcm.labels()));
        },
        py::arg("pcm"), py::arg("records"));
  m.def("graph_of", &graph_of, py::arg("pcm"));
  m.def("is_connected", &is_connected, py::arg("graph"));
  m.def("connected_components", &connected_components, py::arg("graph"));

  m.def("llsm_weights",
        [](const IncompletePCM& pcm) { return llsm_weights(pcm).weights; },
        py::arg("pcm"));
  m.def("perron_vector",
        [](const IncompletePCM& pcm, double tol, int max_iter) {
          return perron_vector(pcm, PowerOptions{tol, max_iter});
        },
        py::arg("pcm"), py::arg("tol") = 1e-12, py::arg("max_iter") = 100000);
  m.def("em_complete",
        [](const IncompletePCM& pcm, double tol, int max_cycles) {
          CompletionOptions options;
          options.tol = tol;
          options.max_cycles = max_cycles;
          return em_complete(pcm, options);
        },
        py::arg("pcm"), py::arg("tol") = 1e-10, py::arg("max_cycles") = 10000);
  m.def("em_weights",
        [](const IncompletePCM& pcm, double tol, int max_cycles) {
          CompletionOptions options;
          options.tol = tol;
          options.max_cycles = max_cycles;
          return em_weights(pcm, options).weights;
        },
        py::arg("pcm"), py::arg("tol") = 1e-10, py::arg("max_cycles") = 10000);
  m.def("consistency_index", &consistency_index, py::arg("lambda_max"),
        py::arg("n"));

  m.def("ranking_from_weights",
        [](const std::vector<double>& weights,
           const std::vector<std::string>& labels) {
          return ranking_from_weights(WeightVector{weights}, labels);
        },
        py::arg("weights"), py::arg("labels"));
  m.def("win_loss_ranking",
        [](const std::vector<HeadToHead>& records,
           const std::vector<std::string>& labels) {
          return win_loss_ranking(records, labels);
        },
        py::arg("records"), py::arg("labels"));
  m.def("spearman", &spearman, py::arg("r1"), py::arg("r2"));
  m.def("correlation_matrix",
        [](const std::vector<Ranking>& rankings) {
          return correlation_matrix(rankings);
        },
        py::arg("rankings"));
  m.def("density", &density, py::arg("pcm"));
  m.def("degree_distribution", &degree_distribution, py::arg("graph"),
        py::arg("labels"));
  m.def("intransitive_triads",
        [](const std::vector<HeadToHead>& records,
           const std::vector<std::string>& labels) {
          TriadReport report = intransitive_triads(records, labels);
          return py::make_tuple(report.count(), triad_labels(report, labels));
        },
        py::arg("records"), py::arg("labels"),
        "count plus the list of (a, b, c) label cycles");

  m.def("config_name", &config_name, py::arg("config"));
  m.def("run_pipeline",
        [](const std::vector<HeadToHead>& records,
           const std::vector<std::string>& labels, const PipelineConfig& config) {
          return run_pipeline(records, labels, config);
        },
        py::arg("records"), py::arg("labels"), py::arg("config"));
  m.def("perturb_add_match",
        [](const std::vector<HeadToHead>& records,
           const std::vector<std::string>& labels, const std::string& a,
           const std::string& b, const std::string& winner,
           const PipelineConfig& config) {
          AddMatchResult result =
              perturb_add_match(records, labels, a, b, winner, config);
          py::list changes;
          for (const RankShift& shift : result.changes) {
            changes.append(py::make_tuple(shift.label, shift.before, shift.after));
          }
          return py::make_tuple(result.before, result.after, changes);
        },
        py::arg("records"), py::arg("labels"), py::arg("a"), py::arg("b"),
        py::arg("winner"), py::arg("config"));
  m.def("perturb_remove_player",
        [](const std::vector<HeadToHead>& records,
           const std::vector<std::string>& labels, const std::string& player,
           const PipelineConfig& config) {
          RemovePlayerResult result =
              perturb_remove_player(records, labels, player, config);
          return py::make_tuple(result.before, result.after,
                                result.spearman_common);
        },
        py::arg("records"), py::arg("labels"), py::arg("player"),
        py::arg("config"));

  m.def("export_graph_dot",
        [](const std::vector<HeadToHead>& records) {
          auto labels = labels_from_records(records);
          RawPcm raw = build_raw_pcm(records, labels);
          IncompletePCM corrected =
              apply_correction(raw.pcm, raw.zero_loss, CorrectionPolicy{});
          return export_graph_dot(graph_of(corrected), records, labels);
        },
        py::arg("records"), "DOT text of the comparison graph");
}
