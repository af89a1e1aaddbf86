#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pcmrank/io.hpp"

namespace {

using namespace pcmrank;

// Exit codes: 0 success, 2 parse/validation error, 3 disconnected graph,
// 4 solver non-convergence.
constexpr int kExitValidation = 2;
constexpr int kExitDisconnected = 3;
constexpr int kExitNoConvergence = 4;

struct CommonArgs {
  std::string input;
  std::string method = "llsm";
  int correction = 2;
  bool transform = false;
  double tol = 1e-10;
  int max_iter = 10000;
  std::string format = "text";
};

PipelineConfig make_config(const CommonArgs& args) {
  PipelineConfig config;
  config.method = args.method == "em" ? Method::Em : Method::Llsm;
  config.correction = args.correction == 1 ? CorrectionMethod::Method1
                                           : CorrectionMethod::Method2;
  config.transform = args.transform;
  config.tol = args.tol;
  config.max_iter = args.max_iter;
  return config;
}

void add_method_options(CLI::App* cmd, CommonArgs* args, bool required) {
  auto* method = cmd->add_option("--method", args->method, "estimation method")
                     ->check(CLI::IsMember({"em", "llsm"}));
  auto* correction =
      cmd->add_option("--correction", args->correction,
                      "zero-loss correction method")
          ->check(CLI::IsMember({1, 2}));
  if (required) {
    method->required();
    correction->required();
  }
  cmd->add_flag("--transform", args->transform,
                "dampen ratios by relative match count");
  cmd->add_option("--tol", args->tol, "solver tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-iter", args->max_iter, "solver iteration limit")
      ->check(CLI::PositiveNumber);
}

int run(int argc, char** argv) {
  CLI::App app{"Rankings from incomplete pairwise comparison matrices"};
  app.require_subcommand(1);

  CommonArgs args;

  auto* rank = app.add_subcommand("rank", "compute one ranking");
  rank->add_option("--input", args.input, "head-to-head CSV")->required();
  add_method_options(rank, &args, /*required=*/true);
  rank->add_option("--format", args.format, "output format")
      ->check(CLI::IsMember({"text", "json"}));

  auto* analyze =
      app.add_subcommand("analyze", "matrix, graph and ranking statistics");
  analyze->add_option("--input", args.input, "head-to-head CSV")->required();
  bool all_methods = false, triads = false, degrees = false, density = false,
       correlations = false;
  analyze->add_flag("--all-methods", all_methods,
                    "rankings for all eight method variants");
  analyze->add_flag("--triads", triads, "intransitive triads");
  analyze->add_flag("--degrees", degrees, "vertex degrees");
  analyze->add_flag("--density", density, "matrix density");
  analyze->add_flag("--correlations", correlations,
                    "Spearman correlations between variants");
  analyze->add_option("--format", args.format, "output format")
      ->check(CLI::IsMember({"text", "json"}));

  auto* graph = app.add_subcommand("graph", "export the comparison graph");
  graph->add_option("--input", args.input, "head-to-head CSV")->required();
  std::string dot_path;
  graph->add_option("--dot", dot_path, "output DOT file")->required();

  auto* perturb =
      app.add_subcommand("perturb", "rerun the pipeline after a data edit");
  perturb->add_option("--input", args.input, "head-to-head CSV")->required();
  std::vector<std::string> add_match;
  std::string winner, remove_player;
  auto* add_opt = perturb
                      ->add_option("--add-match", add_match,
                                   "two players gaining one match")
                      ->expected(2);
  auto* winner_opt = perturb->add_option("--winner", winner,
                                         "winner of the added match");
  auto* remove_opt = perturb->add_option("--remove-player", remove_player,
                                         "player to drop entirely");
  add_opt->excludes(remove_opt);
  winner_opt->needs(add_opt);
  add_method_options(perturb, &args, /*required=*/true);
  perturb->add_option("--format", args.format, "output format")
      ->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  bool json = args.format == "json";
  auto records = load_dataset(args.input);

  if (rank->parsed()) {
    RankingReport report = run_ranking(make_config(args), records);
    std::cout << (json ? to_json(report) : to_text(report));
    return 0;
  }

  if (analyze->parsed()) {
    AnalysisSections sections;
    bool any = all_methods || triads || degrees || density || correlations;
    if (any) {
      sections.rankings = all_methods;
      sections.correlations = all_methods || correlations;
      sections.triads = triads;
      sections.degrees = degrees;
      sections.density = density;
    }
    AnalysisReport report = run_analysis(records, sections);
    std::cout << (json ? to_json(report) : to_text(report));
    return 0;
  }

  if (graph->parsed()) {
    auto labels = labels_from_records(records);
    RawPcm raw = build_raw_pcm(records, labels);
    IncompletePCM corrected = apply_correction(
        raw.pcm, raw.zero_loss, CorrectionPolicy{CorrectionMethod::Method2, 5});
    write_graph_dot(graph_of(corrected), records, labels, dot_path);
    std::cout << "wrote " << dot_path << "\n";
    return 0;
  }

  // perturb
  auto labels = labels_from_records(records);
  if (!add_match.empty()) {
    if (winner.empty()) {
      std::cerr << "error: --add-match requires --winner\n";
      return kExitValidation;
    }
    AddMatchReport report{make_config(args), add_match[0], add_match[1],
                          winner,
                          perturb_add_match(records, labels, add_match[0],
                                            add_match[1], winner,
                                            make_config(args))};
    std::cout << (json ? to_json(report) : to_text(report));
  } else if (!remove_player.empty()) {
    RemovePlayerReport report{make_config(args), remove_player,
                              perturb_remove_player(records, labels,
                                                    remove_player,
                                                    make_config(args))};
    std::cout << (json ? to_json(report) : to_text(report));
  } else {
    std::cerr << "error: perturb needs --add-match or --remove-player\n";
    return kExitValidation;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const pcmrank::DisconnectedError& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    for (const auto& component : e.components()) {
      std::cerr << "  component:";
      for (const auto& label : component) std::cerr << " " << label;
      std::cerr << "\n";
    }
    return kExitDisconnected;
  } catch (const pcmrank::NoConvergenceError& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what()
              << " (best lambda_max " << e.best_lambda_max() << ")\n";
    return kExitNoConvergence;
  } catch (const pcmrank::Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}
