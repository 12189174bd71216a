#include <cstdlib>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "wordpred/io_util.hpp"
#include "wordpred/kn.hpp"
#include "wordpred/runner.hpp"

namespace {

const char* stage_help(const std::string& name) {
  if (name == "preprocess") return "normalize raw corpus files into clean lowercase lines";
  if (name == "vocab") return "build the document-frequency thresholded vocabulary";
  if (name == "counts") return "select the training subset, count bigrams, extract events";
  if (name == "train-ngram") return "fit the smoothed bigram models";
  if (name == "train-ndl") return "train the discriminative-learning weight matrices";
  if (name == "metrics") return "compute the type-level predictor table";
  if (name == "annotate") return "filter the acoustic tokens and attach predictors";
  if (name == "analyze") return "correlations, model comparison, regression export";
  return "run every stage in order";
}

// Reads one "context word" pair per line (tab- or space-separated) and
// prints the model's log2 conditional probability, NA for pairs the model
// cannot score.
int run_query(const std::string& model_path) {
  const wordpred::KNModel model = wordpred::KNModel::load(model_path);
  std::string line;
  while (std::getline(std::cin, line)) {
    if (line.empty()) continue;
    std::string context;
    std::string word;
    const auto fields = wordpred::split_tab(line);
    if (fields.size() >= 2) {
      context = fields[0];
      word = fields[1];
    } else {
      const auto space = line.find(' ');
      if (space != std::string::npos) {
        context = line.substr(0, space);
        word = line.substr(space + 1);
      }
    }
    if (context.empty() || word.empty()) {
      std::cerr << "query: malformed line: " << line << "\n";
      std::cout << wordpred::kNA << "\n";
      continue;
    }
    try {
      std::cout << wordpred::format_double(model.log2_cond_prob(word, context)) << "\n";
    } catch (const std::out_of_range&) {
      std::cerr << "query: unknown pair (" << context << ", " << word << ")\n";
      std::cout << wordpred::kNA << "\n";
    }
  }
  return 0;
}

int run_stage(const std::string& stage, const std::string& config_path,
              const std::optional<std::uint64_t>& seed, const std::optional<std::string>& direction,
              const std::optional<unsigned>& jobs) {
  wordpred::RunnerConfig config = wordpred::RunnerConfig::load(config_path);
  if (seed) config.seed = *seed;
  if (jobs) {
    if (*jobs == 0) throw std::runtime_error("--jobs must be positive");
    config.jobs = *jobs;
  }
  if (direction) {
    if (*direction == "fwd")
      config.directions = wordpred::RunnerConfig::Directions::fwd;
    else if (*direction == "bwd")
      config.directions = wordpred::RunnerConfig::Directions::bwd;
    else
      config.directions = wordpred::RunnerConfig::Directions::both;
  }
  if (const char* env_out = std::getenv("WORDPRED_OUT"); env_out != nullptr && *env_out != '\0')
    config.output_dir = env_out;
  for (const std::string& w : config.warnings) std::cerr << w << "\n";
  wordpred::Runner runner(std::move(config), std::cerr);
  runner.run(stage);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bigram and discriminative-learning word predictability pipeline"};
  app.require_subcommand(1);
  app.footer("The WORDPRED_OUT environment variable overrides the configured output directory.");

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> direction;
  std::optional<unsigned> jobs;
  std::string chosen_stage;
  for (const std::string& name : wordpred::Runner::stage_names()) {
    CLI::App* sub = app.add_subcommand(name, stage_help(name));
    sub->add_option("--config", config_path, "JSON configuration file")->required();
    sub->add_option("--seed", seed, "override the subset-selection seed");
    sub->add_option("--direction", direction, "models to build")
        ->check(CLI::IsMember({"fwd", "bwd", "both"}));
    sub->add_option("--jobs", jobs, "worker threads for training");
    sub->callback([&chosen_stage, name] { chosen_stage = name; });
  }

  std::string model_path;
  CLI::App* query = app.add_subcommand(
      "query", "print log2 conditional probabilities for context-word pairs from standard input");
  query->add_option("model", model_path, "trained bigram model file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (query->parsed()) return run_query(model_path);
    return run_stage(chosen_stage, config_path, seed, direction, jobs);
  } catch (const std::exception& e) {
    std::cerr << "wordpred: " << e.what() << "\n";
    return 1;
  }
}
