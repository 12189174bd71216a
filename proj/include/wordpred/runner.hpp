#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wordpred/counts.hpp"
#include "wordpred/metrics.hpp"
#include "wordpred/rw.hpp"
#include "wordpred/text.hpp"

namespace wordpred {

// Pipeline configuration. Defaults match the reference setup: a 10,000-file
// training subset, words below six documents folded into <unk>, learning
// rates alpha 0.001, beta 0.1/0.1, lambda 1. load() warns when a config file
// departs from those defaults so silent drift is visible.
struct RunnerConfig {
  std::filesystem::path corpus_dir;
  std::filesystem::path acoustic_table;
  std::filesystem::path output_dir = "out";
  std::uint64_t subset_size = 10000;
  std::uint64_t min_doc_freq = 6;
  std::uint64_t seed = 1;
  enum class Directions { fwd, bwd, both };
  Directions directions = Directions::both;
  unsigned jobs = 1;
  LearningParams learning;
  LogSoftmax::Axis ndl_axis = LogSoftmax::Axis::over_outcomes;
  MetricsConfig::InfWeights inf_weights = MetricsConfig::InfWeights::counts;
  // Frequency denominator: training-corpus target total, or the acoustic
  // table's word-token count.
  bool freq_total_acoustic = false;

  std::filesystem::path config_path;  // for staleness checks; empty if defaults
  std::vector<std::string> warnings;

  // Parses a JSON config; relative paths resolve against the file's
  // directory. Unknown keys are an error (misspelled options must not be
  // silently ignored).
  static RunnerConfig load(const std::filesystem::path& path);
};

// Executes pipeline stages against the artifact directory. A stage is
// skipped when all its outputs are newer than all its inputs (the config
// file counts as an input to every stage); otherwise it recomputes and
// rewrites its outputs deterministically, so reruns are byte-identical.
class Runner {
 public:
  Runner(RunnerConfig config, std::ostream& log);

  // Runs one stage by name (preprocess, vocab, counts, train-ngram,
  // train-ndl, metrics, annotate, analyze, all). Throws std::invalid_argument
  // for unknown names and std::runtime_error for missing inputs.
  void run(const std::string& stage);

  void preprocess();
  void vocab();
  void counts();
  void train_ngram();
  void train_ndl();
  void metrics();
  void annotate();
  void analyze();
  void all();

  static const std::vector<std::string>& stage_names();

  const RunnerConfig& config() const { return config_; }

 private:
  bool fresh(const std::vector<std::filesystem::path>& outputs,
             const std::vector<std::filesystem::path>& inputs) const;
  std::vector<std::filesystem::path> corpus_files() const;
  std::vector<std::filesystem::path> normalized_files(const char* stage) const;
  std::vector<Direction> wanted_directions() const;
  void require_both_directions(const char* stage) const;
  MetricsConfig metrics_config(const char* stage) const;
  std::filesystem::path out(const std::string& name) const { return config_.output_dir / name; }

  RunnerConfig config_;
  std::ostream& log_;
};

}  // namespace wordpred
