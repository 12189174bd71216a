#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "wordpred/counts.hpp"
#include "wordpred/kn.hpp"
#include "wordpred/rw.hpp"

namespace wordpred {

// Which model family supplies a probability.
enum class Source { ngram, ndl };

// Which neighbor a metric conditions on: prev uses the forward models
// (context precedes the word), foll the backward ones.
enum class ContextSide { prev, foll };

const char* side_suffix(ContextSide side);

struct MetricsConfig {
  // Axis for NDL probabilification. over_outcomes treats the context as the
  // cue and normalizes over predicted words; over_cues emulates normalizing
  // within an outcome's column instead.
  LogSoftmax::Axis ndl_axis = LogSoftmax::Axis::over_outcomes;
  // Context weighting for informativity: empirical relative bigram counts,
  // or softmax-derived probabilities renormalized over the same observed
  // contexts.
  enum class InfWeights { counts, softmax };
  InfWeights inf_weights = InfWeights::counts;
  // Replaces the frequency denominator (default: training-corpus target
  // total) with an externally chosen total, e.g. the acoustic corpus size.
  std::optional<std::uint64_t> freq_total_override;
};

// One row of the type-level predictor table. Optional fields are missing
// values: the word was absent from the relevant model, and writing zeros
// instead would bias downstream correlations.
struct TypeMetrics {
  std::string word;
  std::optional<double> log_frequency;
  std::optional<double> informativity_prev;
  std::optional<double> informativity_foll;
  std::optional<double> ndl_informativity_prev;
  std::optional<double> ndl_informativity_foll;
  double prior_prev = 0.0;
  double prior_foll = 0.0;
};

// Token-level predictors for one (prev, word, foll) triple.
struct TokenPredictors {
  std::optional<double> cp_prev;
  std::optional<double> cp_foll;
  std::optional<double> ndl_cp_prev;
  std::optional<double> ndl_cp_foll;
  std::optional<double> act_prev;
  std::optional<double> act_foll;
};

// −Σ w_i · log2p_i over a context distribution. weights and log2_probs are
// parallel arrays ordered by context id; weights must sum to 1.
// Throws std::invalid_argument when empty ("word has no contexts").
double informativity(const std::vector<double>& weights, const std::vector<double>& log2_probs);

// Bundles the trained models of both directions and answers every predictor
// query. Throwing variants implement the per-word operations; the table
// builders catch those errors and record missing values.
class Predictors {
 public:
  Predictors(const Vocabulary& vocab, const KNModel& kn_fwd, const KNModel& kn_bwd,
             const WeightMatrix& w_fwd, const WeightMatrix& w_bwd, const BigramCounts& counts_fwd,
             const BigramCounts& counts_bwd, MetricsConfig config = {});

  // log₂(count/total) of the word in the forward target-frequency table.
  // Throws std::invalid_argument ("unseen word") on zero count.
  double log_frequency(const std::string& word) const;

  // log₂ P(word | context) from the requested source. Words must already be
  // <unk>-mapped; unknown words throw std::out_of_range.
  double contextual_predictability(Source source, ContextSide side, const std::string& word,
                                   const std::string& context) const;

  // Eq-style informativity of a word over its observed contexts on one side.
  double informativity(Source source, ContextSide side, const std::string& word) const;

  // Sum of absolute weights in the word's outcome column.
  double prior(ContextSide side, const std::string& word) const;

  // Raw weight of (context cue → word outcome).
  double activation(ContextSide side, const std::string& word, const std::string& context) const;

  // One row per vocabulary word, boundary tokens excluded, NA on error.
  std::vector<TypeMetrics> build_type_metrics() const;

  // Per-token predictors; words must be <unk>-mapped.
  TokenPredictors token_predictors(const std::string& word, const std::string& prev,
                                   const std::string& foll) const;

  const Vocabulary& vocab() const { return vocab_; }
  const MetricsConfig& config() const { return config_; }

 private:
  struct ContextDist {
    std::vector<std::uint32_t> contexts;  // vocab ids, ascending
    std::vector<double> weights;
  };

  const KNModel& kn(ContextSide side) const { return side == ContextSide::prev ? kn_fwd_ : kn_bwd_; }
  const WeightMatrix& wm(ContextSide side) const { return side == ContextSide::prev ? w_fwd_ : w_bwd_; }
  const LogSoftmax& softmax(ContextSide side) const {
    return side == ContextSide::prev ? sm_fwd_ : sm_bwd_;
  }
  ContextDist context_distribution(ContextSide side, std::uint32_t word_id) const;

  const Vocabulary& vocab_;
  const KNModel& kn_fwd_;
  const KNModel& kn_bwd_;
  const WeightMatrix& w_fwd_;
  const WeightMatrix& w_bwd_;
  const BigramCounts& counts_fwd_;
  const BigramCounts& counts_bwd_;
  MetricsConfig config_;
  LogSoftmax sm_fwd_;
  LogSoftmax sm_bwd_;
  std::optional<LogSoftmax> sm_cues_fwd_;  // built only for softmax-derived weights
  std::optional<LogSoftmax> sm_cues_bwd_;
  std::unordered_map<std::uint32_t, std::uint64_t> freq_;  // forward target totals
  std::uint64_t freq_total_ = 0;
  // word id → observed (context id, count) pairs, ascending context
  std::unordered_map<std::uint32_t, std::vector<std::pair<std::uint32_t, std::uint64_t>>>
      contexts_fwd_, contexts_bwd_;
};

void save_type_metrics(const std::filesystem::path& path, const std::vector<TypeMetrics>& rows);
std::vector<TypeMetrics> load_type_metrics(const std::filesystem::path& path);

}  // namespace wordpred
