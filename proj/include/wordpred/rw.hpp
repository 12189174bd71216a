#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "wordpred/events.hpp"

namespace wordpred {

// Rescorla-Wagner learning rates. alpha scales both evidence rates; lambda
// is the asymptote a present outcome's activation is pushed toward.
struct LearningParams {
  double alpha = 0.001;
  double beta1 = 0.1;
  double beta2 = 0.1;
  double lambda = 1.0;

  // Throws std::invalid_argument unless all rates are positive and both
  // effective rates alpha*beta stay below 1 (keeps weights bounded).
  void validate() const;
};

// Sparse cue-by-outcome association matrix trained with the Rescorla-Wagner
// update. For each event with cues C and outcomes O, every declared outcome o
// moves by alpha*beta1*(lambda - a(o)) when o is in O and by
// alpha*beta2*(0 - a(o)) otherwise, where a(o) = sum over C of w(c, o) uses
// the pre-event weights. Outcomes outside O with zero activation receive an
// exactly-zero update, so training only ever touches the event's outcomes
// plus outcomes already associated with one of its cues; the sparse pass is
// arithmetic-identical to the dense rule. Absent cells are exactly zero.
class WeightMatrix {
 public:
  WeightMatrix() = default;
  WeightMatrix(std::vector<std::string> cue_set, std::vector<std::string> outcome_set,
               LearningParams params);

  static WeightMatrix from_cells(std::vector<std::string> cue_set,
                                 std::vector<std::string> outcome_set, LearningParams params,
                                 const std::vector<std::tuple<std::uint32_t, std::uint32_t, double>>& cells,
                                 std::uint64_t events_seen = 0);

  // Applies events strictly in order. Event ids index the declared sets;
  // anything out of range throws std::out_of_range ("unknown cue/outcome").
  // jobs > 1 partitions outcome columns across threads; the update for a
  // column reads and writes only that column, so the result is bit-identical
  // to the sequential pass.
  void train(const std::vector<Event>& events, unsigned jobs = 1);

  double weight(std::uint32_t cue, std::uint32_t outcome) const;

  // The weight cell for a cue-outcome pair, looked up by word.
  double activation(const std::string& cue, const std::string& outcome) const;

  // Sum of absolute weights in the outcome's column.
  double prior(const std::string& outcome) const;
  double prior_id(std::uint32_t outcome) const;

  std::uint32_t n_cues() const { return static_cast<std::uint32_t>(cues_.size()); }
  std::uint32_t n_outcomes() const { return static_cast<std::uint32_t>(outcomes_.size()); }
  std::uint32_t cue_id(const std::string& word) const;
  std::uint32_t outcome_id(const std::string& word) const;
  bool has_cue(const std::string& word) const { return cue_id_.count(word) > 0; }
  bool has_outcome(const std::string& word) const { return outcome_id_.count(word) > 0; }
  const std::string& cue_word(std::uint32_t id) const { return cues_[id]; }
  const std::string& outcome_word(std::uint32_t id) const { return outcomes_[id]; }

  const LearningParams& params() const { return params_; }
  std::uint64_t events_seen() const { return events_seen_; }
  std::size_t stored_cells() const;

  // Sparse rows, indexed by cue id; read-only view for normalizers.
  const std::vector<std::unordered_map<std::uint32_t, double>>& rows() const { return rows_; }

  void save(const std::filesystem::path& path) const;
  static WeightMatrix load(const std::filesystem::path& path);

 private:
  using Rows = std::vector<std::unordered_map<std::uint32_t, double>>;

  // Sequentially applies events to rows, updating only outcome columns with
  // id % modulus == residue.
  void train_columns(const std::vector<Event>& events, Rows& rows, unsigned modulus,
                     unsigned residue) const;
  void check_event_ids(const std::vector<Event>& events) const;

  std::vector<std::string> cues_;
  std::vector<std::string> outcomes_;
  std::unordered_map<std::string, std::uint32_t> cue_id_;
  std::unordered_map<std::string, std::uint32_t> outcome_id_;
  Rows rows_;
  LearningParams params_;
  std::uint64_t events_seen_ = 0;
};

// Numerically stabilized log-softmax over one axis of the weight matrix:
// entries x map to x - max - ln(sum exp(x_j - max)), with absent cells
// participating as exact zeros. Normalizers are precomputed, so a view is
// immutable and safe to share across threads. Natural log; callers wanting
// bits use log2_prob.
class LogSoftmax {
 public:
  enum class Axis { over_outcomes, over_cues };

  LogSoftmax(const WeightMatrix& weights, Axis axis);

  double log_prob(std::uint32_t cue, std::uint32_t outcome) const;
  double log2_prob(std::uint32_t cue, std::uint32_t outcome) const;

  Axis axis() const { return axis_; }

 private:
  const WeightMatrix& weights_;
  Axis axis_;
  std::vector<double> max_;      // indexed by cue (over_outcomes) or outcome (over_cues)
  std::vector<double> log_sum_;
};

const char* axis_name(LogSoftmax::Axis axis);
LogSoftmax::Axis axis_from_name(const std::string& name);

}  // namespace wordpred
