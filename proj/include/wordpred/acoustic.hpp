#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "wordpred/metrics.hpp"
#include "wordpred/vocab.hpp"

namespace wordpred {

// One row of the acoustic token table. Adjacency is captured as load-time
// snapshots (neighbor orthography, neighbor pause flags, edge flags) so that
// filtering never rewrites a token's context: a survivor keeps the neighbors
// it actually had in the utterance, and re-filtering an already filtered
// list is a no-op.
struct AcousticToken {
  std::string speaker_id;
  std::string utterance_id;
  std::uint64_t position = 0;
  std::string orthography;
  double duration_s = 0.0;
  bool is_pause = false;
  std::vector<std::string> controls;  // aligned with AcousticCorpus::control_columns

  std::string prev_orth;  // <s> when utterance-initial
  std::string foll_orth;  // </s> when utterance-final
  bool prev_is_pause = false;
  bool foll_is_pause = false;
  bool utterance_first = false;
  bool utterance_last = false;
};

struct AcousticCorpus {
  std::vector<std::string> control_columns;
  std::vector<AcousticToken> tokens;  // file order
  std::vector<std::string> warnings;
};

// Reads the token table: TSV whose header starts with
//   speaker_id  utterance_id  position  orthography  duration_s  is_pause
// followed by control columns that pass through untouched. Consecutive rows
// sharing (speaker_id, utterance_id) form one utterance. Malformed rows
// raise std::runtime_error naming the line; control columns whose name
// collides with an output column are dropped with a warning.
AcousticCorpus load_acoustic_corpus(const std::filesystem::path& path);

// Removal tally of filter_tokens. Pause rows are structural markers, not
// analysis candidates, and are tallied separately from the five word-token
// rules. pause_markers + the five rule counts + survivors add up to the
// input size: each token is attributed to the first matching rule only.
struct FilterCounts {
  std::uint64_t pause_markers = 0;
  std::uint64_t pause_adjacent = 0;
  std::uint64_t utterance_edge = 0;
  std::uint64_t nonpositive_duration = 0;
  std::uint64_t over_max_duration = 0;
  std::uint64_t out_of_vocabulary = 0;
  std::uint64_t survivors = 0;
};

struct FilterResult {
  std::vector<AcousticToken> kept;
  FilterCounts counts;
};

// Applies the exclusion rules in precedence order: pause adjacency, then
// utterance edge, then nonpositive duration, then duration strictly over
// 10 s, then absence from the training vocabulary.
FilterResult filter_tokens(const std::vector<AcousticToken>& tokens, const Vocabulary& vocab);

// One regression-ready row: log10 duration in milliseconds as response,
// token-level predictors against the token's real utterance neighbors, and
// the word's type-level predictors joined by orthography.
struct AnnotatedToken {
  std::string speaker_id;
  std::string utterance_id;
  std::uint64_t position = 0;
  std::string word;
  double response = 0.0;
  TokenPredictors token;
  TypeMetrics type;
  std::vector<std::string> controls;
};

struct AnnotatedTable {
  std::vector<std::string> control_columns;
  std::vector<AnnotatedToken> rows;  // sorted by (speaker_id, utterance_id, position)
};

// tokens must already be filtered; context words are <unk>-mapped before the
// model queries, the token's own word is in-vocabulary by construction.
AnnotatedTable annotate(const std::vector<AcousticToken>& tokens,
                        const std::vector<std::string>& control_columns,
                        const std::vector<TypeMetrics>& type_rows, const Predictors& predictors);

// Fixed column order: identity columns, response, the thirteen predictor
// columns, then controls. Missing values are NA.
void save_annotated(const std::filesystem::path& path, const AnnotatedTable& table);

}  // namespace wordpred
