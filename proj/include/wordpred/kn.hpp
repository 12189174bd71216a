#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "wordpred/counts.hpp"

namespace wordpred {

// Count-of-counts discount estimates. When any of n1..n4 is zero the
// estimates are undefined and a single absolute discount of 0.75 is used.
struct Discounts {
  double d1 = 0.75;
  double d2 = 0.75;
  double d3plus = 0.75;
  bool fallback = false;
};

Discounts estimate_discounts(const BigramCounts& counts);

// Interpolated modified Kneser-Ney bigram model.
//
//   P(w|c) = max(count(c,w) - D(count), 0) / total(c) + gamma(c) * Pcont(w)
//
// where D selects d1/d2/d3plus by raw count, gamma(c) is the discount mass
// released for context c, and Pcont is the continuation unigram (distinct
// contexts preceding w over total bigram types). A context with no counts
// falls back to Pcont alone. The outcome vocabulary is count-driven: only
// words with at least one continuation occurrence can be predicted, which
// leaves <s> unpredictable in the forward model and </s> in the backward one.
class KNModel {
 public:
  static KNModel fit(const BigramCounts& counts, const Vocabulary& vocab);

  // Conditional probability; throws std::out_of_range when word or context
  // is unknown to the model (callers apply <unk> mapping beforehand).
  double cond_prob(const std::string& word, const std::string& context) const;
  double log2_cond_prob(const std::string& word, const std::string& context) const;

  bool has_word(const std::string& word) const;
  bool is_outcome(const std::string& word) const;

  Direction direction() const { return direction_; }
  const Discounts& discounts() const { return discounts_; }

  // Every word the model knows (contexts and targets), sorted; index = id.
  const std::vector<std::string>& words() const { return words_; }
  // Words predictable by this model, sorted.
  std::vector<std::string> outcome_words() const;
  // Contexts with observed counts, sorted.
  std::vector<std::string> known_contexts() const;

  double continuation_prob(const std::string& word) const;

  void save(const std::filesystem::path& path) const;
  static KNModel load(const std::filesystem::path& path);

 private:
  struct ContextTable {
    std::uint64_t total = 0;
    double gamma = 0.0;
    std::unordered_map<std::uint32_t, std::uint64_t> counts;
  };

  double cond_prob_ids(std::uint32_t word, std::uint32_t context) const;
  void build_context_tables(const std::vector<std::uint64_t>& packed_keys,
                            const std::vector<std::uint64_t>& pair_counts);

  Direction direction_ = Direction::forward;
  Discounts discounts_;
  std::vector<std::string> words_;                          // model-local ids
  std::unordered_map<std::string, std::uint32_t> id_of_;
  std::vector<std::uint64_t> cont_count_;                   // distinct contexts per word
  std::uint64_t total_pair_types_ = 0;
  std::unordered_map<std::uint32_t, ContextTable> contexts_;

  friend class KNModelIO;
};

}  // namespace wordpred
