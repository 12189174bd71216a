#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "wordpred/vocab.hpp"

namespace wordpred {

enum class Direction { forward, backward };

const char* direction_name(Direction d);
Direction direction_from_name(const std::string& name);

// Directional adjacency counts over vocabulary ids. Forward: context is the
// preceding token; backward: the following one.
class BigramCounts {
 public:
  explicit BigramCounts(Direction direction) : direction_(direction) {}

  void add(std::uint32_t context, std::uint32_t word, std::uint64_t n = 1);

  // Adds every adjacent pair of one sentence (tokens must be pre-mapped ids).
  void add_sentence(const std::vector<std::uint32_t>& token_ids);

  // Merges another counts object of the same direction (deterministic:
  // integer addition commutes).
  void merge(const BigramCounts& other);

  std::uint64_t count(std::uint32_t context, std::uint32_t word) const;
  std::uint64_t context_total(std::uint32_t context) const;

  Direction direction() const { return direction_; }
  std::uint64_t total_pairs() const { return total_pairs_; }
  std::size_t pair_types() const { return counts_.size(); }
  bool empty() const { return counts_.empty(); }

  // (context, word) -> count, keyed by packed ids.
  const std::unordered_map<std::uint64_t, std::uint64_t>& pairs() const { return counts_; }
  const std::unordered_map<std::uint32_t, std::uint64_t>& context_totals() const {
    return context_totals_;
  }

  // Occurrences of each word as a target; the unigram frequency table used by
  // the type-level frequency metric.
  std::unordered_map<std::uint32_t, std::uint64_t> target_totals() const;

  static std::uint64_t pack(std::uint32_t context, std::uint32_t word) {
    return (static_cast<std::uint64_t>(context) << 32) | word;
  }
  static std::uint32_t packed_context(std::uint64_t key) {
    return static_cast<std::uint32_t>(key >> 32);
  }
  static std::uint32_t packed_word(std::uint64_t key) {
    return static_cast<std::uint32_t>(key & 0xffffffffu);
  }

  void save(const std::filesystem::path& path, const Vocabulary& vocab) const;
  static BigramCounts load(const std::filesystem::path& path, const Vocabulary& vocab);

 private:
  Direction direction_;
  std::unordered_map<std::uint64_t, std::uint64_t> counts_;
  std::unordered_map<std::uint32_t, std::uint64_t> context_totals_;
  std::uint64_t total_pairs_ = 0;
};

// Maps a sentence's tokens through the vocabulary (<unk> substitution).
std::vector<std::uint32_t> map_sentence(const Sentence& sentence, const Vocabulary& vocab);

// Counts every adjacent ordered pair of every sentence. Out-of-vocabulary
// tokens are replaced with <unk> first.
BigramCounts count_bigrams(const std::vector<Sentence>& sentences, const Vocabulary& vocab,
                           Direction direction);

}  // namespace wordpred
