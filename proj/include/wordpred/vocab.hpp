#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "wordpred/text.hpp"

namespace wordpred {

struct WordStats {
  std::uint64_t token_count = 0;
  std::uint64_t document_frequency = 0;
};

// Word <-> id mapping with counts. Words seen in fewer documents than
// min_doc_freq fold into <unk>; boundary tokens and <unk> are always kept.
class Vocabulary {
 public:
  // documents: one tokenized document per entry (document frequency counts
  // documents, not tokens). The collection supplied here may be a superset of
  // the corpus later used for counting.
  static Vocabulary build(const std::vector<std::vector<Sentence>>& documents,
                          std::uint64_t min_doc_freq);

  Vocabulary() = default;

  // Retained surface form: the word itself, or <unk> when it fell below the
  // document-frequency threshold (or was never seen).
  const std::string& map(const std::string& word) const;

  bool contains(const std::string& word) const { return id_of_.count(word) > 0; }

  // Dense id of a retained word. Throws std::out_of_range for unknown words.
  std::uint32_t id(const std::string& word) const;

  // Id the word maps to after <unk> substitution.
  std::uint32_t map_id(const std::string& word) const;

  const std::string& word(std::uint32_t id) const { return words_[id]; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(words_.size()); }

  const WordStats& stats(std::uint32_t id) const { return stats_[id]; }

  std::uint64_t total_tokens() const { return total_tokens_; }
  std::uint64_t min_doc_freq() const { return min_doc_freq_; }

  bool is_boundary(std::uint32_t id) const {
    return words_[id] == kSentStart || words_[id] == kSentEnd;
  }

  void save(const std::filesystem::path& path) const;
  static Vocabulary load(const std::filesystem::path& path);

 private:
  std::vector<std::string> words_;          // sorted; index = id
  std::vector<WordStats> stats_;            // by id
  std::unordered_map<std::string, std::uint32_t> id_of_;
  std::uint64_t total_tokens_ = 0;          // pre-thresholding total, conserved
  std::uint64_t min_doc_freq_ = 1;
  std::uint32_t unk_id_ = 0;

  friend class VocabularyBuilder;
};

// Streaming accumulator, one document at a time. Vocabulary::build wraps it.
class VocabularyBuilder {
 public:
  void add_document(const std::vector<Sentence>& document);
  Vocabulary build(std::uint64_t min_doc_freq) const;

 private:
  std::map<std::string, WordStats> raw_;
};

}  // namespace wordpred
