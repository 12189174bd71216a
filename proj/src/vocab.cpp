#include "wordpred/vocab.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "wordpred/io_util.hpp"

namespace wordpred {

void VocabularyBuilder::add_document(const std::vector<Sentence>& document) {
  std::set<std::string> seen_here;
  for (const auto& sentence : document) {
    for (const auto& token : sentence.tokens) {
      raw_[token].token_count += 1;
      seen_here.insert(token);
    }
  }
  for (const auto& w : seen_here) raw_[w].document_frequency += 1;
}

Vocabulary VocabularyBuilder::build(std::uint64_t min_doc_freq) const {
  if (min_doc_freq < 1) throw std::invalid_argument("min_doc_freq must be >= 1");

  Vocabulary v;
  v.min_doc_freq_ = min_doc_freq;

  WordStats unk_stats;
  std::map<std::string, WordStats> retained;
  for (const auto& [word, stats] : raw_) {
    v.total_tokens_ += stats.token_count;
    bool special = word == kSentStart || word == kSentEnd || word == kUnk;
    if (special || stats.document_frequency >= min_doc_freq) {
      retained[word].token_count += stats.token_count;
      retained[word].document_frequency += stats.document_frequency;
    } else {
      unk_stats.token_count += stats.token_count;
      // df of <unk> is a lower bound; nothing downstream consumes it
      unk_stats.document_frequency =
          std::max(unk_stats.document_frequency, stats.document_frequency);
    }
  }
  retained[kSentStart];
  retained[kSentEnd];
  retained[kUnk].token_count += unk_stats.token_count;
  retained[kUnk].document_frequency =
      std::max(retained[kUnk].document_frequency, unk_stats.document_frequency);

  for (const auto& [word, stats] : retained) {
    v.id_of_[word] = static_cast<std::uint32_t>(v.words_.size());
    v.words_.push_back(word);
    v.stats_.push_back(stats);
  }
  v.unk_id_ = v.id_of_.at(kUnk);
  return v;
}

Vocabulary Vocabulary::build(const std::vector<std::vector<Sentence>>& documents,
                             std::uint64_t min_doc_freq) {
  VocabularyBuilder builder;
  for (const auto& doc : documents) builder.add_document(doc);
  return builder.build(min_doc_freq);
}

const std::string& Vocabulary::map(const std::string& word) const {
  auto it = id_of_.find(word);
  return it == id_of_.end() ? words_[unk_id_] : words_[it->second];
}

std::uint32_t Vocabulary::id(const std::string& word) const {
  auto it = id_of_.find(word);
  if (it == id_of_.end()) throw std::out_of_range("word not in vocabulary: " + word);
  return it->second;
}

std::uint32_t Vocabulary::map_id(const std::string& word) const {
  auto it = id_of_.find(word);
  return it == id_of_.end() ? unk_id_ : it->second;
}

void Vocabulary::save(const std::filesystem::path& path) const {
  std::ostringstream out;
  out << "word\ttoken_count\tdocument_frequency\n";
  out << "#min_doc_freq\t" << min_doc_freq_ << "\t0\n";
  for (std::uint32_t i = 0; i < size(); ++i) {
    out << words_[i] << '\t' << stats_[i].token_count << '\t' << stats_[i].document_frequency
        << '\n';
  }
  write_file_text(path, out.str());
}

Vocabulary Vocabulary::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open vocabulary: " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "word\ttoken_count\tdocument_frequency")
    throw std::runtime_error("bad vocabulary header in " + path.string());

  Vocabulary v;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_tab(line);
    if (fields.size() != 3) throw std::runtime_error("bad vocabulary row: " + line);
    if (fields[0] == "#min_doc_freq") {
      v.min_doc_freq_ = std::stoull(fields[1]);
      continue;
    }
    WordStats stats{std::stoull(fields[1]), std::stoull(fields[2])};
    v.id_of_[fields[0]] = static_cast<std::uint32_t>(v.words_.size());
    v.words_.push_back(fields[0]);
    v.stats_.push_back(stats);
    v.total_tokens_ += stats.token_count;
  }
  auto it = v.id_of_.find(kUnk);
  if (it == v.id_of_.end()) throw std::runtime_error("vocabulary lacks <unk>: " + path.string());
  v.unk_id_ = it->second;
  return v;
}

}  // namespace wordpred
