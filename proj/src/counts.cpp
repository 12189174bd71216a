#include "wordpred/counts.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "wordpred/io_util.hpp"

namespace wordpred {

const char* direction_name(Direction d) {
  return d == Direction::forward ? "forward" : "backward";
}

Direction direction_from_name(const std::string& name) {
  if (name == "forward" || name == "fwd") return Direction::forward;
  if (name == "backward" || name == "bwd") return Direction::backward;
  throw std::invalid_argument("unknown direction: " + name);
}

void BigramCounts::add(std::uint32_t context, std::uint32_t word, std::uint64_t n) {
  counts_[pack(context, word)] += n;
  context_totals_[context] += n;
  total_pairs_ += n;
}

void BigramCounts::add_sentence(const std::vector<std::uint32_t>& token_ids) {
  for (std::size_t i = 0; i + 1 < token_ids.size(); ++i) {
    if (direction_ == Direction::forward) {
      add(token_ids[i], token_ids[i + 1]);
    } else {
      add(token_ids[i + 1], token_ids[i]);
    }
  }
}

void BigramCounts::merge(const BigramCounts& other) {
  if (other.direction_ != direction_) throw std::invalid_argument("direction mismatch in merge");
  for (const auto& [key, n] : other.counts_) counts_[key] += n;
  for (const auto& [ctx, n] : other.context_totals_) context_totals_[ctx] += n;
  total_pairs_ += other.total_pairs_;
}

std::uint64_t BigramCounts::count(std::uint32_t context, std::uint32_t word) const {
  auto it = counts_.find(pack(context, word));
  return it == counts_.end() ? 0 : it->second;
}

std::uint64_t BigramCounts::context_total(std::uint32_t context) const {
  auto it = context_totals_.find(context);
  return it == context_totals_.end() ? 0 : it->second;
}

std::unordered_map<std::uint32_t, std::uint64_t> BigramCounts::target_totals() const {
  std::unordered_map<std::uint32_t, std::uint64_t> totals;
  for (const auto& [key, n] : counts_) totals[packed_word(key)] += n;
  return totals;
}

void BigramCounts::save(const std::filesystem::path& path, const Vocabulary& vocab) const {
  std::vector<std::uint64_t> keys;
  keys.reserve(counts_.size());
  for (const auto& [key, n] : counts_) keys.push_back(key);
  std::sort(keys.begin(), keys.end(), [&](std::uint64_t a, std::uint64_t b) {
    const auto& ca = vocab.word(packed_context(a));
    const auto& cb = vocab.word(packed_context(b));
    if (ca != cb) return ca < cb;
    return vocab.word(packed_word(a)) < vocab.word(packed_word(b));
  });
  std::ostringstream out;
  out << "context\tword\tcount\n";
  out << "#direction\t" << direction_name(direction_) << "\t0\n";
  for (auto key : keys) {
    out << vocab.word(packed_context(key)) << '\t' << vocab.word(packed_word(key)) << '\t'
        << counts_.at(key) << '\n';
  }
  write_file_text(path, out.str());
}

BigramCounts BigramCounts::load(const std::filesystem::path& path, const Vocabulary& vocab) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open counts: " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "context\tword\tcount")
    throw std::runtime_error("bad counts header in " + path.string());

  BigramCounts counts(Direction::forward);
  bool have_direction = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_tab(line);
    if (fields.size() != 3) throw std::runtime_error("bad counts row: " + line);
    if (fields[0] == "#direction") {
      counts.direction_ = direction_from_name(fields[1]);
      have_direction = true;
      continue;
    }
    counts.add(vocab.id(fields[0]), vocab.id(fields[1]), std::stoull(fields[2]));
  }
  if (!have_direction) throw std::runtime_error("counts file lacks direction: " + path.string());
  return counts;
}

std::vector<std::uint32_t> map_sentence(const Sentence& sentence, const Vocabulary& vocab) {
  std::vector<std::uint32_t> ids;
  ids.reserve(sentence.tokens.size());
  for (const auto& token : sentence.tokens) ids.push_back(vocab.map_id(token));
  return ids;
}

BigramCounts count_bigrams(const std::vector<Sentence>& sentences, const Vocabulary& vocab,
                           Direction direction) {
  BigramCounts counts(direction);
  for (const auto& sentence : sentences) counts.add_sentence(map_sentence(sentence, vocab));
  return counts;
}

}  // namespace wordpred
