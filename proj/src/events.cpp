#include "wordpred/events.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "wordpred/io_util.hpp"

namespace wordpred {
namespace {

std::string join_words(const std::vector<std::uint32_t>& ids, const Vocabulary& vocab) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out.push_back('_');
    out += vocab.word(ids[i]);
  }
  return out;
}

std::vector<std::uint32_t> split_words(const std::string& joined, const Vocabulary& vocab) {
  std::vector<std::uint32_t> ids;
  std::size_t start = 0;
  while (start <= joined.size()) {
    std::size_t pos = joined.find('_', start);
    std::string word = joined.substr(start, pos == std::string::npos ? pos : pos - start);
    if (!word.empty()) ids.push_back(vocab.id(word));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return ids;
}

}  // namespace

void append_sentence_events(const std::vector<std::uint32_t>& token_ids, Direction direction,
                            std::vector<Event>& out) {
  for (std::size_t i = 0; i + 1 < token_ids.size(); ++i) {
    Event e;
    if (direction == Direction::forward) {
      e.cues = {token_ids[i]};
      e.outcomes = {token_ids[i + 1]};
    } else {
      e.cues = {token_ids[i + 1]};
      e.outcomes = {token_ids[i]};
    }
    out.push_back(std::move(e));
  }
}

std::vector<Event> extract_events(const std::vector<Sentence>& sentences, const Vocabulary& vocab,
                                  Direction direction) {
  std::vector<Event> events;
  for (const auto& sentence : sentences)
    append_sentence_events(map_sentence(sentence, vocab), direction, events);
  return events;
}

void save_events(const std::filesystem::path& path, const std::vector<Event>& events,
                 const Vocabulary& vocab, Direction direction) {
  std::ostringstream out;
  out << "cues\toutcomes\n";
  out << "#direction\t" << direction_name(direction) << '\n';
  for (const auto& e : events)
    out << join_words(e.cues, vocab) << '\t' << join_words(e.outcomes, vocab) << '\n';
  write_file_text(path, out.str());
}

std::vector<Event> load_events(const std::filesystem::path& path, const Vocabulary& vocab,
                               Direction* direction_out) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open events: " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "cues\toutcomes")
    throw std::runtime_error("bad events header in " + path.string());

  std::vector<Event> events;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_tab(line);
    if (fields[0] == "#direction") {
      if (direction_out) *direction_out = direction_from_name(fields[1]);
      continue;
    }
    if (fields.size() != 2) throw std::runtime_error("bad event row: " + line);
    Event e;
    e.cues = split_words(fields[0], vocab);
    e.outcomes = split_words(fields[1], vocab);
    events.push_back(std::move(e));
  }
  return events;
}

}  // namespace wordpred
