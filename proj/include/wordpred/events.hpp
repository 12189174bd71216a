#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "wordpred/counts.hpp"
#include "wordpred/vocab.hpp"

namespace wordpred {

// One cue -> outcome learning event. Bigram extraction always yields a single
// cue and a single outcome; the sets exist for the event-file convention.
struct Event {
  std::vector<std::uint32_t> cues;
  std::vector<std::uint32_t> outcomes;
};

// One event per adjacent pair, in corpus order (learning is order-sensitive).
// Forward: cue = preceding word, outcome = target; backward: cue = following
// word. Out-of-vocabulary tokens are replaced with <unk> first.
std::vector<Event> extract_events(const std::vector<Sentence>& sentences, const Vocabulary& vocab,
                                  Direction direction);

// Appends one sentence's events; the streaming core of extract_events.
void append_sentence_events(const std::vector<std::uint32_t>& token_ids, Direction direction,
                            std::vector<Event>& out);

// Event file: TSV with a cues/outcomes header, multi-values joined with '_'.
void save_events(const std::filesystem::path& path, const std::vector<Event>& events,
                 const Vocabulary& vocab, Direction direction);
std::vector<Event> load_events(const std::filesystem::path& path, const Vocabulary& vocab,
                               Direction* direction_out = nullptr);

}  // namespace wordpred
