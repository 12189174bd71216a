#pragma once

#include <string>
#include <vector>

namespace wordpred {

inline constexpr const char* kSentStart = "<s>";
inline constexpr const char* kSentEnd = "</s>";
inline constexpr const char* kUnk = "<unk>";

// Tokens of one sentence, wrapped in <s> ... </s>.
struct Sentence {
  std::vector<std::string> tokens;
};

// Spells a cardinal 0..999999 as lowercase English words ("twenty-one",
// "one hundred five"). Throws std::out_of_range outside that range.
std::string spell_cardinal(long value);

// Replaces numerals in a line: a standalone integer (optionally
// comma-grouped) up to 999,999 becomes its cardinal spelling; any other
// digit run is read out digit by digit.
std::string spell_out_numbers(const std::string& line);

// Cleans one raw document (arbitrary bytes) into lowercase ASCII lines:
// strips non-ASCII bytes and <...> tags, spells out numerals, merges
// continuation lines that start with a lowercase letter into the previous
// line unless that line ended with '?', '!' or '.', and re-joins
// contractions that were split around an apostrophe.
std::vector<std::string> normalize_text(const std::string& raw);

// Splits cleaned lines into sentences at '?', '!' and '.', wrapping each in
// boundary tokens. Terminators are consumed; within a fragment, tokens are
// whitespace-separated with punctuation stripped (internal apostrophes and
// hyphens kept).
std::vector<Sentence> segment_sentences(const std::vector<std::string>& lines);

// Tokenizes one terminator-free fragment. Exposed for reuse and tests.
std::vector<std::string> tokenize_fragment(const std::string& fragment);

}  // namespace wordpred
