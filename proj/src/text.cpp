#include "wordpred/text.hpp"

#include <cctype>
#include <stdexcept>

namespace wordpred {
namespace {

const char* kOnes[] = {"zero", "one",  "two",   "three", "four", "five",  "six",  "seven",
                       "eight", "nine", "ten",   "eleven", "twelve", "thirteen", "fourteen",
                       "fifteen", "sixteen", "seventeen", "eighteen", "nineteen"};
const char* kTens[] = {"", "", "twenty", "thirty", "forty", "fifty", "sixty", "seventy",
                       "eighty", "ninety"};
const char* kDigits[] = {"zero", "one", "two", "three", "four",
                         "five", "six", "seven", "eight", "nine"};

std::string spell_below_thousand(long v) {
  std::string out;
  if (v >= 100) {
    out = std::string(kOnes[v / 100]) + " hundred";
    v %= 100;
    if (v == 0) return out;
    out += ' ';
  }
  if (v < 20) {
    out += kOnes[v];
  } else {
    out += kTens[v / 10];
    if (v % 10) {
      out += '-';
      out += kOnes[v % 10];
    }
  }
  return out;
}

bool is_ascii_space(char c) { return c == ' ' || c == '\t' || c == '\f' || c == '\v'; }

bool is_terminator(char c) { return c == '?' || c == '!' || c == '.'; }

bool ends_with_terminator(const std::string& line) {
  for (auto it = line.rbegin(); it != line.rend(); ++it) {
    if (is_ascii_space(*it)) continue;
    return is_terminator(*it);
  }
  return false;
}

// Standalone integer, optionally comma-grouped ("1", "12345", "999,999").
// Returns -1 when the token is not one, or is out of the spelled range.
long parse_plain_integer(const std::string& token) {
  std::string digits;
  bool grouped = false;
  for (std::size_t i = 0; i < token.size(); ++i) {
    char c = token[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
    } else if (c == ',') {
      grouped = true;
    } else {
      return -1;
    }
  }
  if (digits.empty() || digits.size() > 6) return -1;
  if (grouped) {
    // validate d{1,3}(,d{3})* shape
    std::size_t first = token.find(',');
    if (first == 0 || first > 3) return -1;
    std::size_t pos = first;
    while (pos != std::string::npos) {
      std::size_t next = token.find(',', pos + 1);
      std::size_t run = (next == std::string::npos ? token.size() : next) - pos - 1;
      if (run != 3) return -1;
      pos = next;
    }
  }
  return std::stol(digits);
}

std::string strip_tags(const std::string& line) {
  std::string out;
  out.reserve(line.size());
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '<') {
      std::size_t close = line.find('>', i + 1);
      if (close != std::string::npos && line.find('<', i + 1) > close) {
        i = close + 1;
        continue;
      }
      // unmatched '<': drop the character itself
      ++i;
      continue;
    }
    out.push_back(line[i]);
    ++i;
  }
  return out;
}

std::string collapse_spaces(const std::string& line) {
  std::string out;
  bool in_space = true;  // trims leading
  for (char c : line) {
    if (is_ascii_space(c)) {
      in_space = true;
      continue;
    }
    if (in_space && !out.empty()) out.push_back(' ');
    in_space = false;
    out.push_back(c);
  }
  return out;
}

bool is_contraction_suffix(const std::string& line, std::size_t pos, std::size_t* len) {
  static const char* suffixes[] = {"ll", "ve", "re", "s", "t", "m", "d"};
  for (const char* suf : suffixes) {
    std::size_t n = std::char_traits<char>::length(suf);
    if (line.compare(pos, n, suf) != 0) continue;
    std::size_t end = pos + n;
    if (end < line.size() && std::isalnum(static_cast<unsigned char>(line[end]))) continue;
    *len = n;
    return true;
  }
  return false;
}

// "don 't" / "don' t" -> "don't". Only the usual contraction suffixes are
// re-attached, so quoted words keep their space.
std::string merge_contractions(const std::string& line) {
  std::string out;
  out.reserve(line.size());
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == ' ' && !out.empty() && std::isalpha(static_cast<unsigned char>(out.back())) &&
        i + 1 < line.size() && line[i + 1] == '\'') {
      std::size_t suf_len = 0;
      if (i + 2 < line.size() && is_contraction_suffix(line, i + 2, &suf_len)) {
        out.push_back('\'');
        out.append(line, i + 2, suf_len);
        i += 2 + suf_len;
        continue;
      }
    }
    if (c == '\'' && !out.empty() && std::isalpha(static_cast<unsigned char>(out.back())) &&
        i + 1 < line.size() && line[i + 1] == ' ') {
      std::size_t j = i + 1;
      while (j < line.size() && line[j] == ' ') ++j;
      std::size_t suf_len = 0;
      if (j < line.size() && is_contraction_suffix(line, j, &suf_len)) {
        out.push_back('\'');
        out.append(line, j, suf_len);
        i = j + suf_len;
        continue;
      }
    }
    out.push_back(c);
    ++i;
  }
  return out;
}

}  // namespace

std::string spell_cardinal(long value) {
  if (value < 0 || value > 999999) throw std::out_of_range("cardinal out of spelled range");
  if (value < 1000) return spell_below_thousand(value);
  std::string out = spell_below_thousand(value / 1000) + " thousand";
  if (value % 1000) out += ' ' + spell_below_thousand(value % 1000);
  return out;
}

std::string spell_out_numbers(const std::string& line) {
  std::string out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (!std::isdigit(static_cast<unsigned char>(line[i]))) {
      out.push_back(line[i]);
      ++i;
      continue;
    }
    // token = maximal run of non-space characters containing this digit
    std::size_t tok_start = i;
    while (tok_start > 0 && !is_ascii_space(line[tok_start - 1])) --tok_start;
    std::size_t tok_end = i;
    while (tok_end < line.size() && !is_ascii_space(line[tok_end])) ++tok_end;
    std::string token = line.substr(tok_start, tok_end - tok_start);
    out.resize(out.size() - (i - tok_start));

    long as_int = parse_plain_integer(token);
    if (as_int >= 0) {
      out += spell_cardinal(as_int);
    } else {
      // mixed token: read each digit run out digit by digit
      for (std::size_t k = 0; k < token.size(); ++k) {
        if (!std::isdigit(static_cast<unsigned char>(token[k]))) {
          out.push_back(token[k]);
          continue;
        }
        if (!out.empty() && !is_ascii_space(out.back())) out.push_back(' ');
        while (k < token.size() && std::isdigit(static_cast<unsigned char>(token[k]))) {
          out += kDigits[token[k] - '0'];
          if (k + 1 < token.size() && std::isdigit(static_cast<unsigned char>(token[k + 1])))
            out.push_back(' ');
          ++k;
        }
        if (k < token.size()) out.push_back(' ');
        --k;
      }
    }
    i = tok_end;
  }
  return out;
}

std::vector<std::string> normalize_text(const std::string& raw) {
  // keep printable ASCII plus newline; everything else goes
  std::string ascii;
  ascii.reserve(raw.size());
  for (unsigned char c : raw) {
    if (c == '\n') {
      ascii.push_back('\n');
    } else if (c == '\t') {
      ascii.push_back(' ');
    } else if (c >= 0x20 && c < 0x7f) {
      ascii.push_back(static_cast<char>(c));
    }
  }

  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= ascii.size()) {
    std::size_t nl = ascii.find('\n', start);
    std::string line = ascii.substr(start, nl == std::string::npos ? nl : nl - start);
    line = collapse_spaces(spell_out_numbers(strip_tags(line)));
    if (!line.empty()) {
      bool starts_lower = std::islower(static_cast<unsigned char>(line.front()));
      if (starts_lower && !lines.empty() && !ends_with_terminator(lines.back())) {
        lines.back() += ' ' + line;
      } else {
        lines.push_back(std::move(line));
      }
    }
    if (nl == std::string::npos) break;
    start = nl + 1;
  }

  for (auto& line : lines) {
    for (char& c : line) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    line = merge_contractions(line);
  }
  return lines;
}

std::vector<std::string> tokenize_fragment(const std::string& fragment) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&]() {
    // trim apostrophes/hyphens at the edges; they only survive word-internally
    std::size_t b = 0, e = current.size();
    while (b < e && (current[b] == '\'' || current[b] == '-')) ++b;
    while (e > b && (current[e - 1] == '\'' || current[e - 1] == '-')) --e;
    if (e > b) tokens.push_back(current.substr(b, e - b));
    current.clear();
  };
  for (char c : fragment) {
    if (is_ascii_space(c)) {
      flush();
    } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '\'' || c == '-') {
      current.push_back(c);
    }
    // any other punctuation is stripped in place
  }
  flush();
  return tokens;
}

std::vector<Sentence> segment_sentences(const std::vector<std::string>& lines) {
  std::vector<Sentence> sentences;
  for (const auto& line : lines) {
    std::string fragment;
    auto emit = [&]() {
      auto tokens = tokenize_fragment(fragment);
      fragment.clear();
      if (tokens.empty()) return;
      Sentence s;
      s.tokens.reserve(tokens.size() + 2);
      s.tokens.push_back(kSentStart);
      for (auto& t : tokens) s.tokens.push_back(std::move(t));
      s.tokens.push_back(kSentEnd);
      sentences.push_back(std::move(s));
    };
    for (char c : line) {
      if (is_terminator(c)) {
        emit();
      } else {
        fragment.push_back(c);
      }
    }
    emit();  // trailing fragment without a terminator still forms a sentence
  }
  return sentences;
}

}  // namespace wordpred
