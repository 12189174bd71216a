#include "wordpred/acoustic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "wordpred/io_util.hpp"
#include "wordpred/text.hpp"

namespace wordpred {

namespace {

const std::vector<std::string> kRequiredColumns = {
    "speaker_id", "utterance_id", "position", "orthography", "duration_s", "is_pause"};

// Output columns annotate writes; a control column of the same name would be
// ambiguous downstream.
const std::unordered_set<std::string> kReservedColumns = {
    "speaker_id", "utterance_id", "position",    "word",        "response",
    "log_freq",   "cp_prev",      "cp_foll",     "inf_prev",    "inf_foll",
    "ndl_cp_prev", "ndl_cp_foll", "ndl_inf_prev", "ndl_inf_foll", "prior_prev",
    "prior_foll", "act_prev",     "act_foll",    "orthography", "duration_s",
    "is_pause"};

bool parse_bool(const std::string& s, const std::string& where) {
  if (s == "1" || s == "true") return true;
  if (s == "0" || s == "false") return false;
  throw std::runtime_error(where + ": bad boolean '" + s + "'");
}

}  // namespace

AcousticCorpus load_acoustic_corpus(const std::filesystem::path& path) {
  const std::string text = read_file_bytes(path);
  AcousticCorpus corpus;

  std::vector<std::vector<std::string>> rows;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  std::vector<std::size_t> row_lines;
  std::vector<std::string> header;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    std::string line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.empty()) continue;
    if (header.empty()) {
      header = split_tab(line);
    } else {
      rows.push_back(split_tab(line));
      row_lines.push_back(line_no);
    }
  }
  auto fail = [&](std::size_t line, const std::string& why) -> std::runtime_error {
    return std::runtime_error(path.string() + " line " + std::to_string(line) + ": " + why);
  };

  if (header.size() < kRequiredColumns.size()) throw fail(1, "missing required columns");
  for (std::size_t i = 0; i < kRequiredColumns.size(); ++i) {
    if (header[i] != kRequiredColumns[i])
      throw fail(1, "column " + std::to_string(i + 1) + " must be " + kRequiredColumns[i] +
                        ", found " + header[i]);
  }

  // Control columns follow the required six; reserved names are dropped so
  // they cannot shadow annotate's own output.
  std::vector<std::size_t> control_idx;
  for (std::size_t i = kRequiredColumns.size(); i < header.size(); ++i) {
    if (kReservedColumns.count(header[i]) > 0) {
      corpus.warnings.push_back("ignoring control column with reserved name: " + header[i]);
      continue;
    }
    corpus.control_columns.push_back(header[i]);
    control_idx.push_back(i);
  }

  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& cols = rows[r];
    const std::size_t line = row_lines[r];
    if (cols.size() != header.size())
      throw fail(line, "expected " + std::to_string(header.size()) + " fields, found " +
                           std::to_string(cols.size()));
    AcousticToken tok;
    tok.speaker_id = cols[0];
    tok.utterance_id = cols[1];
    try {
      tok.position = std::stoull(cols[2]);
    } catch (const std::exception&) {
      throw fail(line, "bad position '" + cols[2] + "'");
    }
    tok.orthography = cols[3];
    try {
      tok.duration_s = std::stod(cols[4]);
    } catch (const std::exception&) {
      throw fail(line, "bad duration '" + cols[4] + "'");
    }
    tok.is_pause = parse_bool(cols[5], path.string() + " line " + std::to_string(line));
    tok.controls.reserve(control_idx.size());
    for (std::size_t i : control_idx) tok.controls.push_back(cols[i]);
    corpus.tokens.push_back(std::move(tok));
  }

  // Utterances are consecutive runs of one (speaker_id, utterance_id);
  // adjacency snapshots are fixed here, once, against the raw sequence.
  std::size_t start = 0;
  while (start < corpus.tokens.size()) {
    std::size_t end = start + 1;
    while (end < corpus.tokens.size() &&
           corpus.tokens[end].speaker_id == corpus.tokens[start].speaker_id &&
           corpus.tokens[end].utterance_id == corpus.tokens[start].utterance_id) {
      ++end;
    }
    for (std::size_t i = start; i < end; ++i) {
      AcousticToken& tok = corpus.tokens[i];
      tok.utterance_first = i == start;
      tok.utterance_last = i + 1 == end;
      tok.prev_orth = tok.utterance_first ? kSentStart : corpus.tokens[i - 1].orthography;
      tok.foll_orth = tok.utterance_last ? kSentEnd : corpus.tokens[i + 1].orthography;
      tok.prev_is_pause = !tok.utterance_first && corpus.tokens[i - 1].is_pause;
      tok.foll_is_pause = !tok.utterance_last && corpus.tokens[i + 1].is_pause;
    }
    start = end;
  }
  return corpus;
}

FilterResult filter_tokens(const std::vector<AcousticToken>& tokens, const Vocabulary& vocab) {
  FilterResult result;
  for (const AcousticToken& tok : tokens) {
    if (tok.is_pause) {
      ++result.counts.pause_markers;
    } else if (tok.prev_is_pause || tok.foll_is_pause) {
      ++result.counts.pause_adjacent;
    } else if (tok.utterance_first || tok.utterance_last) {
      ++result.counts.utterance_edge;
    } else if (tok.duration_s <= 0.0) {
      ++result.counts.nonpositive_duration;
    } else if (tok.duration_s > 10.0) {
      ++result.counts.over_max_duration;
    } else if (!vocab.contains(tok.orthography)) {
      ++result.counts.out_of_vocabulary;
    } else {
      ++result.counts.survivors;
      result.kept.push_back(tok);
    }
  }
  return result;
}

AnnotatedTable annotate(const std::vector<AcousticToken>& tokens,
                        const std::vector<std::string>& control_columns,
                        const std::vector<TypeMetrics>& type_rows, const Predictors& predictors) {
  std::unordered_map<std::string, const TypeMetrics*> by_word;
  by_word.reserve(type_rows.size());
  for (const TypeMetrics& row : type_rows) by_word.emplace(row.word, &row);

  AnnotatedTable table;
  table.control_columns = control_columns;
  table.rows.reserve(tokens.size());
  const Vocabulary& vocab = predictors.vocab();
  for (const AcousticToken& tok : tokens) {
    AnnotatedToken row;
    row.speaker_id = tok.speaker_id;
    row.utterance_id = tok.utterance_id;
    row.position = tok.position;
    row.word = tok.orthography;
    row.response = std::log10(tok.duration_s * 1000.0);
    row.token =
        predictors.token_predictors(tok.orthography, vocab.map(tok.prev_orth), vocab.map(tok.foll_orth));
    auto it = by_word.find(tok.orthography);
    if (it != by_word.end()) {
      row.type = *it->second;
    } else {
      row.type.word = tok.orthography;
    }
    row.controls = tok.controls;
    table.rows.push_back(std::move(row));
  }

  std::sort(table.rows.begin(), table.rows.end(),
            [](const AnnotatedToken& a, const AnnotatedToken& b) {
              return std::tie(a.speaker_id, a.utterance_id, a.position) <
                     std::tie(b.speaker_id, b.utterance_id, b.position);
            });
  return table;
}

namespace {

std::string opt_field(const std::optional<double>& v) {
  return v.has_value() ? format_double(*v) : std::string(kNA);
}

}  // namespace

void save_annotated(const std::filesystem::path& path, const AnnotatedTable& table) {
  std::string out = "speaker_id\tutterance_id\tposition\tword\tresponse\tlog_freq\tcp_prev\tcp_foll"
                    "\tinf_prev\tinf_foll\tndl_cp_prev\tndl_cp_foll\tndl_inf_prev\tndl_inf_foll"
                    "\tprior_prev\tprior_foll\tact_prev\tact_foll";
  for (const auto& c : table.control_columns) out += "\t" + c;
  out += "\n";
  for (const AnnotatedToken& r : table.rows) {
    out += r.speaker_id + "\t" + r.utterance_id + "\t" + std::to_string(r.position) + "\t" +
           r.word + "\t" + format_double(r.response) + "\t" + opt_field(r.type.log_frequency) +
           "\t" + opt_field(r.token.cp_prev) + "\t" + opt_field(r.token.cp_foll) + "\t" +
           opt_field(r.type.informativity_prev) + "\t" + opt_field(r.type.informativity_foll) +
           "\t" + opt_field(r.token.ndl_cp_prev) + "\t" + opt_field(r.token.ndl_cp_foll) + "\t" +
           opt_field(r.type.ndl_informativity_prev) + "\t" +
           opt_field(r.type.ndl_informativity_foll) + "\t" + format_double(r.type.prior_prev) +
           "\t" + format_double(r.type.prior_foll) + "\t" + opt_field(r.token.act_prev) + "\t" +
           opt_field(r.token.act_foll);
    for (const auto& c : r.controls) out += "\t" + c;
    out += "\n";
  }
  write_file_text(path, out);
}

}  // namespace wordpred
