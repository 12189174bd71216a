#include "wordpred/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wordpred/io_util.hpp"

namespace wordpred {

const char* side_suffix(ContextSide side) { return side == ContextSide::prev ? "prev" : "foll"; }

double informativity(const std::vector<double>& weights, const std::vector<double>& log2_probs) {
  if (weights.empty()) throw std::invalid_argument("informativity: word has no contexts");
  if (weights.size() != log2_probs.size())
    throw std::invalid_argument("informativity: weights and probabilities differ in length");
  std::vector<double> terms(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) terms[i] = weights[i] * log2_probs[i];
  return -pairwise_sum(terms);
}

namespace {

void check_direction(Direction got, Direction want, const char* what) {
  if (got != want)
    throw std::invalid_argument(std::string(what) + " has direction " + direction_name(got) +
                                ", expected " + direction_name(want));
}

void check_matrix_vocab(const WeightMatrix& w, const Vocabulary& vocab, const char* what) {
  if (w.n_cues() != vocab.size() || w.n_outcomes() != vocab.size())
    throw std::invalid_argument(std::string(what) + ": inconsistent vocabularies (size)");
  for (std::uint32_t i = 0; i < vocab.size(); ++i) {
    if (w.cue_word(i) != vocab.word(i) || w.outcome_word(i) != vocab.word(i))
      throw std::invalid_argument(std::string(what) + ": inconsistent vocabularies (word " +
                                  vocab.word(i) + ")");
  }
}

void check_kn_vocab(const KNModel& kn, const Vocabulary& vocab, const char* what) {
  for (const auto& w : kn.words()) {
    if (!vocab.contains(w))
      throw std::invalid_argument(std::string(what) + ": inconsistent vocabularies (word " + w + ")");
  }
}

}  // namespace

Predictors::Predictors(const Vocabulary& vocab, const KNModel& kn_fwd, const KNModel& kn_bwd,
                       const WeightMatrix& w_fwd, const WeightMatrix& w_bwd,
                       const BigramCounts& counts_fwd, const BigramCounts& counts_bwd,
                       MetricsConfig config)
    : vocab_(vocab),
      kn_fwd_(kn_fwd),
      kn_bwd_(kn_bwd),
      w_fwd_(w_fwd),
      w_bwd_(w_bwd),
      counts_fwd_(counts_fwd),
      counts_bwd_(counts_bwd),
      config_(config),
      sm_fwd_(w_fwd, config.ndl_axis),
      sm_bwd_(w_bwd, config.ndl_axis) {
  check_direction(counts_fwd.direction(), Direction::forward, "forward counts");
  check_direction(counts_bwd.direction(), Direction::backward, "backward counts");
  check_direction(kn_fwd.direction(), Direction::forward, "forward model");
  check_direction(kn_bwd.direction(), Direction::backward, "backward model");
  check_matrix_vocab(w_fwd, vocab, "forward weights");
  check_matrix_vocab(w_bwd, vocab, "backward weights");
  check_kn_vocab(kn_fwd, vocab, "forward model");
  check_kn_vocab(kn_bwd, vocab, "backward model");

  freq_ = counts_fwd.target_totals();
  freq_total_ = config_.freq_total_override.value_or(counts_fwd.total_pairs());
  if (freq_total_ == 0) throw std::invalid_argument("frequency total must be positive");

  auto gather = [](const BigramCounts& counts, auto& by_word) {
    for (const auto& [key, c] : counts.pairs()) {
      by_word[BigramCounts::packed_word(key)].emplace_back(BigramCounts::packed_context(key), c);
    }
    for (auto& [w, ctxs] : by_word) std::sort(ctxs.begin(), ctxs.end());
  };
  gather(counts_fwd, contexts_fwd_);
  gather(counts_bwd, contexts_bwd_);

  if (config_.inf_weights == MetricsConfig::InfWeights::softmax) {
    sm_cues_fwd_.emplace(w_fwd_, LogSoftmax::Axis::over_cues);
    sm_cues_bwd_.emplace(w_bwd_, LogSoftmax::Axis::over_cues);
  }
}

double Predictors::log_frequency(const std::string& word) const {
  auto it = freq_.find(vocab_.id(word));
  if (it == freq_.end() || it->second == 0)
    throw std::invalid_argument("unseen word: " + word);
  return std::log2(static_cast<double>(it->second) / static_cast<double>(freq_total_));
}

double Predictors::contextual_predictability(Source source, ContextSide side,
                                             const std::string& word,
                                             const std::string& context) const {
  if (source == Source::ngram) return kn(side).log2_cond_prob(word, context);
  const WeightMatrix& w = wm(side);
  return softmax(side).log2_prob(w.cue_id(context), w.outcome_id(word));
}

Predictors::ContextDist Predictors::context_distribution(ContextSide side,
                                                         std::uint32_t word_id) const {
  const auto& by_word = side == ContextSide::prev ? contexts_fwd_ : contexts_bwd_;
  auto it = by_word.find(word_id);
  if (it == by_word.end())
    throw std::invalid_argument("word has no contexts: " + vocab_.word(word_id));

  ContextDist dist;
  dist.contexts.reserve(it->second.size());
  dist.weights.resize(it->second.size());
  for (const auto& [ctx, c] : it->second) dist.contexts.push_back(ctx);

  if (config_.inf_weights == MetricsConfig::InfWeights::counts) {
    std::uint64_t total = 0;
    for (const auto& [ctx, c] : it->second) total += c;
    for (std::size_t i = 0; i < it->second.size(); ++i)
      dist.weights[i] = static_cast<double>(it->second[i].second) / static_cast<double>(total);
  } else {
    // Softmax-derived weights, renormalized over the word's observed
    // contexts so the distribution keeps the count version's support.
    const auto& sm = side == ContextSide::prev ? *sm_cues_fwd_ : *sm_cues_bwd_;
    std::vector<double> probs(dist.contexts.size());
    for (std::size_t i = 0; i < dist.contexts.size(); ++i)
      probs[i] = std::exp(sm.log_prob(dist.contexts[i], word_id));
    const double total = pairwise_sum(probs);
    for (std::size_t i = 0; i < probs.size(); ++i) dist.weights[i] = probs[i] / total;
  }
  return dist;
}

double Predictors::informativity(Source source, ContextSide side, const std::string& word) const {
  const std::uint32_t word_id = vocab_.id(word);
  const ContextDist dist = context_distribution(side, word_id);
  std::vector<double> log2p(dist.contexts.size());
  for (std::size_t i = 0; i < dist.contexts.size(); ++i)
    log2p[i] = contextual_predictability(source, side, word, vocab_.word(dist.contexts[i]));
  return wordpred::informativity(dist.weights, log2p);
}

double Predictors::prior(ContextSide side, const std::string& word) const {
  return wm(side).prior(word);
}

double Predictors::activation(ContextSide side, const std::string& word,
                              const std::string& context) const {
  return wm(side).activation(context, word);
}

namespace {

template <typename Fn>
std::optional<double> guard(Fn&& fn) {
  try {
    return fn();
  } catch (const std::out_of_range&) {
    return std::nullopt;
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

}  // namespace

std::vector<TypeMetrics> Predictors::build_type_metrics() const {
  std::vector<TypeMetrics> rows;
  rows.reserve(vocab_.size());
  for (std::uint32_t id = 0; id < vocab_.size(); ++id) {
    if (vocab_.is_boundary(id)) continue;
    const std::string& w = vocab_.word(id);
    TypeMetrics row;
    row.word = w;
    row.log_frequency = guard([&] { return log_frequency(w); });
    row.informativity_prev =
        guard([&] { return informativity(Source::ngram, ContextSide::prev, w); });
    row.informativity_foll =
        guard([&] { return informativity(Source::ngram, ContextSide::foll, w); });
    row.ndl_informativity_prev =
        guard([&] { return informativity(Source::ndl, ContextSide::prev, w); });
    row.ndl_informativity_foll =
        guard([&] { return informativity(Source::ndl, ContextSide::foll, w); });
    row.prior_prev = prior(ContextSide::prev, w);
    row.prior_foll = prior(ContextSide::foll, w);
    rows.push_back(std::move(row));
  }
  return rows;
}

TokenPredictors Predictors::token_predictors(const std::string& word, const std::string& prev,
                                             const std::string& foll) const {
  TokenPredictors t;
  t.cp_prev = guard(
      [&] { return contextual_predictability(Source::ngram, ContextSide::prev, word, prev); });
  t.cp_foll = guard(
      [&] { return contextual_predictability(Source::ngram, ContextSide::foll, word, foll); });
  t.ndl_cp_prev =
      guard([&] { return contextual_predictability(Source::ndl, ContextSide::prev, word, prev); });
  t.ndl_cp_foll =
      guard([&] { return contextual_predictability(Source::ndl, ContextSide::foll, word, foll); });
  t.act_prev = guard([&] { return activation(ContextSide::prev, word, prev); });
  t.act_foll = guard([&] { return activation(ContextSide::foll, word, foll); });
  return t;
}

namespace {

std::string opt_field(const std::optional<double>& v) {
  return v.has_value() ? format_double(*v) : std::string(kNA);
}

std::optional<double> parse_opt(const std::string& s) {
  if (s == kNA) return std::nullopt;
  return std::stod(s);
}

}  // namespace

void save_type_metrics(const std::filesystem::path& path, const std::vector<TypeMetrics>& rows) {
  std::string out =
      "word\tlog_freq\tinf_prev\tinf_foll\tndl_inf_prev\tndl_inf_foll\tprior_prev\tprior_foll\n";
  for (const TypeMetrics& r : rows) {
    out += r.word + "\t" + opt_field(r.log_frequency) + "\t" + opt_field(r.informativity_prev) +
           "\t" + opt_field(r.informativity_foll) + "\t" + opt_field(r.ndl_informativity_prev) +
           "\t" + opt_field(r.ndl_informativity_foll) + "\t" + format_double(r.prior_prev) + "\t" +
           format_double(r.prior_foll) + "\n";
  }
  write_file_text(path, out);
}

std::vector<TypeMetrics> load_type_metrics(const std::filesystem::path& path) {
  const std::string text = read_file_bytes(path);
  std::vector<TypeMetrics> rows;
  std::size_t pos = 0;
  bool header = true;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    const std::string line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    auto cols = split_tab(line);
    if (cols.size() != 8)
      throw std::runtime_error("type metrics file " + path.string() + ": bad row: " + line);
    TypeMetrics r;
    r.word = cols[0];
    r.log_frequency = parse_opt(cols[1]);
    r.informativity_prev = parse_opt(cols[2]);
    r.informativity_foll = parse_opt(cols[3]);
    r.ndl_informativity_prev = parse_opt(cols[4]);
    r.ndl_informativity_foll = parse_opt(cols[5]);
    r.prior_prev = std::stod(cols[6]);
    r.prior_foll = std::stod(cols[7]);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace wordpred
