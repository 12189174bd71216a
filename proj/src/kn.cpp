#include "wordpred/kn.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "wordpred/io_util.hpp"

namespace wordpred {

namespace {

constexpr double kDiscountCap = 1.0 - 1e-6;
constexpr double kFallbackDiscount = 0.75;

double clamp_discount(double d) { return std::clamp(d, 0.0, kDiscountCap); }

}  // namespace

Discounts estimate_discounts(const BigramCounts& counts) {
  if (counts.empty()) throw std::invalid_argument("estimate_discounts: no data");

  std::uint64_t n[5] = {0, 0, 0, 0, 0};
  for (const auto& [key, c] : counts.pairs()) {
    if (c >= 1 && c <= 4) ++n[c];
  }

  Discounts d;
  if (n[1] == 0 || n[2] == 0 || n[3] == 0 || n[4] == 0) {
    d.d1 = d.d2 = d.d3plus = kFallbackDiscount;
    d.fallback = true;
    return d;
  }

  const double y = static_cast<double>(n[1]) / (n[1] + 2.0 * n[2]);
  d.d1 = clamp_discount(1.0 - 2.0 * y * n[2] / n[1]);
  d.d2 = clamp_discount(2.0 - 3.0 * y * n[3] / n[2]);
  d.d3plus = clamp_discount(3.0 - 4.0 * y * n[4] / n[3]);
  d.fallback = false;
  return d;
}

KNModel KNModel::fit(const BigramCounts& counts, const Vocabulary& vocab) {
  KNModel m;
  m.direction_ = counts.direction();
  m.discounts_ = estimate_discounts(counts);

  // Model-local ids are assigned in sorted word order so fits are
  // reproducible regardless of hash iteration.
  std::map<std::string, std::uint32_t> order;
  for (const auto& [key, c] : counts.pairs()) {
    order.emplace(vocab.word(BigramCounts::packed_context(key)), 0);
    order.emplace(vocab.word(BigramCounts::packed_word(key)), 0);
  }
  m.words_.reserve(order.size());
  for (auto& [w, id] : order) {
    id = static_cast<std::uint32_t>(m.words_.size());
    m.words_.push_back(w);
    m.id_of_.emplace(w, id);
  }

  std::vector<std::uint64_t> keys;
  std::vector<std::uint64_t> vals;
  keys.reserve(counts.pair_types());
  vals.reserve(counts.pair_types());
  for (const auto& [key, c] : counts.pairs()) {
    const std::uint32_t ctx = order.at(vocab.word(BigramCounts::packed_context(key)));
    const std::uint32_t w = order.at(vocab.word(BigramCounts::packed_word(key)));
    keys.push_back(BigramCounts::pack(ctx, w));
    vals.push_back(c);
  }
  m.build_context_tables(keys, vals);
  return m;
}

void KNModel::build_context_tables(const std::vector<std::uint64_t>& packed_keys,
                                   const std::vector<std::uint64_t>& pair_counts) {
  cont_count_.assign(words_.size(), 0);
  total_pair_types_ = packed_keys.size();
  contexts_.clear();

  for (std::size_t i = 0; i < packed_keys.size(); ++i) {
    const std::uint32_t ctx = BigramCounts::packed_context(packed_keys[i]);
    const std::uint32_t w = BigramCounts::packed_word(packed_keys[i]);
    const std::uint64_t c = pair_counts[i];
    auto& table = contexts_[ctx];
    table.total += c;
    table.counts.emplace(w, c);
    ++cont_count_[w];
  }

  for (auto& [ctx, table] : contexts_) {
    std::uint64_t n1 = 0, n2 = 0, n3p = 0;
    for (const auto& [w, c] : table.counts) {
      if (c == 1)
        ++n1;
      else if (c == 2)
        ++n2;
      else
        ++n3p;
    }
    table.gamma = (discounts_.d1 * n1 + discounts_.d2 * n2 + discounts_.d3plus * n3p) /
                  static_cast<double>(table.total);
  }
}

double KNModel::cond_prob_ids(std::uint32_t word, std::uint32_t context) const {
  const double p_cont =
      static_cast<double>(cont_count_[word]) / static_cast<double>(total_pair_types_);
  auto ctx_it = contexts_.find(context);
  if (ctx_it == contexts_.end()) return p_cont;

  const ContextTable& table = ctx_it->second;
  double base = 0.0;
  auto cnt_it = table.counts.find(word);
  if (cnt_it != table.counts.end()) {
    const std::uint64_t c = cnt_it->second;
    const double d = c == 1 ? discounts_.d1 : c == 2 ? discounts_.d2 : discounts_.d3plus;
    base = std::max(static_cast<double>(c) - d, 0.0) / static_cast<double>(table.total);
  }
  return base + table.gamma * p_cont;
}

double KNModel::cond_prob(const std::string& word, const std::string& context) const {
  auto w_it = id_of_.find(word);
  if (w_it == id_of_.end() || cont_count_[w_it->second] == 0)
    throw std::out_of_range("cond_prob: word not predictable by model: " + word);
  auto c_it = id_of_.find(context);
  if (c_it == id_of_.end())
    throw std::out_of_range("cond_prob: context unknown to model: " + context);
  return cond_prob_ids(w_it->second, c_it->second);
}

double KNModel::log2_cond_prob(const std::string& word, const std::string& context) const {
  return std::log2(cond_prob(word, context));
}

bool KNModel::has_word(const std::string& word) const { return id_of_.count(word) > 0; }

bool KNModel::is_outcome(const std::string& word) const {
  auto it = id_of_.find(word);
  return it != id_of_.end() && cont_count_[it->second] > 0;
}

std::vector<std::string> KNModel::outcome_words() const {
  std::vector<std::string> out;
  for (std::uint32_t i = 0; i < words_.size(); ++i) {
    if (cont_count_[i] > 0) out.push_back(words_[i]);
  }
  return out;
}

std::vector<std::string> KNModel::known_contexts() const {
  std::vector<std::string> out;
  out.reserve(contexts_.size());
  for (const auto& [ctx, table] : contexts_) out.push_back(words_[ctx]);
  std::sort(out.begin(), out.end());
  return out;
}

double KNModel::continuation_prob(const std::string& word) const {
  auto it = id_of_.find(word);
  if (it == id_of_.end()) throw std::out_of_range("continuation_prob: unknown word: " + word);
  return static_cast<double>(cont_count_[it->second]) / static_cast<double>(total_pair_types_);
}

// Model files are TSV with three sections: a header of scalar fields, the
// per-word continuation counts, and the adjusted bigram counts the
// conditional tables are rebuilt from. Probabilities round-trip bit-exactly
// because only integers and shortest-round-trip doubles are written.
void KNModel::save(const std::filesystem::path& path) const {
  std::string out;
  out += "kn_bigram\t1\n";
  out += std::string("direction\t") + direction_name(direction_) + "\n";
  out += "d1\t" + format_double(discounts_.d1) + "\n";
  out += "d2\t" + format_double(discounts_.d2) + "\n";
  out += "d3plus\t" + format_double(discounts_.d3plus) + "\n";
  out += std::string("fallback\t") + (discounts_.fallback ? "1" : "0") + "\n";
  out += "words\t" + std::to_string(words_.size()) + "\n";
  for (std::uint32_t i = 0; i < words_.size(); ++i) {
    out += words_[i] + "\t" + std::to_string(cont_count_[i]) + "\n";
  }

  std::vector<std::uint64_t> keys;
  for (const auto& [ctx, table] : contexts_) {
    for (const auto& [w, c] : table.counts) keys.push_back(BigramCounts::pack(ctx, w));
  }
  std::sort(keys.begin(), keys.end());
  out += "pairs\t" + std::to_string(keys.size()) + "\n";
  for (std::uint64_t key : keys) {
    const std::uint32_t ctx = BigramCounts::packed_context(key);
    const std::uint32_t w = BigramCounts::packed_word(key);
    out += words_[ctx] + "\t" + words_[w] + "\t" +
           std::to_string(contexts_.at(ctx).counts.at(w)) + "\n";
  }
  write_file_text(path, out);
}

KNModel KNModel::load(const std::filesystem::path& path) {
  const std::string text = read_file_bytes(path);
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  auto fail = [&](const std::string& why) -> std::runtime_error {
    return std::runtime_error("model file " + path.string() + ": " + why);
  };

  std::size_t i = 0;
  auto field = [&](const std::string& name) -> std::string {
    if (i >= lines.size()) throw fail("truncated");
    auto cols = split_tab(lines[i]);
    if (cols.size() != 2 || cols[0] != name) throw fail("expected field " + name);
    ++i;
    return std::string(cols[1]);
  };

  if (field("kn_bigram") != "1") throw fail("unsupported version");
  KNModel m;
  m.direction_ = direction_from_name(field("direction"));
  m.discounts_.d1 = std::stod(field("d1"));
  m.discounts_.d2 = std::stod(field("d2"));
  m.discounts_.d3plus = std::stod(field("d3plus"));
  m.discounts_.fallback = field("fallback") == "1";

  const std::size_t n_words = std::stoull(field("words"));
  std::vector<std::uint64_t> stored_cont(n_words);
  for (std::size_t w = 0; w < n_words; ++w) {
    if (i >= lines.size()) throw fail("truncated word table");
    auto cols = split_tab(lines[i++]);
    if (cols.size() != 2) throw fail("bad word row");
    m.id_of_.emplace(std::string(cols[0]), static_cast<std::uint32_t>(m.words_.size()));
    m.words_.emplace_back(cols[0]);
    stored_cont[w] = std::stoull(std::string(cols[1]));
  }

  const std::size_t n_pairs = std::stoull(field("pairs"));
  std::vector<std::uint64_t> keys;
  std::vector<std::uint64_t> vals;
  keys.reserve(n_pairs);
  vals.reserve(n_pairs);
  for (std::size_t p = 0; p < n_pairs; ++p) {
    if (i >= lines.size()) throw fail("truncated pair table");
    auto cols = split_tab(lines[i++]);
    if (cols.size() != 3) throw fail("bad pair row");
    auto ctx = m.id_of_.find(std::string(cols[0]));
    auto w = m.id_of_.find(std::string(cols[1]));
    if (ctx == m.id_of_.end() || w == m.id_of_.end()) throw fail("pair row with unknown word");
    keys.push_back(BigramCounts::pack(ctx->second, w->second));
    vals.push_back(std::stoull(std::string(cols[2])));
  }

  m.build_context_tables(keys, vals);
  if (m.cont_count_ != stored_cont) throw fail("continuation counts disagree with pairs");
  return m;
}

}  // namespace wordpred
