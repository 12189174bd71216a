#include "wordpred/runner.hpp"

#include <algorithm>
#include <filesystem>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wordpred/acoustic.hpp"
#include "wordpred/analysis.hpp"
#include "wordpred/events.hpp"
#include "wordpred/io_util.hpp"
#include "wordpred/kn.hpp"

namespace fs = std::filesystem;

namespace wordpred {

namespace {

void require_input(const char* stage, const fs::path& path) {
  if (path.empty()) throw std::runtime_error(std::string(stage) + ": required path not configured");
  if (!fs::exists(path))
    throw std::runtime_error(std::string(stage) + ": missing input: " + path.string());
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

std::vector<Sentence> read_sentences(const fs::path& normalized_file) {
  return segment_sentences(split_lines(read_file_bytes(normalized_file)));
}

const char* dir_tag(Direction d) { return d == Direction::forward ? "fwd" : "bwd"; }

std::string counts_name(Direction d) { return std::string("counts_") + dir_tag(d) + ".tsv"; }
std::string events_name(Direction d) { return std::string("events_") + dir_tag(d) + ".tsv"; }
std::string ngram_name(Direction d) { return std::string("ngram_") + dir_tag(d) + ".tsv"; }
std::string ndl_name(Direction d) { return std::string("ndl_") + dir_tag(d) + ".tsv"; }

// Everything the predictor bundle needs, loaded from artifacts. Members own
// their data; Predictors only keeps references.
struct LoadedModels {
  Vocabulary vocab;
  BigramCounts counts_fwd{Direction::forward};
  BigramCounts counts_bwd{Direction::backward};
  KNModel kn_fwd;
  KNModel kn_bwd;
  WeightMatrix w_fwd;
  WeightMatrix w_bwd;
};

LoadedModels load_models(const fs::path& dir, const char* stage) {
  for (const char* name : {"vocabulary.tsv", "counts_fwd.tsv", "counts_bwd.tsv", "ngram_fwd.tsv",
                           "ngram_bwd.tsv", "ndl_fwd.tsv", "ndl_bwd.tsv"})
    require_input(stage, dir / name);
  LoadedModels m;
  m.vocab = Vocabulary::load(dir / "vocabulary.tsv");
  m.counts_fwd = BigramCounts::load(dir / "counts_fwd.tsv", m.vocab);
  m.counts_bwd = BigramCounts::load(dir / "counts_bwd.tsv", m.vocab);
  m.kn_fwd = KNModel::load(dir / "ngram_fwd.tsv");
  m.kn_bwd = KNModel::load(dir / "ngram_bwd.tsv");
  m.w_fwd = WeightMatrix::load(dir / "ndl_fwd.tsv");
  m.w_bwd = WeightMatrix::load(dir / "ndl_bwd.tsv");
  return m;
}

std::vector<fs::path> model_inputs(const fs::path& dir) {
  return {dir / "vocabulary.tsv", dir / "counts_fwd.tsv", dir / "counts_bwd.tsv",
          dir / "ngram_fwd.tsv",  dir / "ngram_bwd.tsv",  dir / "ndl_fwd.tsv",
          dir / "ndl_bwd.tsv"};
}

}  // namespace

RunnerConfig RunnerConfig::load(const fs::path& path) {
  using nlohmann::json;
  RunnerConfig cfg;
  cfg.config_path = path;
  const fs::path base = path.has_parent_path() ? path.parent_path() : fs::path(".");
  const auto resolve = [&](const std::string& s) {
    fs::path p(s);
    return p.is_absolute() ? p : base / p;
  };

  json j;
  try {
    j = json::parse(read_file_bytes(path));
  } catch (const json::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
  if (!j.is_object()) throw std::runtime_error(path.string() + ": config must be a JSON object");

  static const std::set<std::string> known = {
      "corpus_dir", "acoustic_table", "output_dir",       "subset_size",
      "min_doc_freq", "seed",         "directions",       "jobs",
      "learning",   "ndl_axis",       "informativity_weights", "frequency_total"};
  for (const auto& item : j.items()) {
    if (known.count(item.key()) == 0)
      throw std::runtime_error(path.string() + ": unknown config key: " + item.key());
  }

  try {
    if (j.contains("corpus_dir")) cfg.corpus_dir = resolve(j.at("corpus_dir").get<std::string>());
    if (j.contains("acoustic_table"))
      cfg.acoustic_table = resolve(j.at("acoustic_table").get<std::string>());
    if (j.contains("output_dir")) cfg.output_dir = resolve(j.at("output_dir").get<std::string>());
    if (j.contains("subset_size")) cfg.subset_size = j.at("subset_size").get<std::uint64_t>();
    if (j.contains("min_doc_freq")) cfg.min_doc_freq = j.at("min_doc_freq").get<std::uint64_t>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("jobs")) cfg.jobs = j.at("jobs").get<unsigned>();
    if (j.contains("directions")) {
      const std::string s = j.at("directions").get<std::string>();
      if (s == "fwd")
        cfg.directions = Directions::fwd;
      else if (s == "bwd")
        cfg.directions = Directions::bwd;
      else if (s == "both")
        cfg.directions = Directions::both;
      else
        throw std::runtime_error(path.string() + ": directions must be fwd, bwd or both, not " + s);
    }
    if (j.contains("learning")) {
      const json& l = j.at("learning");
      static const std::set<std::string> lkeys = {"alpha", "beta1", "beta2", "lambda"};
      for (const auto& item : l.items()) {
        if (lkeys.count(item.key()) == 0)
          throw std::runtime_error(path.string() + ": unknown learning key: " + item.key());
      }
      if (l.contains("alpha")) cfg.learning.alpha = l.at("alpha").get<double>();
      if (l.contains("beta1")) cfg.learning.beta1 = l.at("beta1").get<double>();
      if (l.contains("beta2")) cfg.learning.beta2 = l.at("beta2").get<double>();
      if (l.contains("lambda")) cfg.learning.lambda = l.at("lambda").get<double>();
    }
    if (j.contains("ndl_axis")) cfg.ndl_axis = axis_from_name(j.at("ndl_axis").get<std::string>());
    if (j.contains("informativity_weights")) {
      const std::string s = j.at("informativity_weights").get<std::string>();
      if (s == "counts")
        cfg.inf_weights = MetricsConfig::InfWeights::counts;
      else if (s == "softmax")
        cfg.inf_weights = MetricsConfig::InfWeights::softmax;
      else
        throw std::runtime_error(path.string() +
                                 ": informativity_weights must be counts or softmax, not " + s);
    }
    if (j.contains("frequency_total")) {
      const std::string s = j.at("frequency_total").get<std::string>();
      if (s == "training")
        cfg.freq_total_acoustic = false;
      else if (s == "acoustic")
        cfg.freq_total_acoustic = true;
      else
        throw std::runtime_error(path.string() +
                                 ": frequency_total must be training or acoustic, not " + s);
    }
  } catch (const json::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }

  if (cfg.subset_size == 0) throw std::runtime_error(path.string() + ": subset_size must be positive");
  if (cfg.jobs == 0) throw std::runtime_error(path.string() + ": jobs must be positive");
  cfg.learning.validate();

  const auto warn_default = [&](const std::string& field, const std::string& value,
                                const std::string& fallback) {
    cfg.warnings.push_back("config: " + field + " = " + value + " departs from the default " +
                           fallback);
  };
  if (cfg.subset_size != 10000)
    warn_default("subset_size", std::to_string(cfg.subset_size), "10000");
  if (cfg.min_doc_freq != 6) warn_default("min_doc_freq", std::to_string(cfg.min_doc_freq), "6");
  const LearningParams ref;
  if (cfg.learning.alpha != ref.alpha)
    warn_default("learning.alpha", format_double(cfg.learning.alpha), format_double(ref.alpha));
  if (cfg.learning.beta1 != ref.beta1)
    warn_default("learning.beta1", format_double(cfg.learning.beta1), format_double(ref.beta1));
  if (cfg.learning.beta2 != ref.beta2)
    warn_default("learning.beta2", format_double(cfg.learning.beta2), format_double(ref.beta2));
  if (cfg.learning.lambda != ref.lambda)
    warn_default("learning.lambda", format_double(cfg.learning.lambda), format_double(ref.lambda));
  return cfg;
}

Runner::Runner(RunnerConfig config, std::ostream& log) : config_(std::move(config)), log_(log) {}

const std::vector<std::string>& Runner::stage_names() {
  static const std::vector<std::string> names = {"preprocess", "vocab",   "counts",
                                                 "train-ngram", "train-ndl", "metrics",
                                                 "annotate",   "analyze", "all"};
  return names;
}

void Runner::run(const std::string& stage) {
  if (stage == "preprocess") return preprocess();
  if (stage == "vocab") return vocab();
  if (stage == "counts") return counts();
  if (stage == "train-ngram") return train_ngram();
  if (stage == "train-ndl") return train_ndl();
  if (stage == "metrics") return metrics();
  if (stage == "annotate") return annotate();
  if (stage == "analyze") return analyze();
  if (stage == "all") return all();
  throw std::invalid_argument("unknown stage: " + stage);
}

bool Runner::fresh(const std::vector<fs::path>& outputs, const std::vector<fs::path>& inputs) const {
  std::error_code ec;
  fs::file_time_type newest_in = fs::file_time_type::min();
  std::vector<fs::path> all_inputs = inputs;
  if (!config_.config_path.empty()) all_inputs.push_back(config_.config_path);
  for (const fs::path& in : all_inputs) {
    const auto t = fs::last_write_time(in, ec);
    if (ec) return false;
    newest_in = std::max(newest_in, t);
  }
  for (const fs::path& out : outputs) {
    const auto t = fs::last_write_time(out, ec);
    if (ec) return false;
    if (t < newest_in) return false;
  }
  return true;
}

std::vector<fs::path> Runner::corpus_files() const {
  require_input("preprocess", config_.corpus_dir);
  if (!fs::is_directory(config_.corpus_dir))
    throw std::runtime_error("preprocess: not a directory: " + config_.corpus_dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(config_.corpus_dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty())
    throw std::runtime_error("preprocess: corpus directory is empty: " + config_.corpus_dir.string());
  return files;
}

std::vector<fs::path> Runner::normalized_files(const char* stage) const {
  const fs::path dir = out("normalized");
  if (!fs::is_directory(dir))
    throw std::runtime_error(std::string(stage) + ": missing input: " + dir.string() +
                             " (run preprocess first)");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty())
    throw std::runtime_error(std::string(stage) + ": no normalized documents in " + dir.string());
  return files;
}

std::vector<Direction> Runner::wanted_directions() const {
  switch (config_.directions) {
    case RunnerConfig::Directions::fwd:
      return {Direction::forward};
    case RunnerConfig::Directions::bwd:
      return {Direction::backward};
    case RunnerConfig::Directions::both:
      break;
  }
  return {Direction::forward, Direction::backward};
}

void Runner::require_both_directions(const char* stage) const {
  if (config_.directions != RunnerConfig::Directions::both)
    throw std::runtime_error(std::string(stage) + ": requires directions = both");
}

MetricsConfig Runner::metrics_config(const char* stage) const {
  MetricsConfig mc;
  mc.ndl_axis = config_.ndl_axis;
  mc.inf_weights = config_.inf_weights;
  if (config_.freq_total_acoustic) {
    require_input(stage, config_.acoustic_table);
    const AcousticCorpus corpus = load_acoustic_corpus(config_.acoustic_table);
    std::uint64_t words = 0;
    for (const AcousticToken& tok : corpus.tokens)
      if (!tok.is_pause) ++words;
    mc.freq_total_override = words;
  }
  return mc;
}

void Runner::preprocess() {
  const auto files = corpus_files();
  const fs::path dir = out("normalized");
  std::vector<fs::path> outputs;
  outputs.reserve(files.size());
  for (const fs::path& f : files) outputs.push_back(dir / f.filename());
  if (fresh(outputs, files)) {
    log_ << "preprocess: up to date (" << files.size() << " files)\n";
    return;
  }
  fs::create_directories(dir);
  std::uint64_t total_lines = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const auto lines = normalize_text(read_file_bytes(files[i]));
    std::string text;
    for (const std::string& line : lines) {
      text += line;
      text += '\n';
    }
    write_file_text(outputs[i], text);
    total_lines += lines.size();
  }
  log_ << "preprocess: " << files.size() << " files, " << total_lines << " lines\n";
}

void Runner::vocab() {
  const auto files = normalized_files("vocab");
  const fs::path vocab_path = out("vocabulary.tsv");
  if (fresh({vocab_path}, files)) {
    log_ << "vocab: up to date\n";
    return;
  }
  VocabularyBuilder builder;
  for (const fs::path& f : files) builder.add_document(read_sentences(f));
  const Vocabulary v = builder.build(config_.min_doc_freq);
  v.save(vocab_path);
  log_ << "vocab: " << files.size() << " documents, " << v.size() << " words, "
       << v.total_tokens() << " tokens\n";
}

void Runner::counts() {
  const auto files = normalized_files("counts");
  const fs::path vocab_path = out("vocabulary.tsv");
  require_input("counts", vocab_path);

  std::vector<fs::path> inputs = files;
  inputs.push_back(vocab_path);
  std::vector<fs::path> outputs = {out("subset.txt")};
  for (Direction d : wanted_directions()) {
    outputs.push_back(out(counts_name(d)));
    outputs.push_back(out(events_name(d)));
  }
  if (fresh(outputs, inputs)) {
    log_ << "counts: up to date\n";
    return;
  }

  // Seeded partial Fisher-Yates, then back to name order so document
  // processing stays deterministic and corpus-ordered.
  std::vector<std::string> names;
  names.reserve(files.size());
  for (const fs::path& f : files) names.push_back(f.filename().string());
  const std::size_t take = static_cast<std::size_t>(
      std::min<std::uint64_t>(config_.subset_size, names.size()));
  SplitMix64 rng(config_.seed);
  for (std::size_t i = 0; i < take; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.next_below(names.size() - i));
    std::swap(names[i], names[j]);
  }
  names.resize(take);
  std::sort(names.begin(), names.end());
  std::string subset_text;
  for (const std::string& name : names) {
    subset_text += name;
    subset_text += '\n';
  }
  write_file_text(out("subset.txt"), subset_text);

  std::vector<Sentence> sentences;
  for (const std::string& name : names) {
    auto doc = read_sentences(out("normalized") / name);
    sentences.insert(sentences.end(), std::make_move_iterator(doc.begin()),
                     std::make_move_iterator(doc.end()));
  }
  const Vocabulary v = Vocabulary::load(vocab_path);
  for (Direction d : wanted_directions()) {
    const BigramCounts bigrams = count_bigrams(sentences, v, d);
    bigrams.save(out(counts_name(d)), v);
    const auto events = extract_events(sentences, v, d);
    save_events(out(events_name(d)), events, v, d);
    log_ << "counts: " << dir_tag(d) << " " << bigrams.pair_types() << " pair types, "
         << bigrams.total_pairs() << " pairs, " << events.size() << " events\n";
  }
  log_ << "counts: " << take << " of " << files.size() << " files, " << sentences.size()
       << " sentences\n";
}

void Runner::train_ngram() {
  const fs::path vocab_path = out("vocabulary.tsv");
  std::vector<fs::path> inputs = {vocab_path};
  std::vector<fs::path> outputs;
  for (Direction d : wanted_directions()) {
    inputs.push_back(out(counts_name(d)));
    outputs.push_back(out(ngram_name(d)));
  }
  if (fresh(outputs, inputs)) {
    log_ << "train-ngram: up to date\n";
    return;
  }
  require_input("train-ngram", vocab_path);
  const Vocabulary v = Vocabulary::load(vocab_path);
  for (Direction d : wanted_directions()) {
    require_input("train-ngram", out(counts_name(d)));
    const BigramCounts bigrams = BigramCounts::load(out(counts_name(d)), v);
    const KNModel model = KNModel::fit(bigrams, v);
    model.save(out(ngram_name(d)));
    const Discounts& disc = model.discounts();
    log_ << "train-ngram: " << dir_tag(d) << " " << model.words().size() << " words, discounts "
         << (disc.fallback
                 ? "fallback " + format_double(disc.d1)
                 : format_double(disc.d1) + "/" + format_double(disc.d2) + "/" +
                       format_double(disc.d3plus))
         << "\n";
  }
}

void Runner::train_ndl() {
  const fs::path vocab_path = out("vocabulary.tsv");
  std::vector<fs::path> inputs = {vocab_path};
  std::vector<fs::path> outputs;
  for (Direction d : wanted_directions()) {
    inputs.push_back(out(events_name(d)));
    outputs.push_back(out(ndl_name(d)));
  }
  if (fresh(outputs, inputs)) {
    log_ << "train-ndl: up to date\n";
    return;
  }
  require_input("train-ndl", vocab_path);
  const Vocabulary v = Vocabulary::load(vocab_path);
  std::vector<std::string> words;
  words.reserve(v.size());
  for (std::uint32_t id = 0; id < v.size(); ++id) words.push_back(v.word(id));
  for (Direction d : wanted_directions()) {
    require_input("train-ndl", out(events_name(d)));
    const auto events = load_events(out(events_name(d)), v);
    WeightMatrix m(words, words, config_.learning);
    m.train(events, config_.jobs);
    m.save(out(ndl_name(d)));
    log_ << "train-ndl: " << dir_tag(d) << " " << events.size() << " events, "
         << m.stored_cells() << " weights\n";
  }
}

void Runner::metrics() {
  require_both_directions("metrics");
  std::vector<fs::path> inputs = model_inputs(config_.output_dir);
  if (config_.freq_total_acoustic) inputs.push_back(config_.acoustic_table);
  const fs::path metrics_path = out("type_metrics.tsv");
  if (fresh({metrics_path}, inputs)) {
    log_ << "metrics: up to date\n";
    return;
  }
  const LoadedModels m = load_models(config_.output_dir, "metrics");
  const Predictors predictors(m.vocab, m.kn_fwd, m.kn_bwd, m.w_fwd, m.w_bwd, m.counts_fwd,
                              m.counts_bwd, metrics_config("metrics"));
  const auto rows = predictors.build_type_metrics();
  save_type_metrics(metrics_path, rows);
  log_ << "metrics: " << rows.size() << " word types\n";
}

void Runner::annotate() {
  require_both_directions("annotate");
  require_input("annotate", config_.acoustic_table);
  std::vector<fs::path> inputs = model_inputs(config_.output_dir);
  inputs.push_back(out("type_metrics.tsv"));
  inputs.push_back(config_.acoustic_table);
  const fs::path annotated_path = out("annotated.tsv");
  const fs::path filter_path = out("filter_counts.tsv");
  if (fresh({annotated_path, filter_path}, inputs)) {
    log_ << "annotate: up to date\n";
    return;
  }
  require_input("annotate", out("type_metrics.tsv"));
  const LoadedModels m = load_models(config_.output_dir, "annotate");
  const Predictors predictors(m.vocab, m.kn_fwd, m.kn_bwd, m.w_fwd, m.w_bwd, m.counts_fwd,
                              m.counts_bwd, metrics_config("annotate"));
  const auto type_rows = load_type_metrics(out("type_metrics.tsv"));

  const AcousticCorpus corpus = load_acoustic_corpus(config_.acoustic_table);
  for (const std::string& w : corpus.warnings) log_ << "annotate: " << w << "\n";
  const FilterResult filtered = filter_tokens(corpus.tokens, m.vocab);
  const FilterCounts& fc = filtered.counts;
  std::string counts_text = "rule\tcount\n";
  const auto add_rule = [&](const char* rule, std::uint64_t n) {
    counts_text += std::string(rule) + "\t" + std::to_string(n) + "\n";
  };
  add_rule("pause_markers", fc.pause_markers);
  add_rule("pause_adjacent", fc.pause_adjacent);
  add_rule("utterance_edge", fc.utterance_edge);
  add_rule("nonpositive_duration", fc.nonpositive_duration);
  add_rule("over_max_duration", fc.over_max_duration);
  add_rule("out_of_vocabulary", fc.out_of_vocabulary);
  add_rule("survivors", fc.survivors);
  write_file_text(filter_path, counts_text);

  const AnnotatedTable table =
      wordpred::annotate(filtered.kept, corpus.control_columns, type_rows, predictors);
  save_annotated(annotated_path, table);
  log_ << "annotate: " << corpus.tokens.size() << " tokens in, " << fc.survivors
       << " survive the filters\n";
}

void Runner::analyze() {
  const fs::path annotated_path = out("annotated.tsv");
  require_input("analyze", annotated_path);
  const fs::path corr_path = out("correlations.tsv");
  const fs::path models_path = out("model_comparison.tsv");
  const fs::path export_path = out("regression_export.tsv");
  if (fresh({corr_path, models_path, export_path}, {annotated_path})) {
    log_ << "analyze: up to date\n";
    return;
  }
  const DataTable table = DataTable::read_tsv(annotated_path);

  std::vector<std::string> corr_cols;
  std::vector<std::string> wanted = {"response"};
  wanted.insert(wanted.end(), metric_columns().begin(), metric_columns().end());
  for (const std::string& name : wanted) {
    if (!table.has_column(name)) {
      log_ << "analyze: no column " << name << ", skipped in correlations\n";
      continue;
    }
    std::vector<double> present;
    for (const auto& v : table.numeric(name))
      if (v.has_value()) present.push_back(*v);
    const bool constant =
        !present.empty() &&
        std::all_of(present.begin(), present.end(), [&](double v) { return v == present.front(); });
    if (present.size() < 2 || constant) {
      log_ << "analyze: column " << name << " is missing or constant, skipped in correlations\n";
      continue;
    }
    corr_cols.push_back(name);
  }
  save_correlation_matrix(corr_path, pearson_matrix(table, corr_cols));

  // Controls: every column that is not an identifier, the response, or a
  // predictor. Only numeric ones enter the OLS proxy; categorical ones reach
  // external software through the regression export.
  std::unordered_set<std::string> fixed = {"speaker_id", "utterance_id", "position", "word",
                                           "response"};
  for (const std::string& name : metric_columns()) fixed.insert(name);
  std::vector<std::string> controls;
  for (const std::string& name : table.columns()) {
    if (fixed.count(name) > 0) continue;
    if (table.looks_numeric(name))
      controls.push_back(name);
    else
      log_ << "analyze: categorical control " << name << " left to the regression export\n";
  }
  const auto with_controls = [&](std::vector<std::string> preds) {
    preds.insert(preds.end(), controls.begin(), controls.end());
    return preds;
  };
  const std::vector<ModelSpec> specs = {
      {"baseline", controls},
      {"ngram", with_controls({"log_freq", "cp_prev", "cp_foll", "inf_prev", "inf_foll"})},
      {"ndl_traditional", with_controls({"prior_prev", "prior_foll", "act_prev", "act_foll"})},
      {"ndl_probabilistic", with_controls({"prior_prev", "prior_foll", "ndl_cp_prev",
                                           "ndl_cp_foll", "ndl_inf_prev", "ndl_inf_foll"})},
  };
  const ModelComparison cmp = compare_models("response", specs, table);
  for (const std::string& w : cmp.warnings) log_ << "analyze: " << w << "\n";
  save_model_comparison(models_path, cmp);

  for (const std::string& w : export_regression_table(table, export_path))
    log_ << "analyze: " << w << "\n";
  log_ << "analyze: " << table.n_rows() << " rows, " << corr_cols.size() << " correlated columns, "
       << cmp.fits.size() << " models\n";
}

void Runner::all() {
  preprocess();
  vocab();
  counts();
  train_ngram();
  train_ndl();
  if (config_.directions != RunnerConfig::Directions::both) {
    log_ << "all: single-direction build, stopping after train-ndl\n";
    return;
  }
  metrics();
  if (config_.acoustic_table.empty()) {
    log_ << "all: no acoustic table configured, stopping after metrics\n";
    return;
  }
  annotate();
  analyze();
}

}  // namespace wordpred
