#include "wordpred/rw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "wordpred/io_util.hpp"

namespace wordpred {

void LearningParams::validate() const {
  if (!(alpha > 0.0) || !(beta1 > 0.0) || !(beta2 > 0.0) || !(lambda > 0.0))
    throw std::invalid_argument("learning params: alpha, beta1, beta2, lambda must be positive");
  if (!(alpha * beta1 < 1.0) || !(alpha * beta2 < 1.0))
    throw std::invalid_argument("learning params: alpha*beta must be below 1");
}

WeightMatrix::WeightMatrix(std::vector<std::string> cue_set, std::vector<std::string> outcome_set,
                           LearningParams params)
    : cues_(std::move(cue_set)), outcomes_(std::move(outcome_set)), params_(params) {
  params_.validate();
  if (cues_.empty() || outcomes_.empty())
    throw std::invalid_argument("weight matrix needs at least one cue and one outcome");
  cue_id_.reserve(cues_.size());
  for (std::uint32_t i = 0; i < cues_.size(); ++i) {
    if (!cue_id_.emplace(cues_[i], i).second)
      throw std::invalid_argument("duplicate cue word: " + cues_[i]);
  }
  outcome_id_.reserve(outcomes_.size());
  for (std::uint32_t i = 0; i < outcomes_.size(); ++i) {
    if (!outcome_id_.emplace(outcomes_[i], i).second)
      throw std::invalid_argument("duplicate outcome word: " + outcomes_[i]);
  }
  rows_.resize(cues_.size());
}

WeightMatrix WeightMatrix::from_cells(
    std::vector<std::string> cue_set, std::vector<std::string> outcome_set, LearningParams params,
    const std::vector<std::tuple<std::uint32_t, std::uint32_t, double>>& cells,
    std::uint64_t events_seen) {
  WeightMatrix m(std::move(cue_set), std::move(outcome_set), params);
  for (const auto& [cue, outcome, w] : cells) {
    if (cue >= m.n_cues() || outcome >= m.n_outcomes())
      throw std::out_of_range("weight cell outside declared sets");
    m.rows_[cue][outcome] = w;
  }
  m.events_seen_ = events_seen;
  return m;
}

void WeightMatrix::check_event_ids(const std::vector<Event>& events) const {
  for (const Event& ev : events) {
    for (std::uint32_t c : ev.cues)
      if (c >= n_cues()) throw std::out_of_range("unknown cue id " + std::to_string(c));
    for (std::uint32_t o : ev.outcomes)
      if (o >= n_outcomes()) throw std::out_of_range("unknown outcome id " + std::to_string(o));
  }
}

void WeightMatrix::train_columns(const std::vector<Event>& events, Rows& rows, unsigned modulus,
                                 unsigned residue) const {
  const double ab1 = params_.alpha * params_.beta1;
  const double ab2 = params_.alpha * params_.beta2;
  const double lambda = params_.lambda;

  // Epoch-stamped scratch: collects each event's touched outcomes without
  // clearing a vocabulary-sized buffer per event.
  std::vector<std::uint64_t> stamp(n_outcomes(), 0);
  std::uint64_t epoch = 0;
  std::vector<std::uint32_t> touched;

  for (const Event& ev : events) {
    ++epoch;
    touched.clear();
    for (std::uint32_t o : ev.outcomes) {
      if (o % modulus != residue) continue;
      if (stamp[o] != epoch) {
        stamp[o] = epoch;
        touched.push_back(o);
      }
    }
    for (std::uint32_t c : ev.cues) {
      for (const auto& [o, w] : rows[c]) {
        if (stamp[o] != epoch) {
          stamp[o] = epoch;
          touched.push_back(o);
        }
      }
    }

    for (std::uint32_t o : touched) {
      double a = 0.0;
      for (std::uint32_t c : ev.cues) {
        auto it = rows[c].find(o);
        if (it != rows[c].end()) a += it->second;
      }
      const bool present =
          std::find(ev.outcomes.begin(), ev.outcomes.end(), o) != ev.outcomes.end();
      const double delta = present ? ab1 * (lambda - a) : ab2 * (0.0 - a);
      for (std::uint32_t c : ev.cues) rows[c][o] += delta;
    }
  }
}

void WeightMatrix::train(const std::vector<Event>& events, unsigned jobs) {
  check_event_ids(events);
  if (jobs <= 1) {
    train_columns(events, rows_, 1, 0);
  } else {
    jobs = std::min<unsigned>(jobs, n_outcomes());
    std::vector<Rows> partitions(jobs, Rows(n_cues()));
    for (std::uint32_t c = 0; c < n_cues(); ++c) {
      for (const auto& [o, w] : rows_[c]) partitions[o % jobs][c].emplace(o, w);
    }
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (unsigned j = 0; j < jobs; ++j) {
      workers.emplace_back(
          [&, j] { train_columns(events, partitions[j], jobs, j); });
    }
    for (auto& t : workers) t.join();
    for (std::uint32_t c = 0; c < n_cues(); ++c) {
      rows_[c].clear();
      for (unsigned j = 0; j < jobs; ++j) {
        for (const auto& [o, w] : partitions[j][c]) rows_[c].emplace(o, w);
      }
    }
  }
  events_seen_ += events.size();
}

double WeightMatrix::weight(std::uint32_t cue, std::uint32_t outcome) const {
  const auto& row = rows_.at(cue);
  auto it = row.find(outcome);
  return it == row.end() ? 0.0 : it->second;
}

std::uint32_t WeightMatrix::cue_id(const std::string& word) const {
  auto it = cue_id_.find(word);
  if (it == cue_id_.end()) throw std::out_of_range("unknown cue: " + word);
  return it->second;
}

std::uint32_t WeightMatrix::outcome_id(const std::string& word) const {
  auto it = outcome_id_.find(word);
  if (it == outcome_id_.end()) throw std::out_of_range("unknown outcome: " + word);
  return it->second;
}

double WeightMatrix::activation(const std::string& cue, const std::string& outcome) const {
  return weight(cue_id(cue), outcome_id(outcome));
}

double WeightMatrix::prior_id(std::uint32_t outcome) const {
  if (outcome >= n_outcomes()) throw std::out_of_range("unknown outcome id");
  std::vector<double> terms;
  for (std::uint32_t c = 0; c < n_cues(); ++c) {
    auto it = rows_[c].find(outcome);
    if (it != rows_[c].end()) terms.push_back(std::fabs(it->second));
  }
  return pairwise_sum(terms);
}

double WeightMatrix::prior(const std::string& outcome) const {
  return prior_id(outcome_id(outcome));
}

std::size_t WeightMatrix::stored_cells() const {
  std::size_t n = 0;
  for (const auto& row : rows_) n += row.size();
  return n;
}

void WeightMatrix::save(const std::filesystem::path& path) const {
  std::string out;
  out += "ndl_weights\t1\n";
  out += "alpha\t" + format_double(params_.alpha) + "\n";
  out += "beta1\t" + format_double(params_.beta1) + "\n";
  out += "beta2\t" + format_double(params_.beta2) + "\n";
  out += "lambda\t" + format_double(params_.lambda) + "\n";
  out += "events_seen\t" + std::to_string(events_seen_) + "\n";
  out += "cues\t" + std::to_string(cues_.size()) + "\n";
  for (const auto& w : cues_) out += w + "\n";
  out += "outcomes\t" + std::to_string(outcomes_.size()) + "\n";
  for (const auto& w : outcomes_) out += w + "\n";
  out += "cells\t" + std::to_string(stored_cells()) + "\n";
  for (std::uint32_t c = 0; c < n_cues(); ++c) {
    std::vector<std::uint32_t> outs;
    outs.reserve(rows_[c].size());
    for (const auto& [o, w] : rows_[c]) outs.push_back(o);
    std::sort(outs.begin(), outs.end());
    for (std::uint32_t o : outs) {
      out += std::to_string(c) + "\t" + std::to_string(o) + "\t" +
             format_double(rows_[c].at(o)) + "\n";
    }
  }
  write_file_text(path, out);
}

WeightMatrix WeightMatrix::load(const std::filesystem::path& path) {
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
    return std::runtime_error("weight file " + path.string() + ": " + why);
  };
  std::size_t i = 0;
  auto field = [&](const std::string& name) -> std::string {
    if (i >= lines.size()) throw fail("truncated");
    auto cols = split_tab(lines[i]);
    if (cols.size() != 2 || cols[0] != name) throw fail("expected field " + name);
    ++i;
    return cols[1];
  };

  if (field("ndl_weights") != "1") throw fail("unsupported version");
  LearningParams params;
  params.alpha = std::stod(field("alpha"));
  params.beta1 = std::stod(field("beta1"));
  params.beta2 = std::stod(field("beta2"));
  params.lambda = std::stod(field("lambda"));
  const std::uint64_t events_seen = std::stoull(field("events_seen"));

  const std::size_t n_cues = std::stoull(field("cues"));
  std::vector<std::string> cue_set;
  cue_set.reserve(n_cues);
  for (std::size_t c = 0; c < n_cues; ++c) {
    if (i >= lines.size()) throw fail("truncated cue list");
    cue_set.push_back(lines[i++]);
  }
  const std::size_t n_outcomes = std::stoull(field("outcomes"));
  std::vector<std::string> outcome_set;
  outcome_set.reserve(n_outcomes);
  for (std::size_t o = 0; o < n_outcomes; ++o) {
    if (i >= lines.size()) throw fail("truncated outcome list");
    outcome_set.push_back(lines[i++]);
  }

  const std::size_t n_cells = std::stoull(field("cells"));
  std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> cells;
  cells.reserve(n_cells);
  for (std::size_t k = 0; k < n_cells; ++k) {
    if (i >= lines.size()) throw fail("truncated cell table");
    auto cols = split_tab(lines[i++]);
    if (cols.size() != 3) throw fail("bad cell row");
    cells.emplace_back(static_cast<std::uint32_t>(std::stoul(cols[0])),
                       static_cast<std::uint32_t>(std::stoul(cols[1])), std::stod(cols[2]));
  }
  return from_cells(std::move(cue_set), std::move(outcome_set), params, cells, events_seen);
}

LogSoftmax::LogSoftmax(const WeightMatrix& weights, Axis axis) : weights_(weights), axis_(axis) {
  if (weights.n_cues() == 0 || weights.n_outcomes() == 0)
    throw std::invalid_argument("log_softmax needs at least one cue and one outcome");

  const bool over_outcomes = axis == Axis::over_outcomes;
  const std::uint32_t n_fixed = over_outcomes ? weights.n_cues() : weights.n_outcomes();
  const std::uint32_t axis_len = over_outcomes ? weights.n_outcomes() : weights.n_cues();

  // Axis slices as (index-along-axis, weight) lists, ascending index. Rows
  // come straight from the matrix; columns are gathered in one pass (the cue
  // loop ascends, so each column list ends up sorted).
  std::vector<std::vector<double>> slice_weights(n_fixed);
  if (over_outcomes) {
    for (std::uint32_t c = 0; c < n_fixed; ++c) {
      const auto& row = weights.rows()[c];
      std::vector<std::uint32_t> outs;
      outs.reserve(row.size());
      for (const auto& [o, w] : row) outs.push_back(o);
      std::sort(outs.begin(), outs.end());
      slice_weights[c].reserve(outs.size());
      for (std::uint32_t o : outs) slice_weights[c].push_back(row.at(o));
    }
  } else {
    // The cue loop ascends and each cue holds at most one cell per column,
    // so every column list comes out sorted by cue.
    for (std::uint32_t c = 0; c < weights.n_cues(); ++c) {
      for (const auto& [o, w] : weights.rows()[c]) slice_weights[o].push_back(w);
    }
  }

  max_.resize(n_fixed);
  log_sum_.resize(n_fixed);
  std::vector<double> terms;
  for (std::uint32_t f = 0; f < n_fixed; ++f) {
    const auto& vals = slice_weights[f];
    const std::size_t implicit = axis_len - vals.size();
    double m = implicit > 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    for (double w : vals) m = std::max(m, w);
    terms.clear();
    terms.reserve(vals.size());
    for (double w : vals) terms.push_back(std::exp(w - m));
    double s = pairwise_sum(terms);
    if (implicit > 0) s += static_cast<double>(implicit) * std::exp(0.0 - m);
    max_[f] = m;
    log_sum_[f] = std::log(s);
  }
}

double LogSoftmax::log_prob(std::uint32_t cue, std::uint32_t outcome) const {
  const std::uint32_t f = axis_ == Axis::over_outcomes ? cue : outcome;
  return (weights_.weight(cue, outcome) - max_[f]) - log_sum_[f];
}

double LogSoftmax::log2_prob(std::uint32_t cue, std::uint32_t outcome) const {
  return log_prob(cue, outcome) / std::numbers::ln2;
}

const char* axis_name(LogSoftmax::Axis axis) {
  return axis == LogSoftmax::Axis::over_outcomes ? "over_outcomes" : "over_cues";
}

LogSoftmax::Axis axis_from_name(const std::string& name) {
  if (name == "over_outcomes") return LogSoftmax::Axis::over_outcomes;
  if (name == "over_cues") return LogSoftmax::Axis::over_cues;
  throw std::invalid_argument("unknown softmax axis: " + name);
}

}  // namespace wordpred
