#pragma once

// Shared test fixtures: the three-sentence toy corpus, the hand-enumerated
// acoustic filter table, and a self-cleaning temp directory.

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "wordpred/counts.hpp"
#include "wordpred/events.hpp"
#include "wordpred/metrics.hpp"
#include "wordpred/text.hpp"
#include "wordpred/vocab.hpp"

namespace fixtures {

// Toy corpus: "a b", "a b", "a c". Forward counts: (<s>,a)=3, (a,b)=2,
// (a,c)=1, (b,</s>)=2, (c,</s>)=1; 9 pairs, 5 pair types.
inline std::vector<wordpred::Sentence> toy_sentences() {
  using wordpred::kSentEnd;
  using wordpred::kSentStart;
  return {
      {{kSentStart, "a", "b", kSentEnd}},
      {{kSentStart, "a", "b", kSentEnd}},
      {{kSentStart, "a", "c", kSentEnd}},
  };
}

inline wordpred::Vocabulary toy_vocab() {
  return wordpred::Vocabulary::build({toy_sentences()}, 1);
}

// Everything the predictor bundle needs, all fit on the toy corpus. Weight
// matrices span the whole vocabulary in id order, mirroring the pipeline.
struct ToyModels {
  wordpred::Vocabulary vocab = toy_vocab();
  wordpred::BigramCounts counts_fwd{wordpred::Direction::forward};
  wordpred::BigramCounts counts_bwd{wordpred::Direction::backward};
  wordpred::KNModel kn_fwd;
  wordpred::KNModel kn_bwd;
  wordpred::WeightMatrix w_fwd;
  wordpred::WeightMatrix w_bwd;

  explicit ToyModels(wordpred::LearningParams params = {}) {
    using wordpred::Direction;
    const auto sentences = toy_sentences();
    counts_fwd = wordpred::count_bigrams(sentences, vocab, Direction::forward);
    counts_bwd = wordpred::count_bigrams(sentences, vocab, Direction::backward);
    kn_fwd = wordpred::KNModel::fit(counts_fwd, vocab);
    kn_bwd = wordpred::KNModel::fit(counts_bwd, vocab);

    std::vector<std::string> words;
    for (std::uint32_t i = 0; i < vocab.size(); ++i) words.push_back(vocab.word(i));
    w_fwd = wordpred::WeightMatrix(words, words, params);
    w_bwd = wordpred::WeightMatrix(words, words, params);
    w_fwd.train(wordpred::extract_events(sentences, vocab, Direction::forward));
    w_bwd.train(wordpred::extract_events(sentences, vocab, Direction::backward));
  }

  wordpred::Predictors predictors(wordpred::MetricsConfig config = {}) const {
    return wordpred::Predictors(vocab, kn_fwd, kn_bwd, w_fwd, w_bwd, counts_fwd, counts_bwd,
                                config);
  }
};

// Acoustic filter table with one hand-attributed removal per rule:
//   u1: the(edge) cat(pause-adj) PAUSE sat(pause-adj) down(edge)
//   u2: well(edge) i(negative) saw(10.0, survivor) yeah(10.001, over)
//       xyzzyq(OOV) right(edge)
inline std::string filter_fixture_tsv() {
  return "speaker_id\tutterance_id\tposition\torthography\tduration_s\tis_pause\n"
         "s1\tu1\t1\tthe\t0.2\t0\n"
         "s1\tu1\t2\tcat\t0.3\t0\n"
         "s1\tu1\t3\tsp\t0.5\t1\n"
         "s1\tu1\t4\tsat\t0.25\t0\n"
         "s1\tu1\t5\tdown\t0.2\t0\n"
         "s1\tu2\t1\twell\t0.3\t0\n"
         "s1\tu2\t2\ti\t-0.05\t0\n"
         "s1\tu2\t3\tsaw\t10.0\t0\n"
         "s1\tu2\t4\tyeah\t10.001\t0\n"
         "s1\tu2\t5\txyzzyq\t0.4\t0\n"
         "s1\tu2\t6\tright\t0.35\t0\n";
}

// Vocabulary covering the filter fixture's real words (xyzzyq excluded).
inline wordpred::Vocabulary filter_vocab() {
  wordpred::Sentence s;
  s.tokens = {wordpred::kSentStart, "the", "cat", "sat", "down", "well",
              "i",                  "saw", "yeah", "right", wordpred::kSentEnd};
  return wordpred::Vocabulary::build({{s}}, 1);
}

// Unique directory under the system temp root, removed on destruction.
struct TempDir {
  std::filesystem::path path;

  TempDir() {
    std::random_device rd;
    const auto stamp = std::to_string((static_cast<std::uint64_t>(rd()) << 32) ^ rd());
    path = std::filesystem::temp_directory_path() / ("wordpred_test_" + stamp);
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path file(const std::string& name) const { return path / name; }
};

}  // namespace fixtures
