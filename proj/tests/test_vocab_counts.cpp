#include <doctest.h>

#include <fstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "wordpred/counts.hpp"
#include "wordpred/io_util.hpp"
#include "wordpred/vocab.hpp"

using wordpred::BigramCounts;
using wordpred::Direction;
using wordpred::Sentence;
using wordpred::Vocabulary;

namespace {

Sentence sent(std::vector<std::string> words) {
  Sentence s;
  s.tokens.push_back(wordpred::kSentStart);
  for (auto& w : words) s.tokens.push_back(std::move(w));
  s.tokens.push_back(wordpred::kSentEnd);
  return s;
}

}  // namespace

TEST_CASE("document-frequency thresholding folds rare words into <unk>") {
  const std::vector<Sentence> doc1 = {sent({"the", "cat"}), sent({"the", "mat"})};
  const std::vector<Sentence> doc2 = {sent({"the", "cat", "ran"})};
  const Vocabulary v = Vocabulary::build({doc1, doc2}, 2);

  CHECK(v.contains("the"));
  CHECK(v.contains("cat"));
  CHECK_FALSE(v.contains("mat"));
  CHECK_FALSE(v.contains("ran"));
  CHECK(v.map("mat") == "<unk>");
  CHECK(v.map("the") == "the");
  CHECK(v.map_id("ran") == v.id("<unk>"));

  // boundaries are always retained, whatever the threshold
  CHECK(v.contains("<s>"));
  CHECK(v.contains("</s>"));
  CHECK(v.is_boundary(v.id("<s>")));
  CHECK(v.is_boundary(v.id("</s>")));
  CHECK_FALSE(v.is_boundary(v.id("the")));

  // token mass is conserved through the folding
  std::uint64_t retained = 0;
  for (std::uint32_t id = 0; id < v.size(); ++id) retained += v.stats(id).token_count;
  CHECK(retained == v.total_tokens());
  CHECK(v.stats(v.id("<unk>")).token_count == 2);  // mat + ran
  CHECK(v.stats(v.id("the")).token_count == 3);
  CHECK(v.stats(v.id("the")).document_frequency == 2);
}

TEST_CASE("vocabulary ids are sorted and stable") {
  const Vocabulary v = fixtures::toy_vocab();
  REQUIRE(v.size() == 6);
  const std::vector<std::string> expected = {"</s>", "<s>", "<unk>", "a", "b", "c"};
  for (std::uint32_t id = 0; id < v.size(); ++id) CHECK(v.word(id) == expected[id]);
  CHECK(v.id("a") == 3);
}

TEST_CASE("vocabulary round-trips through its file format") {
  fixtures::TempDir tmp;
  const Vocabulary v = fixtures::toy_vocab();
  v.save(tmp.file("vocab.tsv"));
  const Vocabulary loaded = Vocabulary::load(tmp.file("vocab.tsv"));

  CHECK(loaded.size() == v.size());
  CHECK(loaded.total_tokens() == v.total_tokens());
  CHECK(loaded.min_doc_freq() == v.min_doc_freq());
  for (std::uint32_t id = 0; id < v.size(); ++id) {
    CHECK(loaded.word(id) == v.word(id));
    CHECK(loaded.stats(id).token_count == v.stats(id).token_count);
    CHECK(loaded.stats(id).document_frequency == v.stats(id).document_frequency);
  }

  loaded.save(tmp.file("vocab2.tsv"));
  CHECK(wordpred::read_file_bytes(tmp.file("vocab2.tsv")) ==
        wordpred::read_file_bytes(tmp.file("vocab.tsv")));
}

TEST_CASE("forward bigram counts match the toy corpus by hand") {
  const Vocabulary v = fixtures::toy_vocab();
  const BigramCounts c =
      wordpred::count_bigrams(fixtures::toy_sentences(), v, Direction::forward);

  const auto id = [&](const char* w) { return v.id(w); };
  CHECK(c.count(id("<s>"), id("a")) == 3);
  CHECK(c.count(id("a"), id("b")) == 2);
  CHECK(c.count(id("a"), id("c")) == 1);
  CHECK(c.count(id("b"), id("</s>")) == 2);
  CHECK(c.count(id("c"), id("</s>")) == 1);
  CHECK(c.count(id("b"), id("a")) == 0);
  CHECK(c.total_pairs() == 9);
  CHECK(c.pair_types() == 5);
  CHECK(c.context_total(id("a")) == 3);
  CHECK(c.context_total(id("</s>")) == 0);

  const auto targets = c.target_totals();
  CHECK(targets.at(id("a")) == 3);
  CHECK(targets.at(id("b")) == 2);
  CHECK(targets.at(id("</s>")) == 3);
  CHECK(targets.count(id("<s>")) == 0);
}

TEST_CASE("backward counts mirror forward pairs") {
  const Vocabulary v = fixtures::toy_vocab();
  const BigramCounts fwd = wordpred::count_bigrams(fixtures::toy_sentences(), v, Direction::forward);
  const BigramCounts bwd = wordpred::count_bigrams(fixtures::toy_sentences(), v, Direction::backward);

  CHECK(bwd.total_pairs() == fwd.total_pairs());
  for (const auto& [key, n] : fwd.pairs()) {
    const auto ctx = BigramCounts::packed_context(key);
    const auto w = BigramCounts::packed_word(key);
    CHECK(bwd.count(w, ctx) == n);
  }
}

TEST_CASE("out-of-vocabulary tokens are counted as <unk>") {
  const std::vector<Sentence> doc1 = {sent({"the", "cat"})};
  const std::vector<Sentence> doc2 = {sent({"the", "dog"})};
  const Vocabulary v = Vocabulary::build({doc1, doc2}, 2);  // cat, dog fold (df 1)
  const std::vector<Sentence> doc = {doc1[0], doc2[0]};
  const BigramCounts c = wordpred::count_bigrams(doc, v, Direction::forward);
  CHECK(c.count(v.id("the"), v.id("<unk>")) == 2);
  CHECK(c.total_pairs() == 6);
}

TEST_CASE("merge adds counts of the same direction") {
  const Vocabulary v = fixtures::toy_vocab();
  BigramCounts a = wordpred::count_bigrams(fixtures::toy_sentences(), v, Direction::forward);
  const BigramCounts b = wordpred::count_bigrams(fixtures::toy_sentences(), v, Direction::forward);
  a.merge(b);
  CHECK(a.count(v.id("<s>"), v.id("a")) == 6);
  CHECK(a.total_pairs() == 18);
}

TEST_CASE("bigram counts round-trip byte-identically") {
  fixtures::TempDir tmp;
  const Vocabulary v = fixtures::toy_vocab();
  const BigramCounts c = wordpred::count_bigrams(fixtures::toy_sentences(), v, Direction::forward);
  c.save(tmp.file("counts.tsv"), v);
  const BigramCounts loaded = BigramCounts::load(tmp.file("counts.tsv"), v);

  CHECK(loaded.direction() == c.direction());
  CHECK(loaded.total_pairs() == c.total_pairs());
  CHECK(loaded.pairs() == c.pairs());

  loaded.save(tmp.file("counts2.tsv"), v);
  CHECK(wordpred::read_file_bytes(tmp.file("counts2.tsv")) ==
        wordpred::read_file_bytes(tmp.file("counts.tsv")));
}
