#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "wordpred/io_util.hpp"
#include "wordpred/kn.hpp"

using wordpred::BigramCounts;
using wordpred::Direction;
using wordpred::Discounts;
using wordpred::KNModel;
using wordpred::Vocabulary;

namespace {

KNModel toy_model(Direction dir = Direction::forward) {
  const Vocabulary v = fixtures::toy_vocab();
  return KNModel::fit(wordpred::count_bigrams(fixtures::toy_sentences(), v, dir), v);
}

oracle::PairCounts toy_pairs() {
  return {
      {{"<s>", "a"}, 3}, {{"a", "b"}, 2}, {{"a", "c"}, 1}, {{"b", "</s>"}, 2}, {{"c", "</s>"}, 1},
  };
}

double prob_sum(const KNModel& m, const std::string& context) {
  double sum = 0.0;
  for (const auto& w : m.outcome_words()) sum += m.cond_prob(w, context);
  return sum;
}

}  // namespace

TEST_CASE("degenerate count-of-counts fall back to a single 0.75 discount") {
  const Vocabulary v = fixtures::toy_vocab();
  const auto counts = wordpred::count_bigrams(fixtures::toy_sentences(), v, Direction::forward);
  const Discounts d = wordpred::estimate_discounts(counts);  // no count-4 pair
  CHECK(d.fallback);
  CHECK(d.d1 == 0.75);
  CHECK(d.d2 == 0.75);
  CHECK(d.d3plus == 0.75);
}

TEST_CASE("count-of-counts discounts follow the closed formulas") {
  // 10 singleton pairs, 5 doubles, 4 triples, 1 quadruple:
  // Y = 10/20, D1 = 1 - 2*0.5*5/10 = 0.5, D2 = 2 - 3*0.5*4/5 = 0.8,
  // D3+ = 3 - 4*0.5*1/4 = 2.5 -> capped just below 1.
  BigramCounts c(Direction::forward);
  std::uint32_t w = 0;
  for (int i = 0; i < 10; ++i) c.add(0, ++w, 1);
  for (int i = 0; i < 5; ++i) c.add(1, ++w, 2);
  for (int i = 0; i < 4; ++i) c.add(2, ++w, 3);
  c.add(3, ++w, 4);
  const Discounts d = wordpred::estimate_discounts(c);
  CHECK_FALSE(d.fallback);
  CHECK(d.d1 == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(d.d2 == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(d.d3plus == 1.0 - 1e-6);
}

TEST_CASE("negative discount estimates clamp to zero") {
  // n1=2, n2=1, n3=10, n4=1: Y = 0.5, D2 = 2 - 3*0.5*10 = -13 -> 0.
  BigramCounts c(Direction::forward);
  std::uint32_t w = 0;
  for (int i = 0; i < 2; ++i) c.add(0, ++w, 1);
  c.add(1, ++w, 2);
  for (int i = 0; i < 10; ++i) c.add(2, ++w, 3);
  c.add(3, ++w, 4);
  const Discounts d = wordpred::estimate_discounts(c);
  CHECK_FALSE(d.fallback);
  CHECK(d.d2 == 0.0);
}

TEST_CASE("estimate_discounts rejects empty counts") {
  BigramCounts c(Direction::forward);
  CHECK_THROWS_AS(wordpred::estimate_discounts(c), std::invalid_argument);
}

TEST_CASE("toy-corpus probabilities match the independent reference") {
  const KNModel m = toy_model();
  const oracle::KNReference ref(toy_pairs());
  CHECK(ref.fallback);

  for (const auto& context : m.known_contexts()) {
    for (const auto& word : m.outcome_words()) {
      CHECK(m.cond_prob(word, context) ==
            doctest::Approx(ref.prob(word, context)).epsilon(1e-12));
    }
  }

  // frozen hand values
  CHECK(m.cond_prob("b", "a") == doctest::Approx(31.0 / 60.0).epsilon(1e-12));
  CHECK(m.cond_prob("c", "a") == doctest::Approx(11.0 / 60.0).epsilon(1e-12));
  CHECK(m.cond_prob("a", "a") == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(m.cond_prob("</s>", "a") == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(m.cond_prob("a", "<s>") == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(m.continuation_prob("a") == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(m.continuation_prob("</s>") == doctest::Approx(0.4).epsilon(1e-15));
}

TEST_CASE("every context's probabilities sum to one") {
  const KNModel m = toy_model();
  for (const auto& context : m.words()) {
    CHECK(std::fabs(prob_sum(m, context) - 1.0) < 1e-9);
  }
}

TEST_CASE("a context with no observations backs off to the continuation unigram") {
  const KNModel m = toy_model();
  // </s> is a model word but never a forward context
  const auto contexts = m.known_contexts();
  CHECK(std::find(contexts.begin(), contexts.end(), "</s>") == contexts.end());
  CHECK(m.cond_prob("a", "</s>") == m.continuation_prob("a"));
}

TEST_CASE("the start token is not a forward outcome") {
  const KNModel m = toy_model();
  CHECK_FALSE(m.is_outcome("<s>"));
  CHECK(m.is_outcome("</s>"));
  CHECK(m.is_outcome("a"));
  const auto outcomes = m.outcome_words();
  CHECK(std::find(outcomes.begin(), outcomes.end(), "<s>") == outcomes.end());

  const KNModel b = toy_model(Direction::backward);
  CHECK_FALSE(b.is_outcome("</s>"));
  CHECK(b.is_outcome("<s>"));
}

TEST_CASE("higher count means higher probability within a context") {
  const KNModel m = toy_model();
  CHECK(m.cond_prob("b", "a") > m.cond_prob("c", "a"));
  CHECK(m.cond_prob("c", "a") > m.cond_prob("a", "a"));  // seen beats unseen
}

TEST_CASE("all probabilities lie in (0, 1]") {
  const KNModel m = toy_model();
  for (const auto& context : m.words()) {
    for (const auto& word : m.outcome_words()) {
      const double p = m.cond_prob(word, context);
      CHECK(p > 0.0);
      CHECK(p <= 1.0);
      CHECK(m.log2_cond_prob(word, context) == std::log2(p));
    }
  }
}

TEST_CASE("the backward model equals the forward model of the reversed corpus") {
  const Vocabulary v = fixtures::toy_vocab();
  const KNModel bwd = toy_model(Direction::backward);

  auto reversed = fixtures::toy_sentences();
  for (auto& s : reversed) std::reverse(s.tokens.begin(), s.tokens.end());
  const KNModel fwd_rev =
      KNModel::fit(wordpred::count_bigrams(reversed, v, Direction::forward), v);

  for (const auto& context : bwd.known_contexts()) {
    for (const auto& word : bwd.outcome_words()) {
      CHECK(bwd.cond_prob(word, context) == fwd_rev.cond_prob(word, context));
    }
  }
}

TEST_CASE("unknown words and contexts are rejected") {
  const KNModel m = toy_model();
  CHECK_THROWS_AS(m.cond_prob("zzz", "a"), std::out_of_range);
  CHECK_THROWS_AS(m.cond_prob("a", "zzz"), std::out_of_range);
  CHECK_THROWS_AS(m.cond_prob("<s>", "a"), std::out_of_range);  // not an outcome
  CHECK_FALSE(m.has_word("zzz"));
  CHECK(m.has_word("a"));
}

TEST_CASE("model files round-trip bit-exactly") {
  fixtures::TempDir tmp;
  const KNModel m = toy_model();
  m.save(tmp.file("kn.tsv"));
  const KNModel loaded = KNModel::load(tmp.file("kn.tsv"));

  CHECK(loaded.direction() == m.direction());
  CHECK(loaded.discounts().d1 == m.discounts().d1);
  CHECK(loaded.discounts().fallback == m.discounts().fallback);
  for (const auto& context : m.words()) {
    for (const auto& word : m.outcome_words()) {
      CHECK(loaded.cond_prob(word, context) == m.cond_prob(word, context));
    }
  }

  loaded.save(tmp.file("kn2.tsv"));
  CHECK(wordpred::read_file_bytes(tmp.file("kn2.tsv")) ==
        wordpred::read_file_bytes(tmp.file("kn.tsv")));
}

TEST_CASE("loading a missing or foreign file fails") {
  fixtures::TempDir tmp;
  CHECK_THROWS_AS(KNModel::load(tmp.file("absent.tsv")), std::runtime_error);
  wordpred::write_file_text(tmp.file("other.tsv"), "word\ttoken_count\tdocument_frequency\n");
  CHECK_THROWS_AS(KNModel::load(tmp.file("other.tsv")), std::runtime_error);
}
