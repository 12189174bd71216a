#include <doctest.h>

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "wordpred/analysis.hpp"
#include "wordpred/io_util.hpp"

using wordpred::DataTable;
using wordpred::ModelComparison;
using wordpred::ModelFit;
using wordpred::ModelSpec;

namespace {

std::vector<std::optional<double>> opt(const std::vector<double>& v) {
  return {v.begin(), v.end()};
}

double sample_sd(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

DataTable table_from(const fixtures::TempDir& tmp, const std::string& name,
                     const std::string& tsv) {
  wordpred::write_file_text(tmp.file(name), tsv);
  return DataTable::read_tsv(tmp.file(name));
}

}  // namespace

TEST_CASE("pearson reproduces the hand-computed correlation") {
  const auto x = opt({1, 2, 3, 4, 5});
  const auto y = opt({2, 1, 4, 3, 7});
  // cross = 12, ssx = 10, ssy = 21.2
  CHECK(wordpred::pearson(x, y, "x", "y") ==
        doctest::Approx(12.0 / std::sqrt(212.0)).epsilon(1e-12));
}

TEST_CASE("pearson uses only rows where both values are present") {
  std::vector<std::optional<double>> x = {1.0, std::nullopt, 2.0, 3.0, 4.0, 5.0, 9.0};
  std::vector<std::optional<double>> y = {2.0, 50.0, 1.0, 4.0, 3.0, 7.0, std::nullopt};
  CHECK(wordpred::pearson(x, y, "x", "y") ==
        doctest::Approx(12.0 / std::sqrt(212.0)).epsilon(1e-12));
}

TEST_CASE("pearson is exactly plus or minus one on affine images") {
  const auto x = opt({1, 2, 3, 4, 5});
  CHECK(wordpred::pearson(x, opt({3, 5, 7, 9, 11}), "x", "y") == 1.0);
  CHECK(wordpred::pearson(x, opt({-2, -4, -6, -8, -10}), "x", "y") == -1.0);
}

TEST_CASE("pearson is invariant under affine rescaling") {
  const auto x = opt({1, 2, 3, 4, 5});
  const auto y = opt({2, 1, 4, 3, 7});
  std::vector<std::optional<double>> xs(5), ys(5);
  for (std::size_t i = 0; i < 5; ++i) {
    xs[i] = 10.0 * *x[i] - 3.0;
    ys[i] = 0.5 * *y[i] + 7.0;
  }
  CHECK(wordpred::pearson(xs, ys, "x", "y") ==
        doctest::Approx(wordpred::pearson(x, y, "x", "y")).epsilon(1e-12));
}

TEST_CASE("pearson rejects constant columns and starved overlaps") {
  const auto x = opt({1, 1, 1});
  const auto y = opt({2, 3, 4});
  CHECK_THROWS_WITH_AS(wordpred::pearson(x, y, "flat", "y"),
                       "pearson: zero variance in column flat", std::invalid_argument);
  CHECK_THROWS_WITH_AS(wordpred::pearson(y, x, "y", "flat"),
                       "pearson: zero variance in column flat", std::invalid_argument);
  std::vector<std::optional<double>> sparse = {1.0, std::nullopt, std::nullopt};
  CHECK_THROWS_WITH_AS(wordpred::pearson(sparse, y, "sparse", "y"),
                       doctest::Contains("fewer than two complete rows"), std::invalid_argument);
  CHECK_THROWS_AS(wordpred::pearson(x, opt({1, 2}), "x", "y"), std::invalid_argument);
}

TEST_CASE("the correlation matrix is symmetric with a unit diagonal") {
  fixtures::TempDir tmp;
  const DataTable t = table_from(tmp, "t.tsv",
                                 "a\tb\tc\n"
                                 "1\t2\t-1\n"
                                 "2\t1\t-2\n"
                                 "3\t4\tNA\n"
                                 "4\t3\t-4\n"
                                 "5\t7\t-5\n");
  const auto m = wordpred::pearson_matrix(t, {"a", "b", "c"});
  REQUIRE(m.labels.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(m.values[i][i] == 1.0);
    for (std::size_t j = 0; j < 3; ++j) CHECK(m.values[i][j] == m.values[j][i]);
  }
  CHECK(m.values[0][1] == doctest::Approx(12.0 / std::sqrt(212.0)).epsilon(1e-12));
  CHECK(m.values[0][2] ==
        doctest::Approx(wordpred::pearson(t.numeric("a"), t.numeric("c"), "a", "c"))
            .epsilon(1e-15));
}

TEST_CASE("zscore standardizes with the sample standard deviation") {
  const auto z = wordpred::zscore({10.0, 20.0});
  REQUIRE(z.size() == 2);
  CHECK(z[0] == -5.0 / std::sqrt(50.0));
  CHECK(z[1] == 5.0 / std::sqrt(50.0));
  CHECK(z[1] == doctest::Approx(0.7071067811865475).epsilon(1e-15));

  const auto big = wordpred::zscore({3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0});
  double mean = 0.0;
  for (double v : big) mean += v;
  CHECK(std::fabs(mean / 8.0) < 1e-12);
  CHECK(std::fabs(sample_sd(big) - 1.0) < 1e-12);
}

TEST_CASE("zscore rejects degenerate input") {
  CHECK_THROWS_AS(wordpred::zscore({1.0}), std::invalid_argument);
  CHECK_THROWS_AS(wordpred::zscore({2.0, 2.0, 2.0}), std::invalid_argument);
}

TEST_CASE("zscore_missing standardizes around the holes") {
  std::vector<std::optional<double>> col = {10.0, std::nullopt, 20.0};
  const auto z = wordpred::zscore_missing(col);
  REQUIRE(z.size() == 3);
  CHECK_FALSE(z[1].has_value());
  CHECK(*z[0] == -5.0 / std::sqrt(50.0));
  CHECK(*z[2] == 5.0 / std::sqrt(50.0));
}

namespace {

// y is an exact linear function of two integer predictors; every cell is a
// binary-exact quarter, so the TSV round-trips losslessly.
std::string linear_tsv(bool with_noise) {
  std::string tsv = "response\tx1\tx2\tnoise\n";
  for (int i = 0; i < 40; ++i) {
    const double x1 = i;
    const double x2 = (7 * i) % 13;
    double y = 2.0 + 0.5 * x1 - 1.25 * x2;
    if (with_noise) y += 0.25 * static_cast<double>(i % 3);
    const double noise = static_cast<double>((11 * i) % 17);
    tsv += wordpred::format_double(y) + "\t" + wordpred::format_double(x1) + "\t" +
           wordpred::format_double(x2) + "\t" + wordpred::format_double(noise) + "\n";
  }
  return tsv;
}

}  // namespace

TEST_CASE("least squares recovers exact linear structure as standardized betas") {
  fixtures::TempDir tmp;
  const DataTable t = table_from(tmp, "lin.tsv", linear_tsv(false));

  const ModelFit fit = wordpred::ols_fit("response", {"x1", "x2"}, t);
  REQUIRE(fit.coefficients.size() == 3);
  CHECK(fit.n == 40);

  std::vector<double> x1(40), x2(40), y(40);
  for (int i = 0; i < 40; ++i) {
    x1[i] = i;
    x2[i] = (7 * i) % 13;
    y[i] = 2.0 + 0.5 * x1[i] - 1.25 * x2[i];
  }
  const double b1 = 0.5 * sample_sd(x1) / sample_sd(y);
  const double b2 = -1.25 * sample_sd(x2) / sample_sd(y);
  CHECK(std::fabs(fit.coefficients[0]) < 1e-9);  // standardized intercept
  CHECK(std::fabs(fit.coefficients[1] - b1) < 1e-9);
  CHECK(std::fabs(fit.coefficients[2] - b2) < 1e-9);
  CHECK(fit.residual_variance < 1e-18);
  CHECK(fit.std_errors[1] < 1e-9);
}

TEST_CASE("information criteria follow the Gaussian likelihood bookkeeping") {
  fixtures::TempDir tmp;
  const DataTable t = table_from(tmp, "lin.tsv", linear_tsv(true));

  const ModelFit fit = wordpred::ols_fit("response", {"x1", "x2"}, t);
  const double n = 40.0;
  const double k = 2.0 + 2.0;  // two slopes + intercept + variance
  const double ll = -0.5 * n * (std::log(2.0 * std::numbers::pi * fit.residual_variance) + 1.0);
  CHECK(fit.log_likelihood == doctest::Approx(ll).epsilon(1e-12));
  CHECK(fit.aic == doctest::Approx(2.0 * k - 2.0 * ll).epsilon(1e-12));
  CHECK(fit.bic == doctest::Approx(k * std::log(n) - 2.0 * ll).epsilon(1e-12));
  CHECK(fit.residual_variance > 0.0);

  // The same data with the pure-noise predictor bolted on: likelihood can
  // only improve, but the books get one parameter heavier.
  const ModelFit wider = wordpred::ols_fit("response", {"x1", "x2", "noise"}, t);
  CHECK(wider.log_likelihood >= fit.log_likelihood - 1e-9);
  CHECK(wider.aic - fit.aic ==
        doctest::Approx(2.0 - 2.0 * (wider.log_likelihood - fit.log_likelihood)).epsilon(1e-9));
}

TEST_CASE("collinear predictors are rejected by name") {
  fixtures::TempDir tmp;
  std::string tsv = "response\tx1\tdouble_x1\n";
  for (int i = 0; i < 10; ++i) {
    tsv += std::to_string(i) + "\t" + std::to_string(i + 1) + "\t" + std::to_string(2 * i + 2) +
           "\n";
  }
  const DataTable t = table_from(tmp, "col.tsv", tsv);
  CHECK_THROWS_WITH_AS(wordpred::ols_fit("response", {"x1", "double_x1"}, t),
                       doctest::Contains("collinear"), std::invalid_argument);
}

TEST_CASE("least squares needs enough complete rows") {
  fixtures::TempDir tmp;
  const DataTable t = table_from(tmp, "tiny.tsv",
                                 "response\tx1\n"
                                 "1\t2\n"
                                 "2\tNA\n"
                                 "3\t4\n");
  CHECK_THROWS_WITH_AS(wordpred::ols_fit("response", {"x1"}, t),
                       doctest::Contains("complete rows"), std::invalid_argument);
}

TEST_CASE("model comparison drops unusable predictors and keeps fitting") {
  fixtures::TempDir tmp;
  std::string tsv = "response\tx1\tflat\n";
  for (int i = 0; i < 20; ++i) {
    tsv += wordpred::format_double(1.0 + 0.5 * i + 0.25 * (i % 4)) + "\t" + std::to_string(i) +
           "\t7\n";
  }
  const DataTable t = table_from(tmp, "cmp.tsv", tsv);

  const std::vector<ModelSpec> specs = {
      {"baseline", {}},
      {"full", {"x1", "ghost", "flat"}},
  };
  const ModelComparison cmp = wordpred::compare_models("response", specs, t);
  REQUIRE(cmp.fits.size() == 2);
  CHECK(cmp.specs[0].predictors.empty());
  CHECK(cmp.specs[1].predictors == std::vector<std::string>{"x1"});
  REQUIRE(cmp.warnings.size() == 2);
  CHECK(cmp.warnings[0] == "model full: no column ghost, dropped");
  CHECK(cmp.warnings[1] == "model full: column flat is missing or constant, dropped");
  CHECK(cmp.fits[1].aic < cmp.fits[0].aic);  // x1 explains most of the response

  // an unfittable response turns into warnings, not a crash
  std::string flat_tsv = "response\tx1\n1\t2\n1\t3\n1\t4\n";
  const DataTable flat = table_from(tmp, "flat.tsv", flat_tsv);
  const ModelComparison none = wordpred::compare_models("response", specs, flat);
  CHECK(none.fits.empty());
  CHECK(none.warnings.size() >= 2);
}

TEST_CASE("model comparison files list one row per fitted model") {
  fixtures::TempDir tmp;
  std::string tsv = "response\tx1\n";
  for (int i = 0; i < 12; ++i)
    tsv += wordpred::format_double(0.5 * i + 0.25 * (i % 3)) + "\t" + std::to_string(i) + "\n";
  const DataTable t = table_from(tmp, "cmp2.tsv", tsv);
  const ModelComparison cmp =
      wordpred::compare_models("response", {{"baseline", {}}, {"slope", {"x1"}}}, t);
  wordpred::save_model_comparison(tmp.file("out.tsv"), cmp);

  const std::string text = wordpred::read_file_bytes(tmp.file("out.tsv"));
  const auto header_end = text.find('\n');
  CHECK(text.substr(0, header_end) == "model\tn\tk\tlog_lik\taic\tbic\tpredictors");
  CHECK(text.find("baseline\t12\t2\t") != std::string::npos);
  CHECK(text.find("slope\t12\t3\t") != std::string::npos);
  CHECK(text.find("\tx1\n") != std::string::npos);
}

TEST_CASE("data tables parse numbers, missing cells and malformed rows") {
  fixtures::TempDir tmp;
  const DataTable t = table_from(tmp, "dt.tsv",
                                 "word\tvalue\n"
                                 "cat\t1.5\n"
                                 "dog\tNA\n"
                                 "fox\t-2\n");
  CHECK(t.n_rows() == 3);
  CHECK(t.n_cols() == 2);
  CHECK(t.has_column("word"));
  CHECK_FALSE(t.has_column("missing"));
  CHECK_FALSE(t.looks_numeric("word"));
  CHECK(t.looks_numeric("value"));
  const auto vals = t.numeric("value");
  CHECK(*vals[0] == 1.5);
  CHECK_FALSE(vals[1].has_value());
  CHECK(*vals[2] == -2.0);
  CHECK_THROWS_AS(t.raw("missing"), std::out_of_range);

  CHECK_THROWS_WITH_AS(table_from(tmp, "ragged.tsv", "a\tb\n1\n"),
                       doctest::Contains("line 2"), std::runtime_error);
  CHECK_THROWS_WITH_AS(table_from(tmp, "empty.tsv", ""), doctest::Contains("missing header"),
                       std::runtime_error);
}

TEST_CASE("the regression export standardizes metrics and passes categories through") {
  fixtures::TempDir tmp;
  const DataTable t = table_from(tmp, "ann.tsv",
                                 "speaker_id\tutterance_id\tposition\tword\tresponse\tlog_freq"
                                 "\tgender\trate\tflat\n"
                                 "s1\tu1\t1\tcat\t2.5\t1\tf\t4\t9\n"
                                 "s1\tu1\t2\tdog\t2.75\t2\tm\t5\t9\n"
                                 "s1\tu2\t1\tcat\t3.5\t3\tf\t6\t9\n"
                                 "s1\tu2\t2\tfox\t2.25\tNA\tm\t10\t9\n");
  const auto warnings = wordpred::export_regression_table(t, tmp.file("export.tsv"));
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0] == "column flat left unstandardized (missing or constant)");

  const DataTable out = DataTable::read_tsv(tmp.file("export.tsv"));
  CHECK(out.columns() == std::vector<std::string>{"speaker_id", "utterance_id", "position",
                                                  "word", "response", "log_freq", "gender",
                                                  "rate", "flat"});
  CHECK(out.raw("response") == t.raw("response"));      // response stays raw
  CHECK(out.raw("gender") == t.raw("gender"));          // categorical passthrough
  CHECK(out.raw("flat") == t.raw("flat"));              // constant left alone, warned

  const auto lf = out.numeric("log_freq");              // 1,2,3 standardize to -1,0,1
  CHECK(*lf[0] == -1.0);
  CHECK(*lf[1] == 0.0);
  CHECK(*lf[2] == 1.0);
  CHECK_FALSE(lf[3].has_value());
  CHECK(out.looks_numeric("rate"));
  const auto rate = out.numeric("rate");
  double mean = 0.0;
  for (const auto& v : rate) mean += *v;
  CHECK(std::fabs(mean) < 1e-12);
}
