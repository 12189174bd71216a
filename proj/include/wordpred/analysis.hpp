#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace wordpred {

// The thirteen predictor columns of the annotated table, in documented order.
const std::vector<std::string>& metric_columns();

// Column-oriented view of a TSV artifact. Cells stay raw strings; numeric
// access parses on demand with NA as missing.
class DataTable {
 public:
  static DataTable read_tsv(const std::filesystem::path& path);

  std::size_t n_rows() const { return columns_.empty() ? 0 : cells_[0].size(); }
  std::size_t n_cols() const { return columns_.size(); }
  const std::vector<std::string>& columns() const { return columns_; }
  bool has_column(const std::string& name) const;

  // Throws std::out_of_range for unknown columns.
  const std::vector<std::string>& raw(const std::string& name) const;
  std::vector<std::optional<double>> numeric(const std::string& name) const;

  // True when every non-NA cell parses as a number (and at least one does).
  bool looks_numeric(const std::string& name) const;

 private:
  std::size_t index(const std::string& name) const;

  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> cells_;  // by column
};

struct CorrelationMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> values;
};

// Pearson r over rows where both columns are present. Throws
// std::invalid_argument naming the offending column on zero variance, or
// when fewer than two complete pairs remain.
double pearson(const std::vector<std::optional<double>>& x,
               const std::vector<std::optional<double>>& y, const std::string& x_name,
               const std::string& y_name);

CorrelationMatrix pearson_matrix(const DataTable& table, const std::vector<std::string>& columns);

void save_correlation_matrix(const std::filesystem::path& path, const CorrelationMatrix& m);

// (x - mean)/s with the sample (n-1) standard deviation. Throws
// std::invalid_argument on n < 2 or zero variance.
std::vector<double> zscore(const std::vector<double>& column);

// Standardizes over the non-missing entries, leaving missing ones in place.
std::vector<std::optional<double>> zscore_missing(const std::vector<std::optional<double>>& column);

struct ModelFit {
  std::vector<std::string> predictors;   // fitted predictors, intercept excluded
  std::vector<double> coefficients;      // intercept first, then predictors
  std::vector<double> std_errors;        // same layout
  double residual_variance = 0.0;        // maximum-likelihood (RSS/n)
  double log_likelihood = 0.0;
  double aic = 0.0;
  double bic = 0.0;
  std::size_t n = 0;                     // rows after listwise deletion
};

// Ordinary least squares with intercept on listwise-complete rows; response
// and predictors are z-standardized first, so coefficients are standardized
// betas. The Gaussian log-likelihood uses the MLE variance and the parameter
// count k = predictors + intercept + variance; AIC = 2k - 2l, BIC = k ln n - 2l.
// Throws std::invalid_argument on rank deficiency, naming the collinear
// columns, or when too few complete rows remain.
ModelFit ols_fit(const std::string& response, const std::vector<std::string>& predictors,
                 const DataTable& table);

struct ModelSpec {
  std::string name;
  std::vector<std::string> predictors;
};

struct ModelComparison {
  std::vector<ModelSpec> specs;    // predictors actually fitted
  std::vector<ModelFit> fits;      // aligned with specs
  std::vector<std::string> warnings;
};

// Fits every spec, dropping predictor columns that are absent, all-missing,
// or constant (with a warning) rather than failing the whole comparison.
ModelComparison compare_models(const std::string& response, const std::vector<ModelSpec>& specs,
                               const DataTable& table);

void save_model_comparison(const std::filesystem::path& path, const ModelComparison& comparison);

// Hand-off table for external mixed-model software: identifier columns for
// the random effects, the raw log10-milliseconds response, and z-standardized
// continuous predictors and controls; categorical controls pass through.
// Missing cells stay NA. Returns warnings for columns left unstandardized.
std::vector<std::string> export_regression_table(const DataTable& annotated,
                                                 const std::filesystem::path& path);

}  // namespace wordpred
