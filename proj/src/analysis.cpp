#include "wordpred/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_set>

#include "wordpred/io_util.hpp"

namespace wordpred {

const std::vector<std::string>& metric_columns() {
  static const std::vector<std::string> cols = {
      "log_freq",     "cp_prev",      "cp_foll",      "inf_prev",   "inf_foll",
      "ndl_cp_prev",  "ndl_cp_foll",  "ndl_inf_prev", "ndl_inf_foll", "prior_prev",
      "prior_foll",   "act_prev",     "act_foll"};
  return cols;
}

DataTable DataTable::read_tsv(const std::filesystem::path& path) {
  const std::string text = read_file_bytes(path);
  DataTable table;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    const std::string line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.empty()) continue;
    auto cols = split_tab(line);
    if (table.columns_.empty()) {
      table.columns_ = cols;
      table.cells_.resize(cols.size());
      continue;
    }
    if (cols.size() != table.columns_.size())
      throw std::runtime_error(path.string() + " line " + std::to_string(line_no) +
                               ": expected " + std::to_string(table.columns_.size()) +
                               " fields, found " + std::to_string(cols.size()));
    for (std::size_t i = 0; i < cols.size(); ++i) table.cells_[i].push_back(std::move(cols[i]));
  }
  if (table.columns_.empty()) throw std::runtime_error(path.string() + ": missing header");
  return table;
}

std::size_t DataTable::index(const std::string& name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i] == name) return i;
  }
  throw std::out_of_range("no such column: " + name);
}

bool DataTable::has_column(const std::string& name) const {
  return std::find(columns_.begin(), columns_.end(), name) != columns_.end();
}

const std::vector<std::string>& DataTable::raw(const std::string& name) const {
  return cells_[index(name)];
}

namespace {

std::optional<double> parse_cell(const std::string& s) {
  if (s.empty() || s == kNA) return std::nullopt;
  double value = 0.0;
  const char* end = s.data() + s.size();
  auto res = std::from_chars(s.data(), end, value);
  if (res.ec != std::errc() || res.ptr != end) return std::nullopt;
  return value;
}

}  // namespace

std::vector<std::optional<double>> DataTable::numeric(const std::string& name) const {
  const auto& col = raw(name);
  std::vector<std::optional<double>> out(col.size());
  for (std::size_t i = 0; i < col.size(); ++i) out[i] = parse_cell(col[i]);
  return out;
}

bool DataTable::looks_numeric(const std::string& name) const {
  const auto& col = raw(name);
  bool any = false;
  for (const auto& s : col) {
    if (s == kNA || s.empty()) continue;
    if (!parse_cell(s).has_value()) return false;
    any = true;
  }
  return any;
}

namespace {

struct Moments {
  double mean = 0.0;
  double ss = 0.0;  // sum of squared deviations
};

Moments moments(const std::vector<double>& x) {
  Moments m;
  m.mean = pairwise_sum(x) / static_cast<double>(x.size());
  std::vector<double> sq(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - m.mean;
    sq[i] = d * d;
  }
  m.ss = pairwise_sum(sq);
  return m;
}

bool is_constant(const std::vector<double>& x) {
  return std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); });
}

}  // namespace

double pearson(const std::vector<std::optional<double>>& x,
               const std::vector<std::optional<double>>& y, const std::string& x_name,
               const std::string& y_name) {
  if (x.size() != y.size()) throw std::invalid_argument("pearson: column length mismatch");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].has_value() && y[i].has_value()) {
      xs.push_back(*x[i]);
      ys.push_back(*y[i]);
    }
  }
  if (xs.size() < 2)
    throw std::invalid_argument("pearson: fewer than two complete rows for " + x_name + " and " +
                                y_name);
  if (is_constant(xs)) throw std::invalid_argument("pearson: zero variance in column " + x_name);
  if (is_constant(ys)) throw std::invalid_argument("pearson: zero variance in column " + y_name);

  const Moments mx = moments(xs);
  const Moments my = moments(ys);
  std::vector<double> cross(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) cross[i] = (xs[i] - mx.mean) * (ys[i] - my.mean);
  return pairwise_sum(cross) / std::sqrt(mx.ss * my.ss);
}

CorrelationMatrix pearson_matrix(const DataTable& table, const std::vector<std::string>& columns) {
  CorrelationMatrix m;
  m.labels = columns;
  std::vector<std::vector<std::optional<double>>> cols;
  cols.reserve(columns.size());
  for (const auto& name : columns) cols.push_back(table.numeric(name));

  m.values.assign(columns.size(), std::vector<double>(columns.size(), 1.0));
  for (std::size_t i = 0; i < columns.size(); ++i) {
    for (std::size_t j = i + 1; j < columns.size(); ++j) {
      const double r = pearson(cols[i], cols[j], columns[i], columns[j]);
      m.values[i][j] = r;
      m.values[j][i] = r;
    }
  }
  return m;
}

void save_correlation_matrix(const std::filesystem::path& path, const CorrelationMatrix& m) {
  std::string out = "column";
  for (const auto& l : m.labels) out += "\t" + l;
  out += "\n";
  for (std::size_t i = 0; i < m.labels.size(); ++i) {
    out += m.labels[i];
    for (std::size_t j = 0; j < m.labels.size(); ++j) out += "\t" + format_double(m.values[i][j]);
    out += "\n";
  }
  write_file_text(path, out);
}

std::vector<double> zscore(const std::vector<double>& column) {
  if (column.size() < 2) throw std::invalid_argument("zscore: need at least two values");
  if (is_constant(column)) throw std::invalid_argument("zscore: zero variance");
  const Moments m = moments(column);
  const double s = std::sqrt(m.ss / static_cast<double>(column.size() - 1));
  std::vector<double> out(column.size());
  for (std::size_t i = 0; i < column.size(); ++i) out[i] = (column[i] - m.mean) / s;
  return out;
}

std::vector<std::optional<double>> zscore_missing(
    const std::vector<std::optional<double>>& column) {
  std::vector<double> present;
  for (const auto& v : column)
    if (v.has_value()) present.push_back(*v);
  const std::vector<double> z = zscore(present);
  std::vector<std::optional<double>> out(column.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < column.size(); ++i) {
    if (column[i].has_value()) out[i] = z[k++];
  }
  return out;
}

ModelFit ols_fit(const std::string& response, const std::vector<std::string>& predictors,
                 const DataTable& table) {
  const auto y_col = table.numeric(response);
  std::vector<std::vector<std::optional<double>>> x_cols;
  x_cols.reserve(predictors.size());
  for (const auto& p : predictors) x_cols.push_back(table.numeric(p));

  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < y_col.size(); ++r) {
    bool complete = y_col[r].has_value();
    for (const auto& col : x_cols) complete = complete && col[r].has_value();
    if (complete) rows.push_back(r);
  }
  const std::size_t n = rows.size();
  const std::size_t p = predictors.size();
  if (n < p + 2)
    throw std::invalid_argument("ols_fit: only " + std::to_string(n) +
                                " complete rows for " + std::to_string(p) + " predictors");

  auto standardize = [&](const std::vector<std::optional<double>>& col,
                         const std::string& name) -> std::vector<double> {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = *col[rows[i]];
    try {
      return zscore(v);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("ols_fit: zero variance in column " + name);
    }
  };

  const std::vector<double> y = standardize(y_col, response);
  Eigen::MatrixXd X(n, p + 1);
  Eigen::VectorXd Y(n);
  for (std::size_t i = 0; i < n; ++i) {
    X(i, 0) = 1.0;
    Y(i) = y[i];
  }
  for (std::size_t j = 0; j < p; ++j) {
    const std::vector<double> xz = standardize(x_cols[j], predictors[j]);
    for (std::size_t i = 0; i < n; ++i) X(i, j + 1) = xz[i];
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  if (qr.rank() < static_cast<Eigen::Index>(p + 1)) {
    const auto& perm = qr.colsPermutation().indices();
    std::string names;
    for (Eigen::Index k = qr.rank(); k < perm.size(); ++k) {
      const Eigen::Index idx = perm[k];
      if (!names.empty()) names += ", ";
      names += idx == 0 ? "(intercept)" : predictors[idx - 1];
    }
    throw std::invalid_argument("ols_fit: collinear columns: " + names);
  }

  const Eigen::VectorXd beta = qr.solve(Y);
  const Eigen::VectorXd resid = Y - X * beta;
  const double rss = resid.squaredNorm();

  ModelFit fit;
  fit.predictors = predictors;
  fit.n = n;
  fit.coefficients.assign(beta.data(), beta.data() + beta.size());
  fit.residual_variance = rss / static_cast<double>(n);
  fit.log_likelihood =
      -0.5 * static_cast<double>(n) *
      (std::log(2.0 * std::numbers::pi * fit.residual_variance) + 1.0);
  const double k = static_cast<double>(p) + 2.0;  // coefficients' slopes + intercept + variance
  fit.aic = 2.0 * k - 2.0 * fit.log_likelihood;
  fit.bic = k * std::log(static_cast<double>(n)) - 2.0 * fit.log_likelihood;

  const double s2 = rss / static_cast<double>(n - p - 1);
  const Eigen::MatrixXd cov = (X.transpose() * X).inverse() * s2;
  fit.std_errors.resize(p + 1);
  for (std::size_t j = 0; j <= p; ++j) fit.std_errors[j] = std::sqrt(cov(j, j));
  return fit;
}

ModelComparison compare_models(const std::string& response, const std::vector<ModelSpec>& specs,
                               const DataTable& table) {
  ModelComparison cmp;
  for (const ModelSpec& spec : specs) {
    ModelSpec used;
    used.name = spec.name;
    for (const auto& pred : spec.predictors) {
      if (!table.has_column(pred)) {
        cmp.warnings.push_back("model " + spec.name + ": no column " + pred + ", dropped");
        continue;
      }
      const auto col = table.numeric(pred);
      std::vector<double> present;
      for (const auto& v : col)
        if (v.has_value()) present.push_back(*v);
      if (present.size() < 2 || is_constant(present)) {
        cmp.warnings.push_back("model " + spec.name + ": column " + pred +
                               " is missing or constant, dropped");
        continue;
      }
      used.predictors.push_back(pred);
    }
    try {
      ModelFit fit = ols_fit(response, used.predictors, table);
      cmp.specs.push_back(std::move(used));
      cmp.fits.push_back(std::move(fit));
    } catch (const std::invalid_argument& e) {
      cmp.warnings.push_back("model " + spec.name + ": " + e.what());
    }
  }
  return cmp;
}

void save_model_comparison(const std::filesystem::path& path, const ModelComparison& comparison) {
  std::string out = "model\tn\tk\tlog_lik\taic\tbic\tpredictors\n";
  for (std::size_t i = 0; i < comparison.fits.size(); ++i) {
    const ModelFit& f = comparison.fits[i];
    std::string preds;
    for (const auto& p : f.predictors) {
      if (!preds.empty()) preds += ",";
      preds += p;
    }
    out += comparison.specs[i].name + "\t" + std::to_string(f.n) + "\t" +
           std::to_string(f.predictors.size() + 2) + "\t" + format_double(f.log_likelihood) +
           "\t" + format_double(f.aic) + "\t" + format_double(f.bic) + "\t" + preds + "\n";
  }
  write_file_text(path, out);
}

std::vector<std::string> export_regression_table(const DataTable& annotated,
                                                 const std::filesystem::path& path) {
  std::vector<std::string> warnings;
  const std::vector<std::string> identifiers = {"speaker_id", "utterance_id", "position", "word"};
  std::unordered_set<std::string> fixed(identifiers.begin(), identifiers.end());
  fixed.insert("response");
  for (const auto& m : metric_columns()) fixed.insert(m);

  std::vector<std::string> header;
  std::vector<std::vector<std::string>> out_cols;
  auto add_raw = [&](const std::string& name) {
    header.push_back(name);
    out_cols.push_back(annotated.raw(name));
  };
  auto add_standardized = [&](const std::string& name) {
    header.push_back(name);
    try {
      const auto z = zscore_missing(annotated.numeric(name));
      std::vector<std::string> cells(z.size());
      for (std::size_t i = 0; i < z.size(); ++i)
        cells[i] = z[i].has_value() ? format_double(*z[i]) : std::string(kNA);
      out_cols.push_back(std::move(cells));
    } catch (const std::invalid_argument&) {
      warnings.push_back("column " + name + " left unstandardized (missing or constant)");
      out_cols.push_back(annotated.raw(name));
    }
  };

  for (const auto& id : identifiers) {
    if (annotated.has_column(id)) add_raw(id);
  }
  add_raw("response");
  for (const auto& m : metric_columns()) {
    if (annotated.has_column(m)) add_standardized(m);
  }
  for (const auto& col : annotated.columns()) {
    if (fixed.count(col) > 0) continue;
    if (annotated.looks_numeric(col)) {
      add_standardized(col);
    } else {
      add_raw(col);
    }
  }

  std::string out;
  for (std::size_t j = 0; j < header.size(); ++j) out += (j == 0 ? "" : "\t") + header[j];
  out += "\n";
  const std::size_t n = annotated.n_rows();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t j = 0; j < out_cols.size(); ++j) out += (j == 0 ? "" : "\t") + out_cols[j][r];
    out += "\n";
  }
  write_file_text(path, out);
  return warnings;
}

}  // namespace wordpred
