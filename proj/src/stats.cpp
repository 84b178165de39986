#include "mteval/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <utility>

#include <boost/math/distributions/students_t.hpp>

#include "mteval/error.hpp"

namespace mteval {

std::vector<double> ScoreTable::column(std::size_t metric) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.at(metric));
  return out;
}

std::size_t ScoreTable::index_of(const std::string& metric) const {
  const auto it = std::find(metric_names.begin(), metric_names.end(), metric);
  if (it == metric_names.end()) {
    throw Error(ErrorCode::kInvalidArgument, "no metric column named '" + metric + "'");
  }
  return static_cast<std::size_t>(it - metric_names.begin());
}

void ScoreTable::validate() const {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != metric_names.size()) {
      throw Error(ErrorCode::kSchemaMismatch,
                  "row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                      " values, expected " + std::to_string(metric_names.size()));
    }
  }
  if (!row_labels.empty() && row_labels.size() != rows.size()) {
    throw Error(ErrorCode::kSchemaMismatch, "row label count differs from row count");
  }
}

CorrelationResult pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kLengthMismatch, "correlation inputs differ in length");
  }
  if (x.size() < 2) throw Error(ErrorCode::kLengthMismatch, "correlation needs >= 2 samples");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::kZeroVariance, "correlation of a constant vector is undefined");
  }
  CorrelationResult out;
  out.coefficient = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  out.n = x.size();
  return out;
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

double correlation_p_value(double r, std::size_t n) {
  if (std::abs(r) >= 1.0) return 0.0;
  if (n <= 2) return 1.0;
  const double df = static_cast<double>(n - 2);
  const double t = r * std::sqrt(df / (1.0 - r * r));
  const boost::math::students_t dist(df);
  return std::clamp(2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))), 0.0, 1.0);
}

namespace {

bool has_ties(std::span<const double> v) {
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end());
  return std::adjacent_find(s.begin(), s.end()) != s.end();
}

}  // namespace

CorrelationResult spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kLengthMismatch, "correlation inputs differ in length");
  }
  if (x.size() < 2) throw Error(ErrorCode::kLengthMismatch, "correlation needs >= 2 samples");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);

  CorrelationResult out;
  if (!has_ties(x) && !has_ties(y)) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
    const double n = static_cast<double>(x.size());
    out.coefficient = std::clamp(1.0 - 6.0 * d2 / (n * (n * n - 1.0)), -1.0, 1.0);
    out.n = x.size();
  } else {
    out = pearson(rx, ry);
  }
  out.two_tailed_p = correlation_p_value(out.coefficient, out.n);
  return out;
}

std::uint64_t ContingencyTable::total() const {
  std::uint64_t n = 0;
  for (const auto& row : counts) n = std::accumulate(row.begin(), row.end(), n);
  return n;
}

void ContingencyTable::validate() const {
  if (counts.size() < 2 || counts.front().size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "contingency table needs >= 2 rows and columns");
  }
  for (const auto& row : counts) {
    if (row.size() != counts.front().size()) {
      throw Error(ErrorCode::kInvalidArgument, "contingency table is not rectangular");
    }
  }
}

ContingencyTable cross_tabulate(std::span<const int> row_labels, std::span<const int> column_labels) {
  if (row_labels.size() != column_labels.size()) {
    throw Error(ErrorCode::kLengthMismatch, "label vectors differ in length");
  }
  const std::set<int> rows(row_labels.begin(), row_labels.end());
  const std::set<int> cols(column_labels.begin(), column_labels.end());
  std::map<int, std::size_t> row_index, col_index;
  for (int r : rows) row_index.emplace(r, row_index.size());
  for (int c : cols) col_index.emplace(c, col_index.size());
  ContingencyTable t;
  t.counts.assign(rows.size(), std::vector<std::uint64_t>(cols.size(), 0));
  for (std::size_t i = 0; i < row_labels.size(); ++i) {
    ++t.counts[row_index[row_labels[i]]][col_index[column_labels[i]]];
  }
  return t;
}

LambdaResult goodman_kruskal_lambda(const ContingencyTable& table) {
  table.validate();
  const std::size_t cols = table.counts.front().size();
  std::vector<std::uint64_t> marginal(cols, 0);
  std::uint64_t sum_row_max = 0;
  std::vector<std::size_t> row_argmax;
  for (const auto& row : table.counts) {
    const auto it = std::max_element(row.begin(), row.end());
    sum_row_max += *it;
    row_argmax.push_back(static_cast<std::size_t>(it - row.begin()));
    for (std::size_t j = 0; j < cols; ++j) marginal[j] += row[j];
  }
  const auto col_it = std::max_element(marginal.begin(), marginal.end());
  const std::uint64_t r = *col_it;
  const std::size_t modal_col = static_cast<std::size_t>(col_it - marginal.begin());
  const std::uint64_t n = table.total();
  if (n == r) {
    throw Error(ErrorCode::kDegenerateTable, "all observations fall in one column; lambda undefined");
  }

  // Row maxima of rows whose maximum sits in the modal column.
  std::uint64_t modal_row_max = 0;
  for (std::size_t i = 0; i < table.counts.size(); ++i) {
    if (row_argmax[i] == modal_col) modal_row_max += table.counts[i][modal_col];
  }

  const double nd = static_cast<double>(n);
  const double rd = static_cast<double>(r);
  const double sr = static_cast<double>(sum_row_max);
  LambdaResult out;
  out.lambda = (sr - rd) / (nd - rd);
  out.variance = (nd - sr) / std::pow(nd - rd, 3.0) *
                 (sr + rd - 2.0 * static_cast<double>(modal_row_max));
  return out;
}

std::vector<int> discretize(std::span<const double> values, std::size_t bin_count) {
  if (bin_count < 2) throw Error(ErrorCode::kInvalidArgument, "need at least two bins");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const auto distinct = static_cast<std::size_t>(
      std::unique(sorted.begin(), sorted.end()) - sorted.begin());
  if (distinct < bin_count) {
    throw Error(ErrorCode::kInsufficientDistinctValues,
                std::to_string(distinct) + " distinct values cannot fill " +
                    std::to_string(bin_count) + " bins");
  }
  sorted.assign(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> labels;
  labels.reserve(values.size());
  for (double v : values) {
    const auto below = static_cast<std::size_t>(
        std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
    labels.push_back(static_cast<int>(bin_count * below / values.size()));
  }
  return labels;
}

CorrelationMatrix correlation_matrix(const ScoreTable& table, CorrelationKind kind,
                                     Execution exec) {
  table.validate();
  if (table.row_count() < 2) {
    throw Error(ErrorCode::kLengthMismatch, "correlation needs at least two rows");
  }
  const std::size_t m = table.metric_count();
  std::vector<std::vector<double>> columns;
  for (std::size_t j = 0; j < m; ++j) columns.push_back(table.column(j));

  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j <= i; ++j) cells.emplace_back(i, j);
  }
  const auto results = map_indices(cells.size(), exec, [&](std::size_t k) {
    const auto [i, j] = cells[k];
    if (i == j) return CorrelationResult{1.0, table.row_count(), 0.0};
    return kind == CorrelationKind::kPearson ? pearson(columns[i], columns[j])
                                             : spearman(columns[i], columns[j]);
  });

  CorrelationMatrix out(m);
  for (std::size_t k = 0; k < cells.size(); ++k) out[cells[k].first].push_back(results[k]);
  return out;
}

}  // namespace mteval
