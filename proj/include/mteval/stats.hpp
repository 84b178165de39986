#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mteval/parallel.hpp"

namespace mteval {

// Runs x metrics score matrix.
struct ScoreTable {
  std::vector<std::string> metric_names;
  std::vector<std::string> row_labels;  // one per row; may be empty strings
  std::vector<std::vector<double>> rows;

  std::size_t metric_count() const { return metric_names.size(); }
  std::size_t row_count() const { return rows.size(); }
  std::vector<double> column(std::size_t metric) const;
  // Throws Error(kInvalidArgument) when the name is unknown.
  std::size_t index_of(const std::string& metric) const;
  // Throws Error(kSchemaMismatch) when a row has the wrong width.
  void validate() const;
};

struct CorrelationResult {
  double coefficient = 0.0;
  std::size_t n = 0;
  // Spearman only; Pearson leaves it at 1.
  double two_tailed_p = 1.0;
};

CorrelationResult pearson(std::span<const double> x, std::span<const double> y);

// Average ranks (1-based) with ties sharing the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values);

CorrelationResult spearman(std::span<const double> x, std::span<const double> y);

// Two-tailed p of a correlation coefficient via t = r sqrt((n-2)/(1-r^2)).
double correlation_p_value(double r, std::size_t n);

struct ContingencyTable {
  // counts[row][column]
  std::vector<std::vector<std::uint64_t>> counts;

  std::uint64_t total() const;
  // Throws Error(kInvalidArgument) unless rectangular with >= 2 rows and columns.
  void validate() const;
};

// Cross-tabulates two label vectors; rows follow row_labels' distinct values
// in ascending order, columns likewise.
ContingencyTable cross_tabulate(std::span<const int> row_labels, std::span<const int> column_labels);

struct LambdaResult {
  double lambda = 0.0;
  double variance = 0.0;
};

// Asymmetric Goodman-Kruskal lambda λ(C|R): improvement in predicting the
// column category from the row category. Throws Error(kDegenerateTable)
// when every observation sits in the modal column.
LambdaResult goodman_kruskal_lambda(const ContingencyTable& table);

// Equal-frequency binning. A value's bin is floor(bins * below / n), where
// below counts values strictly smaller, so ties land in the lower bin.
std::vector<int> discretize(std::span<const double> values, std::size_t bin_count);

enum class CorrelationKind { kPearson, kSpearman };

// Lower-triangular matrix: row i holds entries for metrics 0..i.
using CorrelationMatrix = std::vector<std::vector<CorrelationResult>>;

CorrelationMatrix correlation_matrix(const ScoreTable& table, CorrelationKind kind,
                                     Execution exec = Execution::kParallel);

}  // namespace mteval
