#pragma once

// Batch front end: the logic behind the `score`, `correlate` and `report`
// subcommands, kept in the library so it can be tested without a process.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mteval/bleu.hpp"
#include "mteval/corpus.hpp"
#include "mteval/ebleu.hpp"
#include "mteval/metric_score.hpp"
#include "mteval/refmetrics.hpp"
#include "mteval/stats.hpp"

namespace mteval {

enum class OutputFormat { kJson, kTsv };

// Metric names accepted by `score --metric`.
const std::vector<std::string>& known_metrics();

struct RunConfig {
  std::vector<std::string> metrics;
  std::filesystem::path hyp_path;
  std::vector<std::filesystem::path> ref_paths;
  std::optional<std::filesystem::path> lexicon_path;
  TokenizerConfig tokenizer;
  std::size_t max_ngram = 4;
  std::size_t nist_order = 5;
  double synonym_score = 0.90;
  double rare_words_percent = 0.10;
  double rare_words_score = 1.10;
  double epsilon = 0.0;
  LeporConfig lepor;
  RibesConfig ribes;
  OutputFormat format = OutputFormat::kTsv;
  bool per_sentence = false;
  Execution exec = Execution::kParallel;

  // Throws Error(kInvalidArgument) for an empty or unknown metric selection.
  void validate() const;
};

struct Report {
  RunConfig config;
  std::size_t pairs = 0;
  std::size_t ref_count = 0;
  std::size_t hyp_tokens = 0;
  std::size_t ref_tokens = 0;
  std::vector<MetricScore> scores;  // in selection order
};

Report score_corpus(const ParallelCorpus& corpus, const SynonymLexicon& lexicon,
                    const RunConfig& cfg);

// Loads the inputs named in cfg and scores them.
Report run_score(const RunConfig& cfg);

// The value a score takes in tabular output: x100 for the [0,1] metrics and
// TER, NIST as is.
double display_value(const std::string& metric, double raw);

std::string format_report(const Report& report, OutputFormat format);

// Score tables are tab-separated text. The first line names the columns. A
// first header cell that is empty or "run" marks a row-label column; every
// other column holds one metric. Lines starting with '#' are ignored.
ScoreTable parse_score_table(std::string_view text);
ScoreTable read_score_table(const std::filesystem::path& path);
std::string format_score_table(const ScoreTable& table, int decimals = 2);

// Concatenates rows. Throws Error(kSchemaMismatch) when the metric columns
// differ between tables.
ScoreTable merge_score_tables(std::span<const ScoreTable> tables);

struct CorrelateConfig {
  bool pearson = true;
  bool spearman = false;
  bool lambda = false;
  std::size_t bins = 10;
  // Column treated as the dependent variable for lambda; first metric if unset.
  std::optional<std::string> dependent;
  OutputFormat format = OutputFormat::kTsv;
};

std::string run_correlate(const ScoreTable& table, const CorrelateConfig& cfg);

}  // namespace mteval
