// mteval: batch scoring and correlation front end.
//
//   mteval score --hyp H --ref R [--ref R2 ...] --metric ebleu [--metric bleu ...]
//   mteval correlate --table scores.tsv --kind both --lambda
//   mteval report --in a.tsv --in b.tsv --out merged.tsv
//
// Exit status: 0 success, 1 data error, 2 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mteval/error.hpp"
#include "mteval/report.hpp"

namespace {

constexpr int kDataError = 1;
constexpr int kUsageError = 2;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw mteval::Error(mteval::ErrorCode::kIo, "cannot write " + out_path);
  out << text;
  if (!out) throw mteval::Error(mteval::ErrorCode::kIo, "write failed: " + out_path);
}

const std::map<std::string, mteval::OutputFormat> kFormats = {
    {"json", mteval::OutputFormat::kJson}, {"tsv", mteval::OutputFormat::kTsv}};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Machine translation evaluation: EBLEU, BLEU, NIST, TER, METEOR, LEPOR, RIBES"};
  app.require_subcommand(1);

  // score
  mteval::RunConfig run;
  std::string hyp;
  std::vector<std::string> refs;
  std::string lexicon;
  std::string score_out;
  std::string ribes_kind = "kendall";
  bool serial = false;
  auto* score = app.add_subcommand("score", "Score a hypothesis file against references");
  score->add_option("--hyp", hyp, "Hypothesis file, one sentence per line")->required();
  score->add_option("--ref", refs, "Reference file (repeatable)")->required();
  score->add_option("--metric", run.metrics, "Metric to compute (repeatable)")
      ->required()
      ->check(CLI::IsMember(mteval::known_metrics()));
  score->add_option("--lexicon", lexicon, "Synonym lexicon, one comma-separated synset per line");
  score->add_option("--max-ngram", run.max_ngram, "Maximum n-gram order for BLEU/EBLEU")
      ->check(CLI::Range(1, 32));
  score->add_option("--nist-order", run.nist_order, "Maximum n-gram order for NIST")
      ->check(CLI::Range(1, 32));
  score->add_option("--synonym-score", run.synonym_score, "Credit for a synonym match")
      ->check(CLI::Range(0.0, 1.0));
  score->add_option("--rare-words-percent", run.rare_words_percent,
                    "Fraction of reference vocabulary treated as rare")
      ->check(CLI::Validator(
          [](const std::string& v) {
            double x = 0.0;
            if (!CLI::detail::lexical_cast(v, x) || !(x > 0.0 && x <= 1.0)) {
              return std::string("must lie in (0, 1]");
            }
            return std::string();
          },
          "(0,1]"));
  score->add_option("--rare-words-score", run.rare_words_score, "Bonus for rare-word matches")
      ->check(CLI::Range(1.0, 1.0e9));
  score->add_option("--epsilon", run.epsilon, "Smoothing floor for zero precisions")
      ->check(CLI::NonNegativeNumber);
  score->add_option("--lepor-alpha", run.lepor.alpha, "LEPOR recall weight")
      ->check(CLI::PositiveNumber);
  score->add_option("--lepor-beta", run.lepor.beta, "LEPOR precision weight")
      ->check(CLI::PositiveNumber);
  score->add_option("--ribes-alpha", run.ribes.alpha, "RIBES precision exponent")
      ->check(CLI::Range(0.0, 1.0));
  score->add_option("--ribes-correlation", ribes_kind, "RIBES rank correlation")
      ->check(CLI::IsMember({"kendall", "spearman"}));
  score->add_flag("--lowercase", run.tokenizer.lowercase, "Case-fold all text");
  score->add_flag("--split-punct", run.tokenizer.split_punctuation,
                  "Make every punctuation mark its own token");
  score->add_flag("--per-sentence", run.per_sentence, "Include per-sentence scores");
  score->add_flag("--serial", serial, "Disable multithreaded scoring");
  score->add_option("--format", run.format, "Output format")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
  score->add_option("--out", score_out, "Write to this file instead of stdout");

  // correlate
  std::string table_path;
  std::string kind = "pearson";
  mteval::CorrelateConfig corr;
  std::string dependent;
  std::string corr_out;
  auto* correlate = app.add_subcommand("correlate", "Correlate metric columns of a score table");
  correlate->add_option("--table", table_path, "Score table (TSV)")->required();
  correlate->add_option("--kind", kind, "Correlation kind")
      ->check(CLI::IsMember({"pearson", "spearman", "both"}));
  correlate->add_flag("--lambda", corr.lambda, "Also compute Goodman-Kruskal lambda");
  correlate->add_option("--bins", corr.bins, "Equal-frequency bins for lambda")
      ->check(CLI::Range(2, 1000));
  correlate->add_option("--dependent", dependent,
                        "Lambda dependent column (defaults to the first metric)");
  correlate->add_option("--format", corr.format, "Output format")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
  correlate->add_option("--out", corr_out, "Write to this file instead of stdout");

  // report
  std::vector<std::string> inputs;
  std::string report_out;
  auto* report = app.add_subcommand("report", "Merge score tables into one");
  report->add_option("--in", inputs, "Score table (repeatable)")->required();
  report->add_option("--out", report_out, "Write to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsageError;
  }

  try {
    if (*score) {
      run.hyp_path = hyp;
      for (const auto& r : refs) run.ref_paths.emplace_back(r);
      if (!lexicon.empty()) run.lexicon_path = lexicon;
      run.ribes.correlation = ribes_kind == "kendall" ? mteval::RankCorrelation::kKendall
                                                      : mteval::RankCorrelation::kSpearman;
      run.exec = serial ? mteval::Execution::kSerial : mteval::Execution::kParallel;
      emit(mteval::format_report(mteval::run_score(run), run.format), score_out);
    } else if (*correlate) {
      corr.pearson = kind != "spearman";
      corr.spearman = kind != "pearson";
      if (!dependent.empty()) corr.dependent = dependent;
      emit(mteval::run_correlate(mteval::read_score_table(table_path), corr), corr_out);
    } else if (*report) {
      std::vector<mteval::ScoreTable> tables;
      for (const auto& in : inputs) tables.push_back(mteval::read_score_table(in));
      emit(mteval::format_score_table(mteval::merge_score_tables(tables)), report_out);
    }
  } catch (const mteval::Error& e) {
    std::cerr << "mteval: " << mteval::error_code_name(e.code()) << ": " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "mteval: " << e.what() << '\n';
    return kDataError;
  }
  return 0;
}
