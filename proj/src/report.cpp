#include "mteval/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mteval/error.hpp"

namespace mteval {

using ordered_json = nlohmann::ordered_json;

const std::vector<std::string>& known_metrics() {
  static const std::vector<std::string> kNames = {"ebleu", "bleu",   "nist", "ter",
                                                  "meteor", "lepor", "ribes"};
  return kNames;
}

void RunConfig::validate() const {
  if (metrics.empty()) throw Error(ErrorCode::kInvalidArgument, "select at least one metric");
  for (const auto& m : metrics) {
    const auto& names = known_metrics();
    if (std::find(names.begin(), names.end(), m) == names.end()) {
      throw Error(ErrorCode::kInvalidArgument, "unknown metric '" + m + "'");
    }
  }
}

namespace {

std::vector<std::string> unique_in_order(const std::vector<std::string>& in) {
  std::vector<std::string> out;
  for (const auto& s : in) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  return out;
}

std::string fixed(double v, int decimals) {
  if (std::isnan(v)) return "NA";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s(buf);
  // Avoid printing "-0.00".
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  if (line.find('\t') != std::string_view::npos) {
    std::size_t start = 0;
    while (true) {
      const auto tab = line.find('\t', start);
      out.push_back(line.substr(start, tab == std::string_view::npos ? line.npos : tab - start));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    for (auto& f : out) {
      while (!f.empty() && f.front() == ' ') f.remove_prefix(1);
      while (!f.empty() && (f.back() == ' ' || f.back() == '\r')) f.remove_suffix(1);
    }
    return out;
  }
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    const auto j = line.find_first_of(" \r", i);
    out.push_back(line.substr(i, j == std::string_view::npos ? line.npos : j - i));
    i = j == std::string_view::npos ? line.size() : j;
  }
  return out;
}

double parse_number(std::string_view field, std::size_t line_no) {
  double v = 0.0;
  const char* begin = field.data();
  const char* end = field.data() + field.size();
  if (!field.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (field.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw Error(ErrorCode::kSchemaMismatch, "line " + std::to_string(line_no) +
                                                ": '" + std::string(field) + "' is not a number");
  }
  return v;
}

ordered_json metric_json(const MetricScore& s, bool per_sentence) {
  ordered_json j;
  j["name"] = s.metric_name;
  j["score"] = s.corpus_score;
  ordered_json details = ordered_json::object();
  for (const auto& [k, v] : s.details) details[k] = v;
  j["details"] = details;
  if (per_sentence) j["per_sentence"] = s.per_sentence;
  return j;
}

}  // namespace

Report score_corpus(const ParallelCorpus& corpus, const SynonymLexicon& lexicon,
                    const RunConfig& cfg) {
  cfg.validate();
  Report report;
  report.config = cfg;
  report.pairs = corpus.size();
  report.ref_count = corpus.ref_count();
  report.hyp_tokens = corpus.hypothesis_tokens();
  report.ref_tokens = corpus.reference_tokens();

  for (const auto& name : unique_in_order(cfg.metrics)) {
    if (name == "bleu") {
      BleuConfig b;
      b.max_order = cfg.max_ngram;
      b.smoothing_epsilon = cfg.epsilon;
      report.scores.push_back(bleu_score(corpus, b, cfg.exec));
    } else if (name == "ebleu") {
      EbleuConfig e;
      e.max_order = cfg.max_ngram;
      e.synonym_score = cfg.synonym_score;
      e.rare_words_percent = cfg.rare_words_percent;
      e.rare_words_score = cfg.rare_words_score;
      e.smoothing_epsilon = cfg.epsilon;
      report.scores.push_back(ebleu_score(corpus, lexicon, e, cfg.exec));
    } else if (name == "nist") {
      report.scores.push_back(nist_score(corpus, cfg.nist_order, cfg.exec));
    } else if (name == "ter") {
      report.scores.push_back(ter_score(corpus, {}, cfg.exec));
    } else if (name == "meteor") {
      report.scores.push_back(to_metric_score(meteor_score(corpus, lexicon, cfg.exec)));
    } else if (name == "lepor") {
      report.scores.push_back(lepor_score(corpus, cfg.lepor, cfg.exec));
    } else if (name == "ribes") {
      report.scores.push_back(ribes_score(corpus, cfg.ribes, cfg.exec));
    }
  }
  return report;
}

Report run_score(const RunConfig& cfg) {
  cfg.validate();
  const auto corpus = load_parallel_corpus(cfg.hyp_path, cfg.ref_paths, cfg.tokenizer);
  SynonymLexicon lexicon;
  if (cfg.lexicon_path) lexicon = load_synonym_lexicon(*cfg.lexicon_path, cfg.tokenizer);
  return score_corpus(corpus, lexicon, cfg);
}

double display_value(const std::string& metric, double raw) {
  return metric == "nist" ? raw : 100.0 * raw;
}

std::string format_report(const Report& report, OutputFormat format) {
  const auto& cfg = report.config;
  if (format == OutputFormat::kTsv) {
    std::ostringstream out;
    out << "run";
    for (const auto& s : report.scores) out << '\t' << s.metric_name;
    out << '\n';
    const std::string label = cfg.hyp_path.filename().string();
    out << label;
    for (const auto& s : report.scores) out << '\t' << fixed(display_value(s.metric_name, s.corpus_score), 2);
    out << '\n';
    if (cfg.per_sentence) {
      for (std::size_t i = 0; i < report.pairs; ++i) {
        out << label << ':' << (i + 1);
        for (const auto& s : report.scores) {
          out << '\t' << fixed(display_value(s.metric_name, s.per_sentence[i]), 2);
        }
        out << '\n';
      }
    }
    return out.str();
  }

  ordered_json j;
  ordered_json c;
  c["metrics"] = unique_in_order(cfg.metrics);
  c["hyp"] = cfg.hyp_path.string();
  std::vector<std::string> refs;
  for (const auto& r : cfg.ref_paths) refs.push_back(r.string());
  c["refs"] = refs;
  c["lexicon"] = cfg.lexicon_path ? ordered_json(cfg.lexicon_path->string()) : ordered_json(nullptr);
  c["lowercase"] = cfg.tokenizer.lowercase;
  c["split_punct"] = cfg.tokenizer.split_punctuation;
  c["max_ngram"] = cfg.max_ngram;
  c["nist_order"] = cfg.nist_order;
  c["synonym_score"] = cfg.synonym_score;
  c["rare_words_percent"] = cfg.rare_words_percent;
  c["rare_words_score"] = cfg.rare_words_score;
  c["epsilon"] = cfg.epsilon;
  c["lepor_alpha"] = cfg.lepor.alpha;
  c["lepor_beta"] = cfg.lepor.beta;
  c["ribes_alpha"] = cfg.ribes.alpha;
  c["ribes_correlation"] = cfg.ribes.correlation == RankCorrelation::kKendall ? "kendall" : "spearman";
  j["config"] = c;
  j["corpus"] = {{"pairs", report.pairs},
                 {"ref_count", report.ref_count},
                 {"hyp_tokens", report.hyp_tokens},
                 {"ref_tokens", report.ref_tokens}};
  ordered_json metrics = ordered_json::array();
  for (const auto& s : report.scores) metrics.push_back(metric_json(s, cfg.per_sentence));
  j["metrics"] = metrics;
  return j.dump(2) + "\n";
}

ScoreTable parse_score_table(std::string_view text) {
  ScoreTable table;
  bool have_header = false;
  bool label_column = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.ends_with('\r')) line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos || line.front() == '#') continue;

    const auto fields = split_fields(line);
    if (!have_header) {
      have_header = true;
      std::string first(fields.front());
      std::transform(first.begin(), first.end(), first.begin(),
                     [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
      label_column = first.empty() || first == "run";
      for (std::size_t k = label_column ? 1 : 0; k < fields.size(); ++k) {
        table.metric_names.emplace_back(fields[k]);
      }
      if (table.metric_names.empty()) {
        throw Error(ErrorCode::kSchemaMismatch, "score table header names no metrics");
      }
      continue;
    }
    const std::size_t expected = table.metric_names.size() + (label_column ? 1 : 0);
    if (fields.size() != expected) {
      throw Error(ErrorCode::kSchemaMismatch, "line " + std::to_string(line_no) + " has " +
                                                  std::to_string(fields.size()) + " fields, expected " +
                                                  std::to_string(expected));
    }
    std::vector<double> row;
    for (std::size_t k = label_column ? 1 : 0; k < fields.size(); ++k) {
      row.push_back(parse_number(fields[k], line_no));
    }
    table.row_labels.emplace_back(label_column ? std::string(fields.front()) : std::string());
    table.rows.push_back(std::move(row));
  }
  if (!have_header) throw Error(ErrorCode::kSchemaMismatch, "score table is empty");
  return table;
}

ScoreTable read_score_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_score_table(text);
}

std::string format_score_table(const ScoreTable& table, int decimals) {
  table.validate();
  std::ostringstream out;
  out << "run";
  for (const auto& m : table.metric_names) out << '\t' << m;
  out << '\n';
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    out << (i < table.row_labels.size() ? table.row_labels[i] : std::string());
    for (double v : table.rows[i]) out << '\t' << fixed(v, decimals);
    out << '\n';
  }
  return out.str();
}

ScoreTable merge_score_tables(std::span<const ScoreTable> tables) {
  if (tables.empty()) throw Error(ErrorCode::kInvalidArgument, "nothing to merge");
  ScoreTable out;
  out.metric_names = tables.front().metric_names;
  for (std::size_t t = 0; t < tables.size(); ++t) {
    const auto& table = tables[t];
    table.validate();
    if (table.metric_names != out.metric_names) {
      throw Error(ErrorCode::kSchemaMismatch,
                  "table " + std::to_string(t + 1) + " has different metric columns");
    }
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      out.rows.push_back(table.rows[i]);
      out.row_labels.push_back(i < table.row_labels.size() ? table.row_labels[i] : std::string());
    }
  }
  return out;
}

std::string run_correlate(const ScoreTable& table, const CorrelateConfig& cfg) {
  table.validate();
  const auto& names = table.metric_names;
  std::optional<CorrelationMatrix> pear, spear;
  if (cfg.pearson) pear = correlation_matrix(table, CorrelationKind::kPearson);
  if (cfg.spearman) spear = correlation_matrix(table, CorrelationKind::kSpearman);

  struct LambdaRow {
    std::string metric;
    std::optional<LambdaResult> result;
  };
  std::string dependent;
  std::vector<LambdaRow> lambdas;
  if (cfg.lambda) {
    const std::size_t dep = cfg.dependent ? table.index_of(*cfg.dependent) : 0;
    dependent = names[dep];
    const auto dep_bins = discretize(table.column(dep), cfg.bins);
    for (std::size_t j = 0; j < names.size(); ++j) {
      if (j == dep) continue;
      const auto bins = discretize(table.column(j), cfg.bins);
      LambdaRow row{names[j], std::nullopt};
      try {
        row.result = goodman_kruskal_lambda(cross_tabulate(bins, dep_bins));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kDegenerateTable) throw;
      }
      lambdas.push_back(std::move(row));
    }
  }

  if (cfg.format == OutputFormat::kJson) {
    ordered_json j;
    j["metrics"] = names;
    j["n"] = table.row_count();
    auto matrix = [](const CorrelationMatrix& m, bool p) {
      ordered_json rows = ordered_json::array();
      for (const auto& row : m) {
        ordered_json r = ordered_json::array();
        for (const auto& cell : row) r.push_back(p ? cell.two_tailed_p : cell.coefficient);
        rows.push_back(r);
      }
      return rows;
    };
    if (pear) j["pearson"] = matrix(*pear, false);
    if (spear) j["spearman"] = {{"coefficient", matrix(*spear, false)}, {"p", matrix(*spear, true)}};
    if (cfg.lambda) {
      ordered_json rows = ordered_json::array();
      for (const auto& l : lambdas) {
        ordered_json r;
        r["metric"] = l.metric;
        r["lambda"] = l.result ? ordered_json(l.result->lambda) : ordered_json(nullptr);
        r["variance"] = l.result ? ordered_json(l.result->variance) : ordered_json(nullptr);
        rows.push_back(r);
      }
      j["lambda"] = {{"dependent", dependent}, {"bins", cfg.bins}, {"results", rows}};
    }
    return j.dump(2) + "\n";
  }

  std::ostringstream out;
  auto print_matrix = [&](const std::string& title, const CorrelationMatrix& m, bool p) {
    out << "# " << title << '\n';
    for (const auto& name : names) out << '\t' << name;
    out << '\n';
    for (std::size_t i = 0; i < m.size(); ++i) {
      out << names[i];
      for (const auto& cell : m[i]) out << '\t' << fixed(p ? cell.two_tailed_p : cell.coefficient, 4);
      out << '\n';
    }
  };
  bool first = true;
  auto separate = [&] {
    if (!first) out << '\n';
    first = false;
  };
  if (pear) {
    separate();
    print_matrix("pearson", *pear, false);
  }
  if (spear) {
    separate();
    print_matrix("spearman", *spear, false);
    out << '\n';
    print_matrix("spearman p (2-tailed), N = " + std::to_string(table.row_count()), *spear, true);
  }
  if (cfg.lambda) {
    separate();
    out << "# lambda (dependent: " << dependent << ", bins: " << cfg.bins << ")\n";
    out << "metric\tlambda\tvariance\n";
    for (const auto& l : lambdas) {
      out << l.metric << '\t' << (l.result ? fixed(l.result->lambda, 4) : "NA") << '\t'
          << (l.result ? fixed(l.result->variance, 4) : "NA") << '\n';
    }
  }
  return out.str();
}

}  // namespace mteval
