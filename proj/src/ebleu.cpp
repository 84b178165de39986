#include "mteval/ebleu.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>

#include "mteval/bleu.hpp"
#include "mteval/error.hpp"
#include "mteval/ngram.hpp"

namespace mteval {

void EbleuConfig::validate() const {
  if (max_order < 1) throw Error(ErrorCode::kInvalidArgument, "max order must be >= 1");
  if (!(synonym_score >= 0.0 && synonym_score <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "synonym score must lie in [0, 1]");
  }
  if (!(rare_words_percent > 0.0 && rare_words_percent <= 1.0)) {
    throw Error(ErrorCode::kInvalidPercent, "rare-words percent must lie in (0, 1]");
  }
  if (!(rare_words_score >= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "rare-words score must be >= 1");
  }
  if (!(smoothing_epsilon >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "smoothing epsilon must be non-negative");
  }
}

SubstitutionTrace synonym_substitute(const EvalPair& pair, const SynonymLexicon& lexicon) {
  SubstitutionTrace trace;
  trace.modified_hypothesis = pair.hypothesis;
  if (lexicon.empty()) return trace;

  std::unordered_map<std::string, std::uint32_t> max_ref;
  for (const auto& ref : pair.references) {
    std::unordered_map<std::string, std::uint32_t> local;
    for (const auto& w : ref) ++local[w];
    for (const auto& [w, c] : local) max_ref[w] = std::max(max_ref[w], c);
  }
  std::unordered_map<std::string, std::uint32_t> hyp_count;
  for (const auto& w : pair.hypothesis) ++hyp_count[w];

  // Occurrences not already claimed by exact matches.
  std::unordered_map<std::string, std::uint32_t> remaining;
  for (const auto& [w, c] : max_ref) {
    const auto it = hyp_count.find(w);
    const std::uint32_t exact = it == hyp_count.end() ? 0 : std::min(it->second, c);
    remaining[w] = c - exact;
  }

  for (std::size_t i = 0; i < pair.hypothesis.size(); ++i) {
    const auto& word = pair.hypothesis[i];
    if (max_ref.count(word) != 0) continue;
    const std::string* best = nullptr;
    std::uint32_t best_count = 0;
    for (const auto& syn : lexicon.synonyms(word)) {  // ascending order
      const auto it = remaining.find(syn);
      if (it != remaining.end() && it->second > best_count) {
        best = &syn;
        best_count = it->second;
      }
    }
    if (best == nullptr) continue;
    --remaining[*best];
    trace.modified_hypothesis[i] = *best;
    trace.substituted_positions.insert(i);
  }
  return trace;
}

double OrderScore::value() const {
  if (total == 0) return 0.0;
  return std::min(1.0, weighted_matches / static_cast<double>(total));
}

OrderScore ebleu_order_score(const SubstitutionTrace& trace, const EvalPair& pair,
                             std::size_t n, const RareWordSet& rare, const EbleuConfig& cfg) {
  if (n < 1 || n > cfg.max_order) {
    throw Error(ErrorCode::kOrderMismatch, "order " + std::to_string(n) +
                                               " outside 1.." + std::to_string(cfg.max_order));
  }
  std::vector<NGramCounts> refs;
  refs.reserve(pair.references.size());
  for (const auto& r : pair.references) refs.push_back(extract_ngrams(r, n));
  const NGramCounts max_ref = max_reference_counts(refs);

  const auto& hyp = trace.modified_hypothesis;
  OrderScore out;
  if (hyp.size() < n) return out;

  std::unordered_map<NGram, std::vector<double>, NGramHash> instances;
  for (std::size_t i = 0; i + n <= hyp.size(); ++i) {
    NGram g(hyp.begin() + static_cast<std::ptrdiff_t>(i),
            hyp.begin() + static_cast<std::ptrdiff_t>(i + n));
    double weight = 1.0;
    bool has_rare = false;
    for (std::size_t k = i; k < i + n; ++k) {
      if (trace.substituted_positions.count(k) != 0) weight *= cfg.synonym_score;
      has_rare = has_rare || rare.contains(hyp[k]);
    }
    if (has_rare) weight *= cfg.rare_words_score;
    instances[std::move(g)].push_back(weight);
  }
  out.total = hyp.size() - n + 1;

  // Iterate in a fixed order so the floating-point sum is reproducible.
  std::map<NGram, const std::vector<double>*> ordered;
  for (const auto& [g, w] : instances) ordered.emplace(g, &w);
  for (const auto& [g, weights_ptr] : ordered) {
    const std::size_t clip = std::min<std::size_t>(weights_ptr->size(), max_ref.count(g));
    if (clip == 0) continue;
    std::vector<double> w = *weights_ptr;
    std::sort(w.begin(), w.end(), std::greater<>());
    for (std::size_t k = 0; k < clip; ++k) out.weighted_matches += w[k];
  }
  return out;
}

double ebleu_length_score(std::size_t ref_length, std::size_t hyp_length) {
  if (hyp_length == 0) return -std::numeric_limits<double>::infinity();
  return std::min(0.0, 1.0 - static_cast<double>(ref_length) / static_cast<double>(hyp_length));
}

std::vector<double> ebleu_cumulative(std::span<const double> order_scores, double len_score) {
  std::vector<double> c;
  c.reserve(order_scores.size());
  double s = 0.0;
  for (std::size_t i = 0; i < order_scores.size(); ++i) {
    s += std::log(order_scores[i]);  // log(0) = -inf keeps later C at 0
    c.push_back(std::exp(s / static_cast<double>(i + 1) + len_score));
  }
  return c;
}

EbleuStats& EbleuStats::operator+=(const EbleuStats& other) {
  if (weighted.size() < other.weighted.size()) {
    weighted.resize(other.weighted.size(), 0.0);
    total.resize(other.total.size(), 0);
  }
  for (std::size_t n = 0; n < other.weighted.size(); ++n) {
    weighted[n] += other.weighted[n];
    total[n] += other.total[n];
  }
  hyp_length += other.hyp_length;
  ref_length += other.ref_length;
  substitutions += other.substitutions;
  return *this;
}

EbleuStats collect_ebleu_stats(const EvalPair& pair, const SynonymLexicon& lexicon,
                               const RareWordSet& rare, const EbleuConfig& cfg) {
  const SubstitutionTrace trace = synonym_substitute(pair, lexicon);
  EbleuStats s;
  s.weighted.resize(cfg.max_order);
  s.total.resize(cfg.max_order);
  for (std::size_t n = 1; n <= cfg.max_order; ++n) {
    const OrderScore o = ebleu_order_score(trace, pair, n, rare, cfg);
    s.weighted[n - 1] = o.weighted_matches;
    s.total[n - 1] = o.total;
  }
  s.hyp_length = pair.hypothesis.size();
  s.ref_length = effective_reference_length(s.hyp_length, pair.references);
  s.substitutions = trace.substituted_positions.size();
  return s;
}

EbleuBreakdown ebleu_from_stats(const EbleuStats& stats, const EbleuConfig& cfg) {
  EbleuBreakdown out;
  out.order_scores.resize(cfg.max_order, 0.0);
  for (std::size_t n = 0; n < cfg.max_order; ++n) {
    const OrderScore o{n < stats.weighted.size() ? stats.weighted[n] : 0.0,
                       n < stats.total.size() ? stats.total[n] : 0};
    double b = o.value();
    if (cfg.smoothing_epsilon > 0.0 && o.total > 0) {
      b = std::max(b, cfg.smoothing_epsilon / static_cast<double>(o.total));
    }
    out.order_scores[n] = b;
  }
  out.len_score = ebleu_length_score(stats.ref_length, stats.hyp_length);
  out.cumulative = ebleu_cumulative(out.order_scores, out.len_score);
  return out;
}

MetricScore ebleu_score(const ParallelCorpus& corpus, const SynonymLexicon& lexicon,
                        const EbleuConfig& cfg, Execution exec) {
  cfg.validate();
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "EBLEU needs a non-empty corpus");
  const auto refs = corpus.all_references();
  const RareWordSet rare = build_rare_word_set(refs, cfg.rare_words_percent);
  return ebleu_score(corpus, lexicon, rare, cfg, exec);
}

MetricScore ebleu_score(const ParallelCorpus& corpus, const SynonymLexicon& lexicon,
                        const RareWordSet& rare, const EbleuConfig& cfg, Execution exec) {
  cfg.validate();
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "EBLEU needs a non-empty corpus");

  const auto per_pair = map_indices(corpus.size(), exec, [&](std::size_t i) {
    return collect_ebleu_stats(corpus[i], lexicon, rare, cfg);
  });

  MetricScore out;
  out.metric_name = "ebleu";
  out.per_sentence.reserve(per_pair.size());
  EbleuStats pooled;
  for (const auto& s : per_pair) {
    out.per_sentence.push_back(ebleu_from_stats(s, cfg).score());
    pooled += s;
  }
  const EbleuBreakdown b = ebleu_from_stats(pooled, cfg);
  out.corpus_score = b.score();
  for (std::size_t n = 0; n < cfg.max_order; ++n) {
    out.details["B_" + std::to_string(n + 1)] = b.order_scores[n];
    out.details["C_" + std::to_string(n + 1)] = b.cumulative[n];
  }
  // Omitted for all-empty hypotheses: -inf has no JSON encoding.
  if (std::isfinite(b.len_score)) out.details["len_score"] = b.len_score;
  out.details["hyp_length"] = static_cast<double>(pooled.hyp_length);
  out.details["ref_length"] = static_cast<double>(pooled.ref_length);
  out.details["substitutions"] = static_cast<double>(pooled.substitutions);
  out.details["rare_words"] = static_cast<double>(rare.words.size());
  return out;
}

}  // namespace mteval
