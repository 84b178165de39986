#pragma once

// Enhanced BLEU: BLEU with synonym-aware matching, a bonus for matches on
// rare reference words, and cumulative scores accumulated in the log domain
// with an additive length penalty.

#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <vector>

#include "mteval/corpus.hpp"
#include "mteval/metric_score.hpp"
#include "mteval/parallel.hpp"

namespace mteval {

struct EbleuConfig {
  std::size_t max_order = 4;
  // Credit multiplier for a token matched through a synonym, in [0, 1].
  double synonym_score = 0.90;
  // Fraction of the distinct reference vocabulary (least frequent first)
  // treated as rare, in (0, 1].
  double rare_words_percent = 0.10;
  // Credit multiplier for a matched n-gram containing a rare word, >= 1.
  double rare_words_score = 1.10;
  double smoothing_epsilon = 0.0;

  void validate() const;
};

struct SubstitutionTrace {
  TokenSequence modified_hypothesis;
  std::set<std::size_t> substituted_positions;
};

// Replaces hypothesis words that occur in no reference with the synonym that
// has the most unclaimed occurrences in the references. Reference
// occurrences already matched exactly, or claimed by an earlier substitution,
// are not available. Ties go to the lexicographically smallest synonym.
SubstitutionTrace synonym_substitute(const EvalPair& pair, const SynonymLexicon& lexicon);

// Weighted clipped matches of one order for one pair.
struct OrderScore {
  double weighted_matches = 0.0;
  std::uint64_t total = 0;

  // min(1, weighted / total); 0 when there are no hypothesis n-grams.
  double value() const;
};

// Each matched n-gram instance contributes synonym_score per substituted
// token it covers, times rare_words_score once if it covers a rare word.
// When clipping limits an n-gram, its highest-weight instances are kept.
OrderScore ebleu_order_score(const SubstitutionTrace& trace, const EvalPair& pair,
                             std::size_t n, const RareWordSet& rare, const EbleuConfig& cfg);

// min(0, 1 - ref_length / hyp_length); -infinity when hyp_length is 0 so that
// every cumulative score collapses to 0.
double ebleu_length_score(std::size_t ref_length, std::size_t hyp_length);

// C_i = exp((log B_1 + ... + log B_i) / i + len_score). A zero B_i zeroes
// every C_j with j >= i.
std::vector<double> ebleu_cumulative(std::span<const double> order_scores, double len_score);

struct EbleuStats {
  std::vector<double> weighted;  // per order, index 0 = unigrams
  std::vector<std::uint64_t> total;
  std::size_t hyp_length = 0;
  std::size_t ref_length = 0;
  std::size_t substitutions = 0;

  EbleuStats& operator+=(const EbleuStats& other);
};

EbleuStats collect_ebleu_stats(const EvalPair& pair, const SynonymLexicon& lexicon,
                               const RareWordSet& rare, const EbleuConfig& cfg);

// B_n (smoothed and clamped) and C_n from pooled statistics.
struct EbleuBreakdown {
  std::vector<double> order_scores;
  std::vector<double> cumulative;
  double len_score = 0.0;

  double score() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
};

EbleuBreakdown ebleu_from_stats(const EbleuStats& stats, const EbleuConfig& cfg);

// Builds the rare-word set from the corpus references, then scores.
MetricScore ebleu_score(const ParallelCorpus& corpus, const SynonymLexicon& lexicon,
                        const EbleuConfig& cfg = {}, Execution exec = Execution::kParallel);

// Scores with a caller-supplied rare-word set (which may be empty).
MetricScore ebleu_score(const ParallelCorpus& corpus, const SynonymLexicon& lexicon,
                        const RareWordSet& rare, const EbleuConfig& cfg,
                        Execution exec = Execution::kParallel);

}  // namespace mteval
