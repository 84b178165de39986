#pragma once

// NIST, TER, METEOR, LEPOR and RIBES. These follow the published metric
// definitions; they are not bug-compatible ports of the original tools.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mteval/corpus.hpp"
#include "mteval/metric_score.hpp"
#include "mteval/parallel.hpp"

namespace mteval {

// ---------------------------------------------------------------- NIST

// Information-weighted n-gram co-occurrence. The weight of a matched n-gram
// is log2(count(prefix) / count(ngram)) over all reference sentences, with
// the unigram prefix count being the total reference token count.
MetricScore nist_score(const ParallelCorpus& corpus, std::size_t max_order = 5,
                       Execution exec = Execution::kParallel);

// Brevity factor exp(beta * log^2(min(c / r, 1))), beta chosen so the factor
// is 0.5 at c / r = 2/3.
double nist_brevity_factor(double hyp_length, double avg_ref_length);

// ---------------------------------------------------------------- TER

struct TerLimits {
  std::size_t max_shift_size = 10;
  std::size_t max_shift_distance = 50;
};

struct TerAlignment {
  std::size_t edits = 0;  // shifts + insertions + deletions + substitutions
  std::size_t shifts = 0;
};

// Word-level Levenshtein distance with unit costs.
std::size_t edit_distance(std::span<const std::string> hyp, std::span<const std::string> ref);

// Moves words [start, start + length) so that they begin at index dest of
// the sequence that remains after removing them.
TokenSequence apply_shift(std::span<const std::string> words, std::size_t start,
                          std::size_t length, std::size_t dest);

// Greedy best-first phrase shifts followed by edit distance. A shift is taken
// only when it lowers the total edit count.
TerAlignment ter_edits(std::span<const std::string> hyp, std::span<const std::string> ref,
                       const TerLimits& limits = {});

// Σ E / Σ w_R with E the fewest edits over references and w_R the average
// reference length of a pair. Lower is better; 0 for identical text.
MetricScore ter_score(const ParallelCorpus& corpus, const TerLimits& limits = {},
                      Execution exec = Execution::kParallel);

// ---------------------------------------------------------------- METEOR

struct MeteorResult {
  double precision = 0.0;
  double recall = 0.0;
  std::size_t matched_unigrams = 0;
  std::size_t chunk_count = 0;
  double penalty = 0.0;
  double score = 0.0;
  std::vector<double> per_sentence;
};

// Hypothesis position -> aligned reference position.
using UnigramAlignment = std::vector<std::optional<std::size_t>>;

// Exact matches first, then lexicon synonyms among the words left over.
UnigramAlignment meteor_align(std::span<const std::string> hyp,
                              std::span<const std::string> ref, const SynonymLexicon& lexicon);

// Runs of aligned words contiguous in both strings.
std::size_t count_chunks(const UnigramAlignment& alignment);

// (10PR / (R + 9P)) * (1 - 0.5 C / M_U); 0 without matches.
double meteor_formula(std::size_t matches, std::size_t chunks, std::size_t hyp_length,
                      std::size_t ref_length);

MeteorResult meteor_score(const ParallelCorpus& corpus, const SynonymLexicon& lexicon,
                          Execution exec = Execution::kParallel);

MetricScore to_metric_score(const MeteorResult& r);

// ---------------------------------------------------------------- LEPOR

struct LeporConfig {
  double alpha = 1.0;  // recall weight
  double beta = 1.0;   // precision weight

  void validate() const;
};

// e^(1 - r/c) if c < r, 1 if c = r, e^(1 - c/r) if c > r.
double lepor_length_penalty(double hyp_length, double ref_length);

// Sum over hypothesis tokens of |i/len(hyp) - j/len(ref)| (1-based), pairing
// each token with the nearest unclaimed same-word reference position.
// Unmatched tokens add nothing. matches_out receives the pairing count.
double lepor_position_difference_sum(std::span<const std::string> hyp,
                                     std::span<const std::string> ref,
                                     std::size_t* matches_out = nullptr);

MetricScore lepor_score(const ParallelCorpus& corpus, const LeporConfig& cfg = {},
                        Execution exec = Execution::kParallel);

// ---------------------------------------------------------------- RIBES

enum class RankCorrelation { kKendall, kSpearman };

struct RibesConfig {
  double alpha = 0.25;
  RankCorrelation correlation = RankCorrelation::kKendall;

  void validate() const;
};

// Reference positions of aligned hypothesis words, in hypothesis order.
// Words unique in both strings align directly; the rest align left to right
// to the first unclaimed same-word reference position.
std::vector<std::size_t> ribes_alignment(std::span<const std::string> hyp,
                                         std::span<const std::string> ref);

// (tau + 1) / 2 and (rho + 1) / 2 over a sequence of distinct positions.
double normalized_kendall_tau(std::span<const std::size_t> positions);
double normalized_spearman_rho(std::span<const std::size_t> positions);

// Best over references of NKT (or NSR) * P^alpha; 0 with fewer than two
// aligned words.
double ribes_sentence(const EvalPair& pair, const RibesConfig& cfg);

// Mean of sentence scores.
MetricScore ribes_score(const ParallelCorpus& corpus, const RibesConfig& cfg = {},
                        Execution exec = Execution::kParallel);

}  // namespace mteval
